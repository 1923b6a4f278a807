#include <doctest.h>

#include "support/support.hpp"
#include "wp/chains.hpp"
#include "wp/print.hpp"

using namespace wp;

namespace {

chains::Chain C(const std::string& text) {
    return std::get<chains::Chain>(lang::parse_statement(lang::tokenize(text)));
}

}  // namespace

TEST_CASE("direction classes") {
    CHECK(chains::validate_direction(C("& 0 < 1 ≤ 2 = 2")).ok());
    CHECK(chains::validate_direction(C("& 3 > 2 ≥ 2 = 2")).ok());
    CHECK(chains::validate_direction(C("& 1 = 1 = 1")).ok());
    auto v = chains::validate_direction(C("& 0 < x > 1"));
    CHECK(v.error == chains::ChainError::Direction);
    CHECK(v.first == Rel::Lt);
    CHECK(v.second == Rel::Gt);
    CHECK(v.message == "A chain of (in)equalities cannot contain both `<` and `>`.");
    CHECK_FALSE(chains::validate_direction(C("& 0 ≤ x ≥ 1")).ok());
    CHECK_FALSE(chains::validate_direction(C("& 0 < x ≥ 1")).ok());
}

TEST_CASE("chain sorts must agree") {
    Environment env;
    Scope scope;
    scope.vars = {{"x", Sort::real()}, {"n", Sort::nat()}};
    CHECK(chains::validate(C("& n < n + 1 ≤ x"), scope, env).ok());
    Scope bad;
    bad.vars = {{"p", Sort::named("set")}};
    CHECK(chains::validate(C("& p < 1"), bad, env).error == chains::ChainError::Sort);
}

TEST_CASE("chain meaning") {
    auto c = C("& 0 < 4 - 1 < 4 - ε/2 = a");
    CHECK(c.terms().size() == 4);
    auto links = chains::link_statements(c);
    REQUIRE(links.size() == 3);
    CHECK(to_string(links[1]) == "4 - 1 < 4 - ε/2");
    CHECK(to_string(chains::total_statement(c)) == "0 < 4 - 1 ∧ 4 - 1 < 4 - ε/2 ∧ 4 - ε/2 = a");
    CHECK(to_string(chains::global_statement(c)) == "0 < a");
    CHECK(to_string(chains::global_statement(C("& 1 ≤ 2 = 2"))) == "1 ≤ 2");
    CHECK(to_string(chains::global_statement(C("& 1 = 1 = 1"))) == "1 = 1");
    CHECK(chains::to_string(chains::reversed(C("& 4 - ε ≤ 4 - 2 = 2 < 3"))) == "& 3 > 2 = 4 - 2 ≥ 4 - ε");
    CHECK(chains::reversed(chains::reversed(c)) == c);
}
