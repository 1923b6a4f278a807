#include <doctest.h>

#include "support/support.hpp"
#include "wp/automation.hpp"
#include "wp/print.hpp"

using namespace wp;
using namespace wp::automation;

namespace {

Formula F(const std::string& s, const Environment* env = nullptr) { return lang::parse_formula(s, {env, {}}); }

Goal real_goal(const std::string& target, std::vector<std::string> vars, std::vector<std::string> hyps = {},
               const Environment* env = nullptr) {
    Goal g(F(target, env));
    for (auto& v : vars) g.variables.push_back({v, Sort::real()});
    int i = 1;
    for (auto& h : hyps) g.hypotheses.push_back({"_H" + std::to_string(i++), F(h, env), Origin::Assumed});
    return g;
}

LinearExpr lin(const std::string& t) { return *linearize(lang::parse_term(t)); }

}  // namespace

TEST_CASE("linearization") {
    LinearExpr e = lin("2·x - (y - 3)/2 + 1");
    CHECK(e.coeffs.at("x") == Rational(2));
    CHECK(e.coeffs.at("y") == Rational(-1, 2));
    CHECK(e.constant == Rational(5, 2));
    CHECK(lin("x - x").is_constant());
    CHECK_FALSE(linearize(lang::parse_term("x·y")));
    CHECK_FALSE(linearize(Term::div(Term::lit(1), Term::var("x"))));
    CHECK_THROWS_AS(lang::parse_term("1/x"), lang::SyntaxError);
}

TEST_CASE("Fourier-Motzkin with strictness") {
    // x < 1, x > 0 is feasible; x < 0, x > 0 is not; x ≤ 0, x ≥ 0 is.
    auto c = [](const std::string& t, Cmp k) { return Constraint{lin(t), k}; };
    CHECK(fourier_motzkin({c("x - 1", Cmp::Lt), c("-x", Cmp::Lt)}) == Feasibility::Feasible);
    CHECK(fourier_motzkin({c("x", Cmp::Lt), c("-x", Cmp::Lt)}) == Feasibility::Infeasible);
    CHECK(fourier_motzkin({c("x", Cmp::Le), c("-x", Cmp::Le)}) == Feasibility::Feasible);
    CHECK(fourier_motzkin({c("x + y - 2", Cmp::Eq), c("x - y", Cmp::Eq), c("x - 1", Cmp::Lt)}) ==
          Feasibility::Infeasible);
    CHECK(fourier_motzkin({c("1", Cmp::Le)}) == Feasibility::Infeasible);
    CHECK(fourier_motzkin({}) == Feasibility::Feasible);
}

TEST_CASE("linear validity") {
    CHECK(solve_linear({F("ε > 0"), F("ε < 2")}, F("0 ≤ 4 - ε/2")) == LinearVerdict::Valid);
    CHECK(solve_linear({F("ε > 0")}, F("4 - ε < 4 - ε/2")) == LinearVerdict::Valid);
    CHECK(solve_linear({}, F("1 + 1 = 2")) == LinearVerdict::Valid);
    CHECK(solve_linear({F("ε ≥ 2")}, F("ε < 2 ∨ ε ≥ 2")) == LinearVerdict::Valid);
    CHECK(solve_linear({}, F("x < 2 ∨ x ≥ 2")) == LinearVerdict::Valid);
    CHECK(solve_linear({}, F("¬(x = 1) ∨ x = 1")) == LinearVerdict::Valid);
    CHECK(solve_linear({F("x ∈ [0,4)")}, F("x < 5")) == LinearVerdict::Valid);
    CHECK(solve_linear({}, F("x < 2")) == LinearVerdict::Unknown);
    CHECK(solve_linear({}, F("x·x ≥ 0")) == LinearVerdict::Unknown);
    CHECK(solve_linear({F("x·y > 1")}, F("x·y > 0")) == LinearVerdict::Valid);
    CHECK(solve_linear({F("f(a) ≤ 0"), F("0 ≤ f(b)")}, F("f(a) ≤ f(b)")) == LinearVerdict::Valid);
}

TEST_CASE("opaque atoms without excluded middle") {
    Environment env = testing::generator_env();
    CHECK(solve_linear({F("P(x)", &env)}, F("P(x) ∨ x < 0", &env), &env) == LinearVerdict::Valid);
    CHECK(solve_linear({}, F("P(x) ∨ ¬P(x)", &env), &env) == LinearVerdict::Unknown);
    CHECK(solve_linear({F("P(x) ⇒ x > 1", &env), F("P(x)", &env)}, F("x > 0"), &env) == LinearVerdict::Valid);
}

TEST_CASE("shielded statements") {
    Environment env = testing::seed_env();
    CHECK(is_shielded(F("∀ x : ℝ, x·x ≥ 0")));
    CHECK(is_shielded(F("∃ x : ℝ, x > 0")));
    CHECK(is_shielded(F("x > 0 ∧ x < 1")));
    CHECK(is_shielded(F("x > 0 ⇒ x ≥ 0")));
    CHECK(is_shielded(F("¬(x > 0)")));
    CHECK_FALSE(is_shielded(F("x > 0")));
    CHECK_FALSE(is_shielded(F("x ∈ [0,4)")));
    CHECK(is_shielded(F("1 is an upper bound of [0,1)", &env), &env));
}

TEST_CASE("search uses hypotheses and lemmas") {
    Environment env = testing::seed_env();
    Goal g = real_goal("a < 4", {"ε", "a"}, {"ε > 0"});
    g.hypotheses.push_back({"_H2", F("a = 4 - ε/2"), Origin::Chosen});
    CHECK(prove(g, F("a < 4"), env).found());
    CHECK(prove(g, F("4 - ε < a"), env).found());
    CHECK_FALSE(prove(g, F("a < 3"), env).found());

    Goal h = real_goal("y·y ≥ 0", {"y"});
    CHECK(prove(h, F("y·y ≥ 0"), env).found());  // sq_nonneg is in the main collection
    CHECK_FALSE(prove(h, F("∀ x : ℝ, x·x ≥ 0"), env).found());
}

TEST_CASE("shielded statements only see the weak collection") {
    Environment env = testing::seed_env();
    Goal g = real_goal("0 = 0", {});
    Formula s = F("∀ x : ℝ, x·x ≥ 0");
    CHECK_FALSE(prove(g, s, env).found());
    doc::extend_library(env, "#database w\n#hint sq_nonneg\n#end\n#collection weak += w\n");
    CHECK(prove(g, s, env).found());
}

TEST_CASE("required references") {
    Environment env = testing::seed_env();
    Goal g = real_goal("0 = 0", {});
    auto r = prove_required(g, F("1 + 1 = 2"), "IVT", env);
    CHECK(r.verdict == Verdict::LemmaUnused);
    CHECK(std::string(verdict_name(r.verdict)) == "lemma-unused");
    CHECK(prove(g, F("1 + 1 = 2"), env).found());
    CHECK_THROWS_AS(prove_required(g, F("1 + 1 = 2"), "nope", env), UnresolvedReference);

    Goal h = real_goal("0 = 0", {"y"});
    CHECK(prove_required(h, F("y·y ≥ 0"), "sq_nonneg", env).found());

    Goal k = real_goal("0 = 0", {"x"}, {"x > 2"});
    CHECK(prove_required(k, F("x > 1"), "_H1", env).found());
    CHECK(prove_required(k, F("1 > 0"), "_H1", env).verdict == Verdict::LemmaUnused);
}

TEST_CASE("IVT is applied through its hypotheses") {
    Environment env = testing::seed_env();
    Goal g = real_goal("0 = 0", {}, {"f(0) ≤ 0", "0 ≤ f(1)"}, &env);
    CHECK(prove_required(g, F("∃ c : ℝ, c ∈ [0,1] ∧ f(c) = 0", &env), "IVT", env).found());
}

TEST_CASE("chains blame the first failing link") {
    Environment env;
    Goal g = real_goal("0 < a", {"ε", "a"}, {"ε > 0", "ε < 2"});
    g.hypotheses.push_back({"_H3", F("a = 4 - ε/2"), Origin::Chosen});
    auto chain = [](const std::string& t) { return std::get<chains::Chain>(lang::parse_statement(lang::tokenize(t))); };
    CHECK(prove_chain(g, chain("& 0 < 4 - 1 < 4 - ε/2 = a"), env).found);
    auto bad = prove_chain(g, chain("& 0 < 4 + 1 < 4 - ε/2 = a"), env);
    CHECK_FALSE(bad.found);
    CHECK(bad.link_index == 2);
    REQUIRE(bad.link);
    CHECK(to_string(*bad.link) == "4 + 1 < 4 - ε/2");
}

TEST_CASE("canonical keys ignore binder names") {
    CHECK(canonical_key(F("∀ x : ℝ, x < y")) == canonical_key(F("∀ z : ℝ, z < y")));
    CHECK(canonical_key(F("∀ x : ℝ, x < y")) != canonical_key(F("∀ x : ℝ, x < w")));
}

TEST_CASE("deadlines stop the search") {
    Environment env = testing::seed_env();
    Budget b;
    b.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
    Goal g = real_goal("0 = 0", {"x"});
    CHECK_THROWS_AS(prove(g, F("∃ y : ℝ, y > x ∧ y·y ≥ 0"), env, b), Timeout);
}
