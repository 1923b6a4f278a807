#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wp/kernel.hpp"
#include "wp/syntax.hpp"

namespace wp::chains {

struct Link {
    Rel rel;
    Term rhs;

    bool operator==(const Link&) const = default;
};

// & base R1 e1 R2 e2 ... Rn en
struct Chain {
    Term base;
    std::vector<Link> links;

    // e_0 .. e_n
    std::vector<Term> terms() const;
    bool operator==(const Chain&) const = default;
};

enum class ChainError { None, Direction, Sort };

struct Validation {
    ChainError error = ChainError::None;
    std::string message;
    // offending relation pair for Direction errors
    std::optional<Rel> first;
    std::optional<Rel> second;

    bool ok() const { return error == ChainError::None; }
};

// Ascending {=,<,≤}, descending {=,>,≥}.
bool ascending(Rel r);
bool descending(Rel r);

// Only the direction-class rule; needs no environment.
Validation validate_direction(const Chain& c);
// Direction rule plus a common numeric sort (equalities may compare any sort).
Validation validate(const Chain& c, const Scope& scope, const Environment& env);

// Right-nested conjunction of the links e_{i-1} R_i e_i.
Formula total_statement(const Chain& c);
std::vector<Formula> link_statements(const Chain& c);
// base R* e_n
Formula global_statement(const Chain& c);

// Terms reversed, relations flipped.
Chain reversed(const Chain& c);

// "& 0 < 4 - 1 < 4 - ε/2 = a"
std::string to_string(const Chain& c);

}  // namespace wp::chains
