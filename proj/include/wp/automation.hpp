#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wp/chains.hpp"
#include "wp/environment.hpp"
#include "wp/goal.hpp"
#include "wp/syntax.hpp"

namespace wp::automation {

// ---------------------------------------------------------------------------
// Linear arithmetic

// Σ coeffs[v]·v + constant
struct LinearExpr {
    std::map<std::string, Rational> coeffs;
    Rational constant;

    bool is_constant() const { return coeffs.empty(); }
    LinearExpr operator+(const LinearExpr& o) const;
    LinearExpr operator-(const LinearExpr& o) const;
    LinearExpr scaled(const Rational& k) const;
    bool operator==(const LinearExpr&) const = default;
};

// nullopt when the term is not linear (a product of two non-constant terms).
// Function applications are treated as opaque variables.
std::optional<LinearExpr> linearize(const Term& t);

enum class Cmp { Lt, Le, Eq };

// expr Cmp 0
struct Constraint {
    LinearExpr expr;
    Cmp cmp;
};

enum class Feasibility { Feasible, Infeasible, Unknown };

// Exact Fourier-Motzkin elimination with strictness tracking.
Feasibility fourier_motzkin(std::vector<Constraint> constraints);

enum class LinearVerdict { Valid, Unknown };

// Validity of (∧ hyps) ⇒ goal over linear real arithmetic. Intervals and
// transparent definitions are unfolded when `env` is given; anything else
// that is not an (in)equality is an opaque propositional atom.
LinearVerdict solve_linear(const std::vector<Formula>& hyps, const Formula& goal, const Environment* env = nullptr);

// ---------------------------------------------------------------------------
// Search

struct Budget {
    int max_depth = 3;
    int max_nodes = 10000;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

class Timeout : public std::runtime_error {
public:
    Timeout() : std::runtime_error("checking timed out") {}
};

class UnresolvedReference : public std::runtime_error {
public:
    explicit UnresolvedReference(const std::string& name)
        : std::runtime_error("Could not find a lemma or hypothesis named `" + name + "`."), name(name) {}
    std::string name;
};

// Head constructor is a logical operator on the surface. Interval membership
// counts as an atom; definitions are looked through when `env` is given.
bool is_shielded(const Formula& f, const Environment* env = nullptr);

enum class Verdict { Found, LemmaUnused, Failure };

const char* verdict_name(Verdict v);

struct ProofResult {
    Verdict verdict = Verdict::Failure;
    std::optional<Formula> uncovered;  // goal the search could not cover
    std::string reason;

    bool found() const { return verdict == Verdict::Found; }
};

struct ChainResult {
    bool found = false;
    int link_index = 0;  // 1-based, first link that could not be proved
    std::optional<Formula> link;
};

ProofResult prove(const Goal& ctx, const Formula& target, const Environment& env, const Budget& budget = {});
// The proof must use `reference` (hypothesis label or lemma label).
// Throws UnresolvedReference.
ProofResult prove_required(const Goal& ctx, const Formula& target, const std::string& reference,
                           const Environment& env, const Budget& budget = {});
ChainResult prove_chain(const Goal& ctx, const chains::Chain& chain, const Environment& env, const Budget& budget = {});

// Alpha-invariant key of a formula (bound variables renamed canonically).
std::string canonical_key(const Formula& f);

}  // namespace wp::automation
