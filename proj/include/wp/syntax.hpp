#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wp/rational.hpp"

namespace wp {

// ---------------------------------------------------------------------------
// Sorts

struct Sort {
    enum class Kind { Real, Int, Nat, Prop, Named };

    Kind kind = Kind::Real;
    std::string name;  // only for Named

    static Sort real() { return {Kind::Real, {}}; }
    static Sort integer() { return {Kind::Int, {}}; }
    static Sort nat() { return {Kind::Nat, {}}; }
    static Sort prop() { return {Kind::Prop, {}}; }
    static Sort named(std::string n) { return {Kind::Named, std::move(n)}; }

    bool is_numeric() const { return kind == Kind::Real || kind == Kind::Int || kind == Kind::Nat; }
    std::string str() const;

    bool operator==(const Sort&) const = default;
};

// Nat ↪ Int ↪ Real is the only coercion path.
bool coercible(const Sort& from, const Sort& to);
// Least sort both arguments coerce into.
std::optional<Sort> join(const Sort& a, const Sort& b);

// ---------------------------------------------------------------------------
// Terms

enum class TermKind { Var, Lit, Neg, Add, Sub, Mul, Div, App };

class Term {
public:
    static Term var(std::string name);
    static Term lit(Rational value);
    static Term neg(Term arg);
    static Term add(Term l, Term r);
    static Term sub(Term l, Term r);
    static Term mul(Term l, Term r);
    static Term div(Term l, Term r);
    static Term app(std::string fn, std::vector<Term> args);

    TermKind kind() const { return node_->kind; }
    const std::string& name() const { return node_->name; }
    const Rational& value() const { return node_->value; }
    const std::vector<Term>& args() const { return node_->args; }
    const Term& lhs() const { return node_->args.at(0); }
    const Term& rhs() const { return node_->args.at(1); }
    bool is(TermKind k) const { return kind() == k; }

    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node {
        TermKind kind;
        std::string name;
        Rational value;
        std::vector<Term> args;
    };
    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Term make(TermKind k, std::string name, Rational value, std::vector<Term> args);

    std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Formulas

enum class Rel { Eq, Lt, Le, Gt, Ge };

const char* rel_symbol(Rel r);
// a R b  ⇔  b flip(R) a
Rel flip(Rel r);

struct Interval {
    Term lo;
    Term hi;
    bool lo_closed = true;
    bool hi_closed = false;

    friend bool operator==(const Interval&, const Interval&) = default;
};

// Argument of a defined notion: either a term or a set given as an interval.
using DefArg = std::variant<Term, Interval>;

enum class FormulaKind {
    Atom,
    Pred,
    InInterval,
    InSet,  // membership in a set parameter of a definition body
    Not,
    And,
    Or,
    Implies,
    Iff,
    ForAll,
    Exists,
    DefApp,
};

class Formula {
public:
    static Formula atom(Rel rel, Term lhs, Term rhs);
    static Formula pred(std::string symbol, std::vector<Term> args = {});
    static Formula in_interval(Term member, Interval iv);
    static Formula in_set(Term member, std::string set_name);
    static Formula negation(Formula f);
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);
    static Formula implies(Formula a, Formula b);
    static Formula iff(Formula a, Formula b);
    static Formula forall(std::string var, Sort sort, Formula body);
    static Formula exists(std::string var, Sort sort, Formula body);
    static Formula def_app(std::string definition, std::vector<DefArg> args);

    FormulaKind kind() const { return node_->kind; }
    bool is(FormulaKind k) const { return kind() == k; }
    bool is_quantifier() const { return kind() == FormulaKind::ForAll || kind() == FormulaKind::Exists; }
    bool is_binary() const;

    // Atom
    Rel rel() const { return node_->rel; }
    const Term& lhs() const { return node_->terms.at(0); }
    const Term& rhs() const { return node_->terms.at(1); }
    // Pred arguments
    const std::vector<Term>& args() const { return node_->terms; }
    // InInterval / InSet
    const Term& member() const { return node_->terms.at(0); }
    Interval interval() const;
    // Pred symbol, DefApp definition, InSet set name, bound variable of a quantifier
    const std::string& name() const { return node_->name; }
    const Sort& sort() const { return node_->sort; }
    // Not / quantifier body
    const Formula& body() const { return node_->subs.at(0); }
    // binary connectives
    const Formula& left() const { return node_->subs.at(0); }
    const Formula& right() const { return node_->subs.at(1); }
    const std::vector<DefArg>& def_args() const { return node_->def_args; }

    // Structural equality (bound variable names included).
    friend bool operator==(const Formula& a, const Formula& b);

private:
    struct Node {
        FormulaKind kind;
        Rel rel = Rel::Eq;
        std::string name;
        Sort sort;
        std::vector<Term> terms;
        std::vector<Formula> subs;
        std::vector<DefArg> def_args;
        bool lo_closed = true;
        bool hi_closed = false;
    };
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
};

}  // namespace wp
