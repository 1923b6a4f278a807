#include "wp/syntax.hpp"

#include <stdexcept>

namespace wp {

std::string Sort::str() const {
    switch (kind) {
        case Kind::Real: return "ℝ";
        case Kind::Int: return "ℤ";
        case Kind::Nat: return "ℕ";
        case Kind::Prop: return "Prop";
        case Kind::Named: return name;
    }
    return name;
}

namespace {

int numeric_rank(const Sort& s) {
    switch (s.kind) {
        case Sort::Kind::Nat: return 0;
        case Sort::Kind::Int: return 1;
        case Sort::Kind::Real: return 2;
        default: return -1;
    }
}

}  // namespace

bool coercible(const Sort& from, const Sort& to) {
    if (from == to) return true;
    int f = numeric_rank(from);
    int t = numeric_rank(to);
    return f >= 0 && t >= 0 && f <= t;
}

std::optional<Sort> join(const Sort& a, const Sort& b) {
    if (coercible(a, b)) return b;
    if (coercible(b, a)) return a;
    return std::nullopt;
}

// ---------------------------------------------------------------------------

Term Term::make(TermKind k, std::string name, Rational value, std::vector<Term> args) {
    return Term(std::make_shared<const Node>(Node{k, std::move(name), value, std::move(args)}));
}

Term Term::var(std::string name) { return make(TermKind::Var, std::move(name), {}, {}); }
Term Term::lit(Rational value) { return make(TermKind::Lit, {}, value, {}); }
Term Term::neg(Term arg) { return make(TermKind::Neg, {}, {}, {std::move(arg)}); }
Term Term::add(Term l, Term r) { return make(TermKind::Add, {}, {}, {std::move(l), std::move(r)}); }
Term Term::sub(Term l, Term r) { return make(TermKind::Sub, {}, {}, {std::move(l), std::move(r)}); }
Term Term::mul(Term l, Term r) { return make(TermKind::Mul, {}, {}, {std::move(l), std::move(r)}); }
Term Term::div(Term l, Term r) { return make(TermKind::Div, {}, {}, {std::move(l), std::move(r)}); }
Term Term::app(std::string fn, std::vector<Term> args) {
    return make(TermKind::App, std::move(fn), {}, std::move(args));
}

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case TermKind::Var: return a.name() == b.name();
        case TermKind::Lit: return a.value() == b.value();
        case TermKind::App:
            if (a.name() != b.name()) return false;
            break;
        default: break;
    }
    return a.args() == b.args();
}

// ---------------------------------------------------------------------------

const char* rel_symbol(Rel r) {
    switch (r) {
        case Rel::Eq: return "=";
        case Rel::Lt: return "<";
        case Rel::Le: return "≤";
        case Rel::Gt: return ">";
        case Rel::Ge: return "≥";
    }
    return "?";
}

Rel flip(Rel r) {
    switch (r) {
        case Rel::Eq: return Rel::Eq;
        case Rel::Lt: return Rel::Gt;
        case Rel::Le: return Rel::Ge;
        case Rel::Gt: return Rel::Lt;
        case Rel::Ge: return Rel::Le;
    }
    return r;
}

Formula Formula::atom(Rel rel, Term lhs, Term rhs) {
    Node n{FormulaKind::Atom};
    n.rel = rel;
    n.terms = {std::move(lhs), std::move(rhs)};
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::pred(std::string symbol, std::vector<Term> args) {
    Node n{FormulaKind::Pred};
    n.name = std::move(symbol);
    n.terms = std::move(args);
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::in_interval(Term member, Interval iv) {
    Node n{FormulaKind::InInterval};
    n.terms = {std::move(member), std::move(iv.lo), std::move(iv.hi)};
    n.lo_closed = iv.lo_closed;
    n.hi_closed = iv.hi_closed;
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::in_set(Term member, std::string set_name) {
    Node n{FormulaKind::InSet};
    n.terms = {std::move(member)};
    n.name = std::move(set_name);
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::negation(Formula f) {
    Node n{FormulaKind::Not};
    n.subs = {std::move(f)};
    return Formula(std::make_shared<const Node>(std::move(n)));
}

#define WP_BINARY(fn, K)                                               \
    Formula Formula::fn(Formula a, Formula b) {                        \
        Node n{FormulaKind::K};                                        \
        n.subs = {std::move(a), std::move(b)};                         \
        return Formula(std::make_shared<const Node>(std::move(n)));    \
    }
WP_BINARY(conj, And)
WP_BINARY(disj, Or)
WP_BINARY(implies, Implies)
WP_BINARY(iff, Iff)
#undef WP_BINARY

Formula Formula::forall(std::string var, Sort sort, Formula body) {
    Node n{FormulaKind::ForAll};
    n.name = std::move(var);
    n.sort = std::move(sort);
    n.subs = {std::move(body)};
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::exists(std::string var, Sort sort, Formula body) {
    Node n{FormulaKind::Exists};
    n.name = std::move(var);
    n.sort = std::move(sort);
    n.subs = {std::move(body)};
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::def_app(std::string definition, std::vector<DefArg> args) {
    Node n{FormulaKind::DefApp};
    n.name = std::move(definition);
    n.def_args = std::move(args);
    return Formula(std::make_shared<const Node>(std::move(n)));
}

bool Formula::is_binary() const {
    switch (kind()) {
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
        case FormulaKind::Iff: return true;
        default: return false;
    }
}

Interval Formula::interval() const {
    if (kind() != FormulaKind::InInterval) throw std::logic_error("interval() on a non-interval formula");
    return Interval{node_->terms.at(1), node_->terms.at(2), node_->lo_closed, node_->hi_closed};
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    return x.kind == y.kind && x.rel == y.rel && x.name == y.name && x.sort == y.sort && x.terms == y.terms &&
           x.subs == y.subs && x.def_args == y.def_args && x.lo_closed == y.lo_closed && x.hi_closed == y.hi_closed;
}

}  // namespace wp
