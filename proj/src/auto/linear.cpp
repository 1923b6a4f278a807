#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "wp/automation.hpp"
#include "wp/kernel.hpp"
#include "wp/print.hpp"

namespace wp::automation {

LinearExpr LinearExpr::operator+(const LinearExpr& o) const {
    LinearExpr r = *this;
    for (const auto& [v, c] : o.coeffs) {
        Rational sum = r.coeffs[v] + c;
        if (sum.is_zero())
            r.coeffs.erase(v);
        else
            r.coeffs[v] = sum;
    }
    r.constant += o.constant;
    return r;
}

LinearExpr LinearExpr::operator-(const LinearExpr& o) const { return *this + o.scaled(-1); }

LinearExpr LinearExpr::scaled(const Rational& k) const {
    LinearExpr r;
    if (k.is_zero()) return r;
    for (const auto& [v, c] : coeffs) r.coeffs[v] = c * k;
    r.constant = constant * k;
    return r;
}

namespace {

LinearExpr variable(const std::string& key) {
    LinearExpr e;
    e.coeffs[key] = 1;
    return e;
}

LinearExpr constant(const Rational& c) {
    LinearExpr e;
    e.constant = c;
    return e;
}

// With `relax`, non-linear subterms become fresh opaque variables.
std::optional<LinearExpr> linear(const Term& t, bool relax) {
    auto opaque = [&]() -> std::optional<LinearExpr> {
        if (!relax) return std::nullopt;
        return variable("(" + to_string(t) + ")");
    };
    switch (t.kind()) {
        case TermKind::Var:
            return variable(t.name());
        case TermKind::Lit:
            return constant(t.value());
        case TermKind::Neg: {
            auto a = linear(t.lhs(), relax);
            if (!a) return std::nullopt;
            return a->scaled(-1);
        }
        case TermKind::Add:
        case TermKind::Sub: {
            auto a = linear(t.lhs(), relax);
            auto b = linear(t.rhs(), relax);
            if (!a || !b) return std::nullopt;
            return t.is(TermKind::Add) ? *a + *b : *a - *b;
        }
        case TermKind::Mul: {
            auto a = linear(t.lhs(), relax);
            auto b = linear(t.rhs(), relax);
            if (!a || !b) return std::nullopt;
            if (a->is_constant()) return b->scaled(a->constant);
            if (b->is_constant()) return a->scaled(b->constant);
            return opaque();
        }
        case TermKind::Div: {
            auto a = linear(t.lhs(), relax);
            auto b = linear(t.rhs(), relax);
            if (!a || !b) return std::nullopt;
            if (b->is_constant() && !b->constant.is_zero()) return a->scaled(Rational(1) / b->constant);
            return opaque();
        }
        case TermKind::App:
            return variable(to_string(t));
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin

struct Unknown {};

using Coeffs = std::map<std::string, Rational>;

struct Bound {
    Rational c;
    bool strict;
};

// Keeps, per normalized left-hand side, only the tightest constraint.
class ConstraintSet {
public:
    // Returns false when a constant constraint is violated.
    bool add(LinearExpr e, bool strict) {
        if (e.coeffs.empty()) {
            int s = e.constant.sign();
            return strict ? s < 0 : s <= 0;
        }
        Rational scale = e.coeffs.begin()->second;
        if (scale.sign() < 0) scale = -scale;
        if (scale != Rational(1)) e = e.scaled(Rational(1) / scale);
        auto it = map_.find(e.coeffs);
        if (it == map_.end()) {
            map_.emplace(std::move(e.coeffs), Bound{e.constant, strict});
            if (map_.size() > kMaxConstraints) throw Unknown{};
            return true;
        }
        Bound& b = it->second;
        if (e.constant > b.c || (e.constant == b.c && strict)) b = Bound{e.constant, strict};
        return true;
    }

    const std::map<Coeffs, Bound>& items() const { return map_; }

private:
    static constexpr std::size_t kMaxConstraints = 20000;
    std::map<Coeffs, Bound> map_;
};

Feasibility eliminate(std::vector<Constraint> cs) {
    // Equalities first: solve for one variable and substitute everywhere.
    for (;;) {
        auto eq = std::find_if(cs.begin(), cs.end(), [](const Constraint& c) { return c.cmp == Cmp::Eq; });
        if (eq == cs.end()) break;
        Constraint e = *eq;
        cs.erase(eq);
        if (e.expr.coeffs.empty()) {
            if (!e.expr.constant.is_zero()) return Feasibility::Infeasible;
            continue;
        }
        auto [v, a] = *e.expr.coeffs.begin();
        for (auto& c : cs) {
            auto it = c.expr.coeffs.find(v);
            if (it == c.expr.coeffs.end()) continue;
            Rational k = it->second / a;
            c.expr = c.expr - e.expr.scaled(k);
        }
    }

    ConstraintSet set;
    for (auto& c : cs)
        if (!set.add(c.expr, c.cmp == Cmp::Lt)) return Feasibility::Infeasible;

    for (;;) {
        const auto& items = set.items();
        if (items.empty()) return Feasibility::Feasible;

        // Variable with the fewest generated combinations.
        std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
        for (const auto& [coeffs, b] : items)
            for (const auto& [v, c] : coeffs) (c.sign() > 0 ? counts[v].first : counts[v].second)++;
        std::string best;
        std::size_t best_cost = 0;
        bool have = false;
        for (const auto& [v, pn] : counts) {
            std::size_t cost = pn.first * pn.second;
            if (!have || cost < best_cost) {
                best = v;
                best_cost = cost;
                have = true;
            }
        }

        std::vector<std::pair<LinearExpr, bool>> pos, neg;
        ConstraintSet next;
        for (const auto& [coeffs, b] : items) {
            LinearExpr e;
            e.coeffs = coeffs;
            e.constant = b.c;
            auto it = coeffs.find(best);
            if (it == coeffs.end()) {
                next.add(e, b.strict);
            } else if (it->second.sign() > 0) {
                pos.emplace_back(e, b.strict);
            } else {
                neg.emplace_back(e, b.strict);
            }
        }
        for (const auto& [p, ps] : pos) {
            Rational a = p.coeffs.at(best);
            for (const auto& [n, ns] : neg) {
                Rational b = -n.coeffs.at(best);
                LinearExpr combined = p.scaled(b) + n.scaled(a);
                combined.coeffs.erase(best);
                if (!next.add(combined, ps || ns)) return Feasibility::Infeasible;
            }
        }
        set = std::move(next);
    }
}

// ---------------------------------------------------------------------------
// Tableau over hyps ∧ ¬goal

struct Item {
    Formula f;
    bool positive;
    bool from_goal;
};

struct OpaqueLiteral {
    std::string key;
    bool positive;
    bool from_goal;
};

struct Branch {
    std::vector<Constraint> constraints;
    std::vector<OpaqueLiteral> opaque;
};

constexpr int kMaxLeaves = 4096;
constexpr std::size_t kMaxOpaqueAtoms = 8;

Formula interval_formula(const Formula& f) {
    Interval iv = f.interval();
    Formula lo = Formula::atom(iv.lo_closed ? Rel::Le : Rel::Lt, iv.lo, f.member());
    Formula hi = Formula::atom(iv.hi_closed ? Rel::Le : Rel::Lt, f.member(), iv.hi);
    return Formula::conj(lo, hi);
}

class Refuter {
public:
    explicit Refuter(const Environment* env) : env_(env) {}

    // Keys of opaque atoms occurring with both polarities; others are dropped.
    void collect(const Formula& f, bool positive) {
        switch (f.kind()) {
            case FormulaKind::Atom:
                return;
            case FormulaKind::InInterval:
                return collect(interval_formula(f), positive);
            case FormulaKind::Not:
                return collect(f.body(), !positive);
            case FormulaKind::And:
            case FormulaKind::Or:
                collect(f.left(), positive);
                return collect(f.right(), positive);
            case FormulaKind::Implies:
                collect(f.left(), !positive);
                return collect(f.right(), positive);
            case FormulaKind::Iff:
                for (bool p : {true, false}) {
                    collect(f.left(), p);
                    collect(f.right(), p);
                }
                return;
            case FormulaKind::DefApp:
                if (auto d = transparent(f)) return collect(*d, positive);
                break;
            default:
                break;
        }
        std::string key = canonical_key(f);
        (positive ? pos_keys_ : neg_keys_).insert(key);
    }

    void finish_collect() {
        for (const auto& k : pos_keys_)
            if (neg_keys_.count(k)) relevant_.insert(k);
        if (relevant_.size() > kMaxOpaqueAtoms) throw Unknown{};
    }

    // True iff every branch is closed.
    bool refute(std::vector<Item> pending, Branch branch) {
        while (!pending.empty()) {
            Item it = std::move(pending.back());
            pending.pop_back();
            const Formula& f = it.f;
            switch (f.kind()) {
                case FormulaKind::Atom: {
                    auto l = linear(f.lhs(), true);
                    auto r = linear(f.rhs(), true);
                    if (!l || !r) throw Unknown{};
                    Rel rel = f.rel();
                    if (!it.positive) {
                        if (rel == Rel::Eq) {
                            // l ≠ r: l < r or l > r
                            for (const LinearExpr& d : {*l - *r, *r - *l}) {
                                Branch b = branch;
                                b.constraints.push_back({d, Cmp::Lt});
                                if (!refute(pending, std::move(b))) return false;
                            }
                            return true;
                        }
                        // ¬(l < r) ⇔ r ≤ l, and so on
                        switch (rel) {
                            case Rel::Lt: rel = Rel::Ge; break;
                            case Rel::Le: rel = Rel::Gt; break;
                            case Rel::Gt: rel = Rel::Le; break;
                            case Rel::Ge: rel = Rel::Lt; break;
                            case Rel::Eq: break;
                        }
                    }
                    switch (rel) {
                        case Rel::Eq: branch.constraints.push_back({*l - *r, Cmp::Eq}); break;
                        case Rel::Lt: branch.constraints.push_back({*l - *r, Cmp::Lt}); break;
                        case Rel::Le: branch.constraints.push_back({*l - *r, Cmp::Le}); break;
                        case Rel::Gt: branch.constraints.push_back({*r - *l, Cmp::Lt}); break;
                        case Rel::Ge: branch.constraints.push_back({*r - *l, Cmp::Le}); break;
                    }
                    break;
                }
                case FormulaKind::InInterval:
                    pending.push_back({interval_formula(f), it.positive, it.from_goal});
                    break;
                case FormulaKind::Not:
                    pending.push_back({f.body(), !it.positive, it.from_goal});
                    break;
                case FormulaKind::And:
                case FormulaKind::Or: {
                    bool conjunctive = f.is(FormulaKind::And) == it.positive;
                    if (conjunctive) {
                        pending.push_back({f.right(), it.positive, it.from_goal});
                        pending.push_back({f.left(), it.positive, it.from_goal});
                        break;
                    }
                    return split(pending, branch, {{f.left(), it.positive, it.from_goal}},
                                 {{f.right(), it.positive, it.from_goal}});
                }
                case FormulaKind::Implies:
                    if (!it.positive) {
                        pending.push_back({f.right(), false, it.from_goal});
                        pending.push_back({f.left(), true, it.from_goal});
                        break;
                    }
                    return split(pending, branch, {{f.left(), false, it.from_goal}},
                                 {{f.right(), true, it.from_goal}});
                case FormulaKind::Iff: {
                    bool p = it.positive;
                    return split(pending, branch, {{f.left(), true, it.from_goal}, {f.right(), p, it.from_goal}},
                                 {{f.left(), false, it.from_goal}, {f.right(), !p, it.from_goal}});
                }
                case FormulaKind::DefApp:
                    if (auto d = transparent(f)) {
                        pending.push_back({*d, it.positive, it.from_goal});
                        break;
                    }
                    [[fallthrough]];
                default: {
                    std::string key = canonical_key(f);
                    if (relevant_.count(key)) branch.opaque.push_back({key, it.positive, it.from_goal});
                    break;
                }
            }
        }
        return close(branch);
    }

private:
    bool split(const std::vector<Item>& pending, const Branch& branch, std::vector<Item> a, std::vector<Item> b) {
        for (auto* side : {&a, &b}) {
            std::vector<Item> p = pending;
            p.insert(p.end(), side->begin(), side->end());
            if (!refute(std::move(p), branch)) return false;
        }
        return true;
    }

    bool close(const Branch& b) {
        if (++leaves_ > kMaxLeaves) throw Unknown{};
        // Complementary opaque literals close a branch unless both come from
        // the negated goal: excluded middle is not available for opaque atoms.
        for (std::size_t i = 0; i < b.opaque.size(); ++i)
            for (std::size_t j = i + 1; j < b.opaque.size(); ++j) {
                const auto& x = b.opaque[i];
                const auto& y = b.opaque[j];
                if (x.key == y.key && x.positive != y.positive && !(x.from_goal && y.from_goal)) return true;
            }
        Feasibility fe = eliminate(b.constraints);
        if (fe == Feasibility::Unknown) throw Unknown{};
        return fe == Feasibility::Infeasible;
    }

    std::optional<Formula> transparent(const Formula& f) const {
        if (!env_) return std::nullopt;
        const Definition* d = env_->definition(f.name());
        if (!d || d->opaque) return std::nullopt;
        return instantiate_definition(*d, f.def_args());
    }

    const Environment* env_;
    std::set<std::string> pos_keys_, neg_keys_, relevant_;
    int leaves_ = 0;
};

}  // namespace

std::optional<LinearExpr> linearize(const Term& t) { return linear(t, false); }

Feasibility fourier_motzkin(std::vector<Constraint> constraints) {
    try {
        return eliminate(std::move(constraints));
    } catch (const Unknown&) {
        return Feasibility::Unknown;
    } catch (const ArithmeticOverflow&) {
        return Feasibility::Unknown;
    }
}

LinearVerdict solve_linear(const std::vector<Formula>& hyps, const Formula& goal, const Environment* env) {
    try {
        Refuter r(env);
        for (const auto& h : hyps) r.collect(h, true);
        r.collect(goal, false);
        r.finish_collect();
        std::vector<Item> pending;
        pending.push_back({goal, false, true});
        for (auto it = hyps.rbegin(); it != hyps.rend(); ++it) pending.push_back({*it, true, false});
        return r.refute(std::move(pending), {}) ? LinearVerdict::Valid : LinearVerdict::Unknown;
    } catch (const Unknown&) {
        return LinearVerdict::Unknown;
    } catch (const ArithmeticOverflow&) {
        return LinearVerdict::Unknown;
    }
}

std::string canonical_key(const Formula& f) {
    int depth = 0;
    std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
        switch (g.kind()) {
            case FormulaKind::Not:
                return Formula::negation(go(g.body()));
            case FormulaKind::And:
                return Formula::conj(go(g.left()), go(g.right()));
            case FormulaKind::Or:
                return Formula::disj(go(g.left()), go(g.right()));
            case FormulaKind::Implies:
                return Formula::implies(go(g.left()), go(g.right()));
            case FormulaKind::Iff:
                return Formula::iff(go(g.left()), go(g.right()));
            case FormulaKind::ForAll:
            case FormulaKind::Exists: {
                std::string name = "_b" + std::to_string(depth++);
                Formula body = go(substitute(g.body(), g.name(), Term::var(name)));
                --depth;
                return g.is(FormulaKind::ForAll) ? Formula::forall(name, g.sort(), body)
                                                 : Formula::exists(name, g.sort(), body);
            }
            default:
                return g;
        }
    };
    return to_string(go(f));
}

}  // namespace wp::automation
