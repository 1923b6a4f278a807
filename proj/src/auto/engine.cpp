#include <algorithm>
#include <map>
#include <set>

#include "wp/automation.hpp"
#include "wp/kernel.hpp"
#include "wp/print.hpp"

namespace wp::automation {

namespace {

// Gt/Ge atoms are turned around so that lemma conclusions written either way
// unify with targets written either way.
Formula normalize(const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::Atom:
            if (f.rel() == Rel::Gt) return Formula::atom(Rel::Lt, f.rhs(), f.lhs());
            if (f.rel() == Rel::Ge) return Formula::atom(Rel::Le, f.rhs(), f.lhs());
            return f;
        case FormulaKind::Not:
            return Formula::negation(normalize(f.body()));
        case FormulaKind::And:
            return Formula::conj(normalize(f.left()), normalize(f.right()));
        case FormulaKind::Or:
            return Formula::disj(normalize(f.left()), normalize(f.right()));
        case FormulaKind::Implies:
            return Formula::implies(normalize(f.left()), normalize(f.right()));
        case FormulaKind::Iff:
            return Formula::iff(normalize(f.left()), normalize(f.right()));
        case FormulaKind::ForAll:
            return Formula::forall(f.name(), f.sort(), normalize(f.body()));
        case FormulaKind::Exists:
            return Formula::exists(f.name(), f.sort(), normalize(f.body()));
        default:
            return f;
    }
}

bool quantifier_free(const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::ForAll:
        case FormulaKind::Exists:
            return false;
        case FormulaKind::Not:
            return quantifier_free(f.body());
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
        case FormulaKind::Iff:
            return quantifier_free(f.left()) && quantifier_free(f.right());
        default:
            return true;
    }
}

void split_conjuncts(const Formula& f, std::vector<Formula>& out) {
    if (f.is(FormulaKind::And)) {
        split_conjuncts(f.left(), out);
        split_conjuncts(f.right(), out);
    } else {
        out.push_back(f);
    }
}

// ∀ vars, p1 ∧ p2 ⇒ ... ⇒ conclusion
struct Clause {
    std::string source;
    std::vector<Variable> vars;
    std::vector<Formula> premises;
    Formula conclusion;
};

void add_clauses(const std::string& source, const Formula& statement, std::vector<Clause>& out) {
    // The statement as a whole, for targets that are themselves quantified.
    out.push_back({source, {}, {}, statement});

    std::vector<Variable> vars;
    std::vector<Formula> premises;
    Formula f = statement;
    for (;;) {
        if (f.is(FormulaKind::ForAll)) {
            std::string name = f.name();
            auto taken = [&](const std::string& n) {
                return std::any_of(vars.begin(), vars.end(), [&](const Variable& v) { return v.name == n; });
            };
            if (taken(name)) {
                std::string fresh = fresh_name(name, taken);
                f = Formula::forall(fresh, f.sort(), substitute(f.body(), name, Term::var(fresh)));
                name = fresh;
            }
            vars.push_back({name, f.sort()});
            f = f.body();
        } else if (f.is(FormulaKind::Implies)) {
            split_conjuncts(f.left(), premises);
            f = f.right();
        } else {
            break;
        }
    }
    if (vars.empty() && premises.empty() && !f.is(FormulaKind::And)) return;
    std::vector<Formula> conclusions;
    split_conjuncts(f, conclusions);
    for (const auto& c : conclusions) out.push_back({source, vars, premises, c});
}

// One-way matching of a clause pattern against a ground target.
class Matcher {
public:
    Matcher(const std::vector<Variable>& metas, const Scope& scope, const Environment& env)
        : metas_(metas), scope_(scope), env_(env) {}

    std::map<std::string, Term> subst;

    bool formula(const Formula& p, const Formula& t) {
        if (p.kind() != t.kind()) return false;
        switch (p.kind()) {
            case FormulaKind::Atom:
                return p.rel() == t.rel() && term(p.lhs(), t.lhs()) && term(p.rhs(), t.rhs());
            case FormulaKind::Pred:
                return p.name() == t.name() && terms(p.args(), t.args());
            case FormulaKind::InInterval:
                return term(p.member(), t.member()) && interval(p.interval(), t.interval());
            case FormulaKind::InSet:
                return p.name() == t.name() && term(p.member(), t.member());
            case FormulaKind::Not:
                return formula(p.body(), t.body());
            case FormulaKind::And:
            case FormulaKind::Or:
            case FormulaKind::Implies:
            case FormulaKind::Iff:
                return formula(p.left(), t.left()) && formula(p.right(), t.right());
            case FormulaKind::ForAll:
            case FormulaKind::Exists: {
                if (!(p.sort() == t.sort())) return false;
                bound_.emplace_back(p.name(), t.name());
                bool ok = formula(p.body(), t.body());
                bound_.pop_back();
                return ok;
            }
            case FormulaKind::DefApp: {
                if (p.name() != t.name() || p.def_args().size() != t.def_args().size()) return false;
                for (std::size_t i = 0; i < p.def_args().size(); ++i) {
                    const auto& a = p.def_args()[i];
                    const auto& b = t.def_args()[i];
                    if (a.index() != b.index()) return false;
                    if (const Term* ta = std::get_if<Term>(&a)) {
                        if (!term(*ta, std::get<Term>(b))) return false;
                    } else if (!interval(std::get<Interval>(a), std::get<Interval>(b))) {
                        return false;
                    }
                }
                return true;
            }
        }
        return false;
    }

    bool term(const Term& p, const Term& t) {
        if (p.is(TermKind::Var)) {
            for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
                if (it->first == p.name()) return t.is(TermKind::Var) && t.name() == it->second;
            if (const Variable* m = meta(p.name())) return bind(*m, t);
        }
        if (p.kind() != t.kind()) return false;
        switch (p.kind()) {
            case TermKind::Var:
                return p.name() == t.name() && !target_bound(t.name());
            case TermKind::Lit:
                return p.value() == t.value();
            case TermKind::App:
                return p.name() == t.name() && terms(p.args(), t.args());
            default:
                return terms(p.args(), t.args());
        }
    }

private:
    bool terms(const std::vector<Term>& p, const std::vector<Term>& t) {
        if (p.size() != t.size()) return false;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (!term(p[i], t[i])) return false;
        return true;
    }

    bool interval(const Interval& p, const Interval& t) {
        return p.lo_closed == t.lo_closed && p.hi_closed == t.hi_closed && term(p.lo, t.lo) && term(p.hi, t.hi);
    }

    const Variable* meta(const std::string& name) const {
        for (const auto& m : metas_)
            if (m.name == name) return &m;
        return nullptr;
    }

    bool target_bound(const std::string& name) const {
        return std::any_of(bound_.begin(), bound_.end(), [&](const auto& b) { return b.second == name; });
    }

    bool bind(const Variable& m, const Term& t) {
        auto it = subst.find(m.name);
        if (it != subst.end()) return it->second == t;
        for (const auto& v : free_vars(t))
            if (target_bound(v)) return false;
        try {
            if (!coercible(sort_of(t, scope_, env_), m.sort)) return false;
        } catch (const SortError&) {
            return false;
        }
        subst.emplace(m.name, t);
        return true;
    }

    const std::vector<Variable>& metas_;
    const Scope& scope_;
    const Environment& env_;
    std::vector<std::pair<std::string, std::string>> bound_;  // (pattern, target)
};

struct BudgetExhausted {};

struct Required {
    std::string name;
    std::vector<Clause> clauses;
    std::optional<Formula> linear;  // quantifier-free statement usable by the solver
    bool is_hypothesis = false;
};

class Engine {
public:
    Engine(const Goal& ctx, const Environment& env, const Budget& budget)
        : ctx_(ctx), env_(env), budget_(budget), scope_(Scope::of(ctx)) {
        for (const auto& v : ctx.variables)
            if (v.sort.kind == Sort::Kind::Nat)
                facts_.push_back(Formula::atom(Rel::Le, Term::lit(0), Term::var(v.name)));
        for (const auto& h : ctx.hypotheses) {
            Formula s = prepare(h.statement);
            hyps_.push_back({h.label, s});
            facts_.push_back(s);
            add_clauses(h.label, s, hyp_clauses_);
        }
        for (const Lemma* l : env.collection_lemmas(Collection::Main))
            add_clauses(l->label, prepare(l->statement), main_clauses_);
        for (const Lemma* l : env.collection_lemmas(Collection::Weak))
            add_clauses(l->label, prepare(l->statement), weak_clauses_);
    }

    Formula prepare(const Formula& f) const { return normalize(unfold(f, env_, Unfold::transparent())); }

    Required resolve(const std::string& name) const {
        Required r;
        r.name = name;
        std::optional<Formula> statement;
        if (const Hypothesis* h = ctx_.find_hypothesis(name)) {
            statement = prepare(h->statement);
            r.is_hypothesis = true;
        } else if (const Lemma* l = env_.lemma(name)) {
            statement = prepare(l->statement);
        } else {
            throw UnresolvedReference(name);
        }
        add_clauses(name, *statement, r.clauses);
        if (quantifier_free(*statement)) r.linear = statement;
        return r;
    }

    // Iterative deepening; nullopt when the node budget ran out.
    std::optional<bool> run(const Formula& target, const Required* req) {
        nodes_ = 0;
        try {
            for (int depth = 0; depth <= budget_.max_depth; ++depth)
                if (solve(target, depth, req)) return true;
            return false;
        } catch (const BudgetExhausted&) {
            return std::nullopt;
        }
    }

private:
    void tick() {
        if (++nodes_ > budget_.max_nodes) throw BudgetExhausted{};
        if (budget_.deadline && std::chrono::steady_clock::now() > *budget_.deadline) throw Timeout{};
    }

    bool linear_valid(const std::vector<Formula>& facts, const Formula& target) const {
        return solve_linear(facts, target, &env_) == LinearVerdict::Valid;
    }

    // `target` is given in surface form; shielding is decided on it.
    bool solve(const Formula& target, int depth, const Required* req) {
        tick();
        bool shielded = is_shielded(target, &env_);
        Formula t = prepare(target);

        if (req) return solve_required(target, t, shielded, depth, *req);

        for (const auto& [label, s] : hyps_)
            if (alpha_equal(s, t)) return true;
        if (quantifier_free(t) && linear_valid(facts_, t)) return true;

        if (shielded) {
            // No decomposition: only a whole clause conclusion may close it.
            return try_clauses(hyp_clauses_, t, depth) || try_clauses(weak_clauses_, t, depth);
        }
        if (t.is(FormulaKind::And)) return solve(t.left(), depth, nullptr) && solve(t.right(), depth, nullptr);
        if (depth == 0) return false;
        return try_clauses(hyp_clauses_, t, depth) || try_clauses(main_clauses_, t, depth);
    }

    bool solve_required(const Formula& target, const Formula& t, bool shielded, int depth, const Required& req) {
        // The required item first.
        if (try_clauses(req.clauses, t, depth)) return true;
        if (req.linear && quantifier_free(t)) {
            std::vector<Formula> without;
            if (req.is_hypothesis) {
                for (const auto& v : ctx_.variables)
                    if (v.sort.kind == Sort::Kind::Nat)
                        without.push_back(Formula::atom(Rel::Le, Term::lit(0), Term::var(v.name)));
                for (const auto& [label, s] : hyps_)
                    if (label != req.name) without.push_back(s);
            } else {
                without = facts_;
            }
            std::vector<Formula> with = without;
            with.push_back(*req.linear);
            if (linear_valid(with, t) && !linear_valid(without, t)) return true;
        }
        if (shielded) return false;
        if (t.is(FormulaKind::And))
            return (solve(t.left(), depth, &req) && solve(t.right(), depth, nullptr)) ||
                   (solve(t.left(), depth, nullptr) && solve(t.right(), depth, &req));
        if (depth == 0) return false;
        // Some premise of another clause uses the required item.
        for (const auto* clauses : {&hyp_clauses_, &main_clauses_})
            for (const auto& c : *clauses) {
                auto premises = instantiate(c, t);
                if (!premises || premises->empty()) continue;
                for (std::size_t i = 0; i < premises->size(); ++i) {
                    bool ok = solve((*premises)[i], depth - 1, &req);
                    for (std::size_t j = 0; ok && j < premises->size(); ++j)
                        if (j != i) ok = solve((*premises)[j], depth - 1, nullptr);
                    if (ok) return true;
                }
            }
        return false;
    }

    std::optional<std::vector<Formula>> instantiate(const Clause& c, const Formula& t) {
        Matcher m(c.vars, scope_, env_);
        if (!m.formula(c.conclusion, t)) return std::nullopt;
        if (m.subst.size() != c.vars.size()) return std::nullopt;
        std::vector<Formula> out;
        Substitution s;
        s.terms = m.subst;
        for (const auto& p : c.premises) out.push_back(substitute(p, s));
        return out;
    }

    bool try_clauses(const std::vector<Clause>& clauses, const Formula& t, int depth) {
        for (const auto& c : clauses) {
            auto premises = instantiate(c, t);
            if (!premises) continue;
            if (!premises->empty() && depth == 0) continue;
            bool ok = true;
            for (const auto& p : *premises)
                if (!(ok = solve(p, depth - 1, nullptr))) break;
            if (ok) return true;
        }
        return false;
    }

    const Goal& ctx_;
    const Environment& env_;
    Budget budget_;
    Scope scope_;
    int nodes_ = 0;
    std::vector<std::pair<std::string, Formula>> hyps_;
    std::vector<Formula> facts_;
    std::vector<Clause> hyp_clauses_, main_clauses_, weak_clauses_;
};

}  // namespace

bool is_shielded(const Formula& f, const Environment* env) {
    switch (f.kind()) {
        case FormulaKind::ForAll:
        case FormulaKind::Exists:
        case FormulaKind::Implies:
        case FormulaKind::Iff:
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Not:
            return true;
        case FormulaKind::DefApp:
            if (env)
                if (const Definition* d = env->definition(f.name()))
                    return is_shielded(instantiate_definition(*d, f.def_args()), env);
            return false;
        default:
            return false;
    }
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Found: return "proof-found";
        case Verdict::LemmaUnused: return "lemma-unused";
        case Verdict::Failure: return "failure";
    }
    return "failure";
}

ProofResult prove(const Goal& ctx, const Formula& target, const Environment& env, const Budget& budget) {
    Engine e(ctx, env, budget);
    auto r = e.run(target, nullptr);
    ProofResult out;
    if (r && *r) {
        out.verdict = Verdict::Found;
        return out;
    }
    out.uncovered = target;
    out.reason = r ? "no proof found" : "search budget exhausted";
    return out;
}

ProofResult prove_required(const Goal& ctx, const Formula& target, const std::string& reference,
                           const Environment& env, const Budget& budget) {
    Engine e(ctx, env, budget);
    Required req = e.resolve(reference);
    ProofResult out;
    auto with = e.run(target, &req);
    if (with && *with) {
        out.verdict = Verdict::Found;
        return out;
    }
    auto plain = e.run(target, nullptr);
    out.uncovered = target;
    if (plain && *plain) {
        out.verdict = Verdict::LemmaUnused;
        out.reason = "the proof does not use `" + reference + "`";
    } else {
        out.reason = plain ? "no proof found" : "search budget exhausted";
    }
    return out;
}

ChainResult prove_chain(const Goal& ctx, const chains::Chain& chain, const Environment& env, const Budget& budget) {
    auto links = chains::link_statements(chain);
    for (std::size_t i = 0; i < links.size(); ++i) {
        if (!prove(ctx, links[i], env, budget).found()) {
            ChainResult r;
            r.link_index = static_cast<int>(i) + 1;
            r.link = links[i];
            return r;
        }
    }
    ChainResult r;
    r.found = true;
    return r;
}

}  // namespace wp::automation
