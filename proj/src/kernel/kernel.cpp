#include "wp/kernel.hpp"

#include <algorithm>

#include "wp/print.hpp"

namespace wp {

// ---------------------------------------------------------------------------
// Free variables

namespace {

void collect(const Term& t, std::set<std::string>& out) {
    if (t.is(TermKind::Var)) {
        out.insert(t.name());
        return;
    }
    for (const auto& a : t.args()) collect(a, out);
}

void collect(const Formula& f, std::set<std::string>& out) {
    switch (f.kind()) {
        case FormulaKind::Atom:
        case FormulaKind::Pred:
        case FormulaKind::InSet:
            for (const auto& t : f.args()) collect(t, out);
            break;
        case FormulaKind::InInterval:
            collect(f.member(), out);
            collect(f.interval().lo, out);
            collect(f.interval().hi, out);
            break;
        case FormulaKind::Not: collect(f.body(), out); break;
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
        case FormulaKind::Iff:
            collect(f.left(), out);
            collect(f.right(), out);
            break;
        case FormulaKind::ForAll:
        case FormulaKind::Exists: {
            std::set<std::string> inner;
            collect(f.body(), inner);
            inner.erase(f.name());
            out.insert(inner.begin(), inner.end());
            break;
        }
        case FormulaKind::DefApp:
            for (const auto& a : f.def_args()) {
                if (const auto* t = std::get_if<Term>(&a)) {
                    collect(*t, out);
                } else {
                    const auto& iv = std::get<Interval>(a);
                    collect(iv.lo, out);
                    collect(iv.hi, out);
                }
            }
            break;
    }
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
    std::set<std::string> out;
    collect(t, out);
    return out;
}

std::set<std::string> free_vars(const Formula& f) {
    std::set<std::string> out;
    collect(f, out);
    return out;
}

std::string fresh_name(const std::string& base, const std::function<bool(const std::string&)>& taken) {
    if (!taken(base)) return base;
    for (int primes = 1;; ++primes) {
        std::string suffix;
        if (primes == 1)
            suffix = "′";
        else if (primes == 2)
            suffix = "″";
        else if (primes == 3)
            suffix = "‴";
        else
            for (int i = 0; i < primes; ++i) suffix += "′";
        std::string candidate = base + suffix;
        if (!taken(candidate)) return candidate;
    }
}

// ---------------------------------------------------------------------------
// Substitution

Term substitute(const Term& t, const std::map<std::string, Term>& s) {
    switch (t.kind()) {
        case TermKind::Var: {
            auto it = s.find(t.name());
            return it == s.end() ? t : it->second;
        }
        case TermKind::Lit: return t;
        case TermKind::Neg: return Term::neg(substitute(t.lhs(), s));
        case TermKind::Add: return Term::add(substitute(t.lhs(), s), substitute(t.rhs(), s));
        case TermKind::Sub: return Term::sub(substitute(t.lhs(), s), substitute(t.rhs(), s));
        case TermKind::Mul: return Term::mul(substitute(t.lhs(), s), substitute(t.rhs(), s));
        case TermKind::Div: return Term::div(substitute(t.lhs(), s), substitute(t.rhs(), s));
        case TermKind::App: {
            std::vector<Term> args;
            args.reserve(t.args().size());
            for (const auto& a : t.args()) args.push_back(substitute(a, s));
            return Term::app(t.name(), std::move(args));
        }
    }
    return t;
}

Term substitute(const Term& t, const std::string& var, const Term& by) { return substitute(t, {{var, by}}); }

namespace {

struct SubstImpl {
    // term substitution, set instantiation, set renaming
    std::map<std::string, Term> terms;
    std::map<std::string, Interval> sets;
    std::map<std::string, std::string> set_renames;

    bool empty() const { return terms.empty() && sets.empty() && set_renames.empty(); }

    Interval apply(const Interval& iv) const {
        return Interval{substitute(iv.lo, terms), substitute(iv.hi, terms), iv.lo_closed, iv.hi_closed};
    }

    std::vector<Term> apply(const std::vector<Term>& ts) const {
        std::vector<Term> out;
        out.reserve(ts.size());
        for (const auto& t : ts) out.push_back(substitute(t, terms));
        return out;
    }

    std::set<std::string> range_vars(const std::set<std::string>& relevant) const {
        std::set<std::string> out;
        for (const auto& [k, v] : terms)
            if (relevant.count(k)) collect(v, out);
        for (const auto& [k, iv] : sets) {
            collect(iv.lo, out);
            collect(iv.hi, out);
        }
        return out;
    }

    Formula apply(const Formula& f) const {
        if (empty()) return f;
        switch (f.kind()) {
            case FormulaKind::Atom:
                return Formula::atom(f.rel(), substitute(f.lhs(), terms), substitute(f.rhs(), terms));
            case FormulaKind::Pred: return Formula::pred(f.name(), apply(f.args()));
            case FormulaKind::InInterval: return Formula::in_interval(substitute(f.member(), terms), apply(f.interval()));
            case FormulaKind::InSet: {
                Term m = substitute(f.member(), terms);
                if (auto it = sets.find(f.name()); it != sets.end()) return Formula::in_interval(m, it->second);
                if (auto it = set_renames.find(f.name()); it != set_renames.end())
                    return Formula::in_set(m, it->second);
                return Formula::in_set(m, f.name());
            }
            case FormulaKind::Not: return Formula::negation(apply(f.body()));
            case FormulaKind::And: return Formula::conj(apply(f.left()), apply(f.right()));
            case FormulaKind::Or: return Formula::disj(apply(f.left()), apply(f.right()));
            case FormulaKind::Implies: return Formula::implies(apply(f.left()), apply(f.right()));
            case FormulaKind::Iff: return Formula::iff(apply(f.left()), apply(f.right()));
            case FormulaKind::ForAll:
            case FormulaKind::Exists: {
                SubstImpl inner = *this;
                inner.terms.erase(f.name());
                std::set<std::string> body_free = free_vars(f.body());
                // only entries that actually reach the body matter
                for (auto it = inner.terms.begin(); it != inner.terms.end();) {
                    if (!body_free.count(it->first))
                        it = inner.terms.erase(it);
                    else
                        ++it;
                }
                std::string var = f.name();
                std::set<std::string> danger = inner.range_vars(body_free);
                if (danger.count(var)) {
                    std::string renamed = fresh_name(var, [&](const std::string& n) {
                        return danger.count(n) || body_free.count(n) || inner.terms.count(n);
                    });
                    inner.terms.emplace(var, Term::var(renamed));
                    var = renamed;
                }
                Formula body = inner.apply(f.body());
                return f.is(FormulaKind::ForAll) ? Formula::forall(var, f.sort(), body)
                                                 : Formula::exists(var, f.sort(), body);
            }
            case FormulaKind::DefApp: {
                std::vector<DefArg> args;
                for (const auto& a : f.def_args()) {
                    if (const auto* t = std::get_if<Term>(&a)) {
                        if (t->is(TermKind::Var)) {
                            if (auto it = sets.find(t->name()); it != sets.end()) {
                                args.emplace_back(it->second);
                                continue;
                            }
                            if (auto it = set_renames.find(t->name()); it != set_renames.end()) {
                                args.emplace_back(Term::var(it->second));
                                continue;
                            }
                        }
                        args.emplace_back(substitute(*t, terms));
                    } else {
                        args.emplace_back(apply(std::get<Interval>(a)));
                    }
                }
                return Formula::def_app(f.name(), std::move(args));
            }
        }
        return f;
    }
};

}  // namespace

Formula substitute(const Formula& f, const Substitution& s) {
    SubstImpl impl{s.terms, s.sets, {}};
    return impl.apply(f);
}

Formula substitute(const Formula& f, const std::string& var, const Term& by) {
    SubstImpl impl{{{var, by}}, {}, {}};
    return impl.apply(f);
}

// ---------------------------------------------------------------------------
// Sorts

Scope Scope::of(const Goal& g) { return Scope{g.variables, {}}; }

const Variable* Scope::find(const std::string& name) const {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        if (it->name == name) return &*it;
    return nullptr;
}

namespace {

Sort numeric(const Term& t, const Scope& scope, const Environment& env) {
    Sort s = sort_of(t, scope, env);
    if (!s.is_numeric())
        throw SortError("The term `" + to_string(t) + "` has type " + s.str() + " and cannot be used as a number.");
    return s;
}

Sort joined(const Term& whole, const Sort& a, const Sort& b) {
    auto j = join(a, b);
    if (!j) throw SortError("Incompatible types " + a.str() + " and " + b.str() + " in `" + to_string(whole) + "`.");
    return *j;
}

}  // namespace

Sort sort_of(const Term& t, const Scope& scope, const Environment& env) {
    switch (t.kind()) {
        case TermKind::Var: {
            if (const Variable* v = scope.find(t.name())) return v->sort;
            if (t.name() == "true" || t.name() == "false") return Sort::prop();
            if (std::find(scope.sets.begin(), scope.sets.end(), t.name()) != scope.sets.end())
                throw SortError("The set `" + t.name() + "` cannot be used as a number.");
            throw SortError("Unknown variable `" + t.name() + "`.");
        }
        case TermKind::Lit:
            if (!t.value().is_integer()) return Sort::real();
            return t.value().sign() < 0 ? Sort::integer() : Sort::nat();
        case TermKind::Neg: return joined(t, numeric(t.lhs(), scope, env), Sort::integer());
        case TermKind::Add:
        case TermKind::Mul: return joined(t, numeric(t.lhs(), scope, env), numeric(t.rhs(), scope, env));
        case TermKind::Sub: {
            Sort s = joined(t, numeric(t.lhs(), scope, env), numeric(t.rhs(), scope, env));
            return joined(t, s, Sort::integer());
        }
        case TermKind::Div: {
            Sort s = joined(t, numeric(t.lhs(), scope, env), numeric(t.rhs(), scope, env));
            return joined(t, s, Sort::real());
        }
        case TermKind::App: {
            const FunctionSymbol* fn = env.function(t.name());
            if (!fn) throw SortError("Unknown function `" + t.name() + "`.");
            if (fn->arg_sorts.size() != t.args().size())
                throw SortError("The function `" + t.name() + "` expects " + std::to_string(fn->arg_sorts.size()) +
                                " argument(s).");
            for (std::size_t i = 0; i < t.args().size(); ++i) {
                Sort s = sort_of(t.args()[i], scope, env);
                if (!coercible(s, fn->arg_sorts[i]))
                    throw SortError("Expected an argument of type " + fn->arg_sorts[i].str() + " for `" + t.name() +
                                    "`, but `" + to_string(t.args()[i]) + "` has type " + s.str() + ".");
            }
            return fn->result;
        }
    }
    throw SortError("unsupported term");
}

namespace {

void check_sort_declared(const Sort& s, const Environment& env) {
    if (s.kind == Sort::Kind::Named && !env.has_sort(s.name))
        throw SortError("Unknown type `" + s.name + "`.");
}

void check_args(const std::string& what, const std::vector<Sort>& expected, const std::vector<Term>& args,
                const Scope& scope, const Environment& env) {
    if (expected.size() != args.size())
        throw SortError("`" + what + "` expects " + std::to_string(expected.size()) + " argument(s).");
    for (std::size_t i = 0; i < args.size(); ++i) {
        Sort s = sort_of(args[i], scope, env);
        if (!coercible(s, expected[i]))
            throw SortError("Expected an argument of type " + expected[i].str() + " for `" + what + "`, but `" +
                            to_string(args[i]) + "` has type " + s.str() + ".");
    }
}

bool has_set(const Scope& scope, const std::string& name) {
    return std::find(scope.sets.begin(), scope.sets.end(), name) != scope.sets.end();
}

}  // namespace

void check_formula(const Formula& f, const Scope& scope, const Environment& env) {
    switch (f.kind()) {
        case FormulaKind::Atom: {
            Sort l = sort_of(f.lhs(), scope, env);
            Sort r = sort_of(f.rhs(), scope, env);
            bool ok = join(l, r).has_value() && (f.rel() == Rel::Eq || (l.is_numeric() && r.is_numeric()));
            if (!ok)
                throw SortError("Cannot compare `" + to_string(f.lhs()) + "` of type " + l.str() + " with `" +
                                to_string(f.rhs()) + "` of type " + r.str() + ".");
            return;
        }
        case FormulaKind::Pred: {
            const PredicateSymbol* p = env.predicate(f.name());
            if (!p) throw SortError("Unknown predicate `" + f.name() + "`.");
            check_args(f.name(), p->arg_sorts, f.args(), scope, env);
            return;
        }
        case FormulaKind::InInterval:
            numeric(f.member(), scope, env);
            numeric(f.interval().lo, scope, env);
            numeric(f.interval().hi, scope, env);
            return;
        case FormulaKind::InSet:
            if (!has_set(scope, f.name())) throw SortError("Unknown set `" + f.name() + "`.");
            numeric(f.member(), scope, env);
            return;
        case FormulaKind::Not: check_formula(f.body(), scope, env); return;
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
        case FormulaKind::Iff:
            check_formula(f.left(), scope, env);
            check_formula(f.right(), scope, env);
            return;
        case FormulaKind::ForAll:
        case FormulaKind::Exists: {
            check_sort_declared(f.sort(), env);
            Scope inner = scope;
            inner.vars.push_back(Variable{f.name(), f.sort()});
            check_formula(f.body(), inner, env);
            return;
        }
        case FormulaKind::DefApp: {
            const Definition* def = env.definition(f.name());
            if (!def) throw UnknownDefinition(f.name());
            if (def->params.size() != f.def_args().size())
                throw SortError("`" + f.name() + "` expects " + std::to_string(def->params.size()) + " argument(s).");
            for (std::size_t i = 0; i < def->params.size(); ++i) {
                const Param& p = def->params[i];
                const DefArg& a = f.def_args()[i];
                if (p.is_set) {
                    if (const auto* iv = std::get_if<Interval>(&a)) {
                        numeric(iv->lo, scope, env);
                        numeric(iv->hi, scope, env);
                    } else if (!(std::get<Term>(a).is(TermKind::Var) && has_set(scope, std::get<Term>(a).name()))) {
                        throw SortError("`" + f.name() + "` expects a set (such as an interval) for `" + p.name + "`.");
                    }
                } else {
                    if (!std::holds_alternative<Term>(a))
                        throw SortError("`" + f.name() + "` expects a number for `" + p.name + "`.");
                    const Term& t = std::get<Term>(a);
                    Sort s = sort_of(t, scope, env);
                    if (!coercible(s, p.sort))
                        throw SortError("Expected an argument of type " + p.sort.str() + " for `" + f.name() +
                                        "`, but `" + to_string(t) + "` has type " + s.str() + ".");
                }
            }
            return;
        }
    }
}

Formula substitute_checked(const Formula& f, const std::string& var, const Sort& var_sort, const Term& by,
                           const Scope& scope, const Environment& env) {
    Sort s = sort_of(by, scope, env);
    if (!coercible(s, var_sort))
        throw SortError("Expected a term of type " + var_sort.str() + ", but `" + to_string(by) + "` has type " +
                        s.str() + ".");
    return substitute(f, var, by);
}

// ---------------------------------------------------------------------------
// Unfolding

Formula instantiate_definition(const Definition& def, const std::vector<DefArg>& args) {
    if (def.params.size() != args.size())
        throw SortError("`" + def.name + "` expects " + std::to_string(def.params.size()) + " argument(s).");
    SubstImpl s;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const Param& p = def.params[i];
        const DefArg& a = args[i];
        if (p.is_set) {
            if (const auto* iv = std::get_if<Interval>(&a))
                s.sets.emplace(p.name, *iv);
            else if (std::get<Term>(a).is(TermKind::Var))
                s.set_renames.emplace(p.name, std::get<Term>(a).name());
            else
                throw SortError("`" + def.name + "` expects a set for `" + p.name + "`.");
        } else {
            if (!std::holds_alternative<Term>(a)) throw SortError("`" + def.name + "` expects a number for `" + p.name + "`.");
            s.terms.emplace(p.name, std::get<Term>(a));
        }
    }
    // Parameters are replaced simultaneously; binders in the body avoid
    // capturing variables of the arguments.
    return s.apply(def.body);
}

namespace {

Formula interval_conjunction(const Formula& f) {
    Interval iv = f.interval();
    const Term& x = f.member();
    Formula lower = Formula::atom(iv.lo_closed ? Rel::Le : Rel::Lt, iv.lo, x);
    Formula upper = Formula::atom(iv.hi_closed ? Rel::Le : Rel::Lt, x, iv.hi);
    return Formula::conj(lower, upper);
}

Formula unfold_rec(const Formula& f, const Environment& env, const Unfold& which) {
    switch (f.kind()) {
        case FormulaKind::Atom:
        case FormulaKind::Pred:
        case FormulaKind::InSet: return f;
        case FormulaKind::InInterval: return which.intervals ? interval_conjunction(f) : f;
        case FormulaKind::Not: return Formula::negation(unfold_rec(f.body(), env, which));
        case FormulaKind::And: return Formula::conj(unfold_rec(f.left(), env, which), unfold_rec(f.right(), env, which));
        case FormulaKind::Or: return Formula::disj(unfold_rec(f.left(), env, which), unfold_rec(f.right(), env, which));
        case FormulaKind::Implies:
            return Formula::implies(unfold_rec(f.left(), env, which), unfold_rec(f.right(), env, which));
        case FormulaKind::Iff: return Formula::iff(unfold_rec(f.left(), env, which), unfold_rec(f.right(), env, which));
        case FormulaKind::ForAll: return Formula::forall(f.name(), f.sort(), unfold_rec(f.body(), env, which));
        case FormulaKind::Exists: return Formula::exists(f.name(), f.sort(), unfold_rec(f.body(), env, which));
        case FormulaKind::DefApp: {
            const Definition* def = env.definition(f.name());
            if (!def) throw UnknownDefinition(f.name());
            bool selected = which.every_definition ? !(which.skip_opaque && def->opaque) : which.names.count(f.name()) > 0;
            if (!selected) return f;
            return unfold_rec(instantiate_definition(*def, f.def_args()), env, which);
        }
    }
    return f;
}

}  // namespace

Formula unfold(const Formula& f, const Environment& env, const Unfold& which) {
    if (!which.every_definition)
        for (const auto& n : which.names)
            if (!env.definition(n)) throw UnknownDefinition(n);
    return unfold_rec(f, env, which);
}

Formula unfold_head(const Formula& f, const Environment& env) {
    Formula cur = f;
    for (int guard = 0; guard < 64; ++guard) {
        if (cur.is(FormulaKind::InInterval)) return interval_conjunction(cur);
        if (!cur.is(FormulaKind::DefApp)) return cur;
        const Definition* def = env.definition(cur.name());
        if (!def) throw UnknownDefinition(cur.name());
        cur = instantiate_definition(*def, cur.def_args());
    }
    return cur;
}

bool mentions_definition(const Formula& f, const std::string& name) {
    switch (f.kind()) {
        case FormulaKind::DefApp: return f.name() == name;
        case FormulaKind::Not:
        case FormulaKind::ForAll:
        case FormulaKind::Exists: return mentions_definition(f.body(), name);
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
        case FormulaKind::Iff: return mentions_definition(f.left(), name) || mentions_definition(f.right(), name);
        default: return false;
    }
}

// ---------------------------------------------------------------------------
// Alpha equality

namespace {

struct Binders {
    std::vector<std::string> left;
    std::vector<std::string> right;
};

bool var_equal(const std::string& a, const std::string& b, const Binders& bs) {
    // innermost binding wins
    int ia = -1, ib = -1;
    for (int i = static_cast<int>(bs.left.size()) - 1; i >= 0; --i)
        if (bs.left[i] == a) {
            ia = i;
            break;
        }
    for (int i = static_cast<int>(bs.right.size()) - 1; i >= 0; --i)
        if (bs.right[i] == b) {
            ib = i;
            break;
        }
    if (ia < 0 && ib < 0) return a == b;
    return ia == ib;
}

bool term_alpha(const Term& a, const Term& b, const Binders& bs) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case TermKind::Var: return var_equal(a.name(), b.name(), bs);
        case TermKind::Lit: return a.value() == b.value();
        case TermKind::App:
            if (a.name() != b.name()) return false;
            break;
        default: break;
    }
    if (a.args().size() != b.args().size()) return false;
    for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!term_alpha(a.args()[i], b.args()[i], bs)) return false;
    return true;
}

bool terms_alpha(const std::vector<Term>& a, const std::vector<Term>& b, const Binders& bs) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!term_alpha(a[i], b[i], bs)) return false;
    return true;
}

bool interval_alpha(const Interval& a, const Interval& b, const Binders& bs) {
    return a.lo_closed == b.lo_closed && a.hi_closed == b.hi_closed && term_alpha(a.lo, b.lo, bs) &&
           term_alpha(a.hi, b.hi, bs);
}

bool formula_alpha(const Formula& a, const Formula& b, Binders& bs) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case FormulaKind::Atom: return a.rel() == b.rel() && term_alpha(a.lhs(), b.lhs(), bs) && term_alpha(a.rhs(), b.rhs(), bs);
        case FormulaKind::Pred: return a.name() == b.name() && terms_alpha(a.args(), b.args(), bs);
        case FormulaKind::InInterval:
            return term_alpha(a.member(), b.member(), bs) && interval_alpha(a.interval(), b.interval(), bs);
        case FormulaKind::InSet: return a.name() == b.name() && term_alpha(a.member(), b.member(), bs);
        case FormulaKind::Not: return formula_alpha(a.body(), b.body(), bs);
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
        case FormulaKind::Iff: return formula_alpha(a.left(), b.left(), bs) && formula_alpha(a.right(), b.right(), bs);
        case FormulaKind::ForAll:
        case FormulaKind::Exists: {
            if (!(a.sort() == b.sort())) return false;
            bs.left.push_back(a.name());
            bs.right.push_back(b.name());
            bool ok = formula_alpha(a.body(), b.body(), bs);
            bs.left.pop_back();
            bs.right.pop_back();
            return ok;
        }
        case FormulaKind::DefApp: {
            if (a.name() != b.name() || a.def_args().size() != b.def_args().size()) return false;
            for (std::size_t i = 0; i < a.def_args().size(); ++i) {
                const auto& x = a.def_args()[i];
                const auto& y = b.def_args()[i];
                if (x.index() != y.index()) return false;
                if (const auto* t = std::get_if<Term>(&x)) {
                    if (!term_alpha(*t, std::get<Term>(y), bs)) return false;
                } else if (!interval_alpha(std::get<Interval>(x), std::get<Interval>(y), bs)) {
                    return false;
                }
            }
            return true;
        }
    }
    return false;
}

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
    Binders bs;
    return formula_alpha(a, b, bs);
}

bool convertible(const Formula& a, const Formula& b, const Environment& env) {
    return alpha_equal(unfold(a, env), unfold(b, env));
}

Formula expand_abbreviations(const Formula& f, const Goal& g) {
    auto abbrevs = g.abbreviations();
    Formula out = f;
    for (auto it = abbrevs.rbegin(); it != abbrevs.rend(); ++it) out = substitute(out, it->first, it->second);
    return out;
}

bool convertible_in(const Goal& g, const Formula& a, const Formula& b, const Environment& env) {
    if (convertible(a, b, env)) return true;
    return convertible(expand_abbreviations(a, g), expand_abbreviations(b, g), env);
}

}  // namespace wp
