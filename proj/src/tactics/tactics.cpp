#include "wp/tactics.hpp"

#include "wp/kernel.hpp"
#include "wp/print.hpp"

namespace wp::tactics {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::TooManyVariables: return "TooManyVariables";
        case ErrorCode::TakeOnImplication: return "TakeOnImplication";
        case ErrorCode::TakeNotForAll: return "TakeNotForAll";
        case ErrorCode::SortMismatch: return "SortMismatch";
        case ErrorCode::NameClash: return "NameClash";
        case ErrorCode::WrongAssumption: return "WrongAssumption";
        case ErrorCode::NotAnImplication: return "NotAnImplication";
        case ErrorCode::NotAnExists: return "NotAnExists";
        case ErrorCode::NotTheStatedConjunction: return "NotTheStatedConjunction";
        case ErrorCode::EitherOrFailed: return "EitherOrFailed";
        case ErrorCode::WrongCase: return "WrongCase";
        case ErrorCode::NoNeedForCase: return "NoNeedForCase";
        case ErrorCode::GoalMismatch: return "GoalMismatch";
        case ErrorCode::AutomationFailed: return "AutomationFailed";
        case ErrorCode::LemmaUnused: return "LemmaUnused";
        case ErrorCode::UnresolvedReference: return "UnresolvedReference";
        case ErrorCode::NotNatForAll: return "NotNatForAll";
        case ErrorCode::WrongBaseCase: return "WrongBaseCase";
        case ErrorCode::WrongInductionStep: return "WrongInductionStep";
        case ErrorCode::NoNeedForBaseCase: return "NoNeedForBaseCase";
        case ErrorCode::NoNeedForInductionStep: return "NoNeedForInductionStep";
        case ErrorCode::UnknownDefinition: return "UnknownDefinition";
        case ErrorCode::NameNotPresent: return "NameNotPresent";
        case ErrorCode::GoalWrapped: return "GoalWrapped";
        case ErrorCode::BulletExpected: return "BulletExpected";
        case ErrorCode::WrongBullet: return "WrongBullet";
        case ErrorCode::BulletTooDeep: return "BulletTooDeep";
        case ErrorCode::NoGoals: return "NoGoals";
        case ErrorCode::ProofNotFinished: return "ProofNotFinished";
        case ErrorCode::UnexpectedSentence: return "UnexpectedSentence";
        case ErrorCode::Timeout: return "Timeout";
    }
    return "?";
}

namespace {

[[noreturn]] void fail(ErrorCode code, std::string message, const ProofState& s) {
    TacticError e{code, std::move(message), {}, std::nullopt, std::nullopt};
    if (!s.goals.empty()) e.goal = s.goals.front();
    throw TacticFailure(std::move(e));
}

const Goal& focused(const ProofState& s) {
    if (s.goals.empty()) fail(ErrorCode::NoGoals, "There are no goals left. Finish the proof with `Qed.`", s);
    return s.goals.front();
}

// panic_if_goal_wrapped
const Goal& unwrapped(const ProofState& s, const Context& cx) {
    const Goal& g = focused(s);
    if (g.wrapper) fail(ErrorCode::GoalWrapped, unwrap_instruction(*g.wrapper, &cx.env), s);
    return g;
}

std::string show(const Formula& f, const Context& cx) { return to_string(f, &cx.env); }

void check(const Formula& f, const Goal& g, const ProofState& s, const Context& cx) {
    try {
        check_formula(f, Scope::of(g), cx.env);
    } catch (const SortError& e) {
        fail(ErrorCode::SortMismatch, e.what(), s);
    } catch (const UnknownDefinition& e) {
        fail(ErrorCode::UnknownDefinition, e.what(), s);
    }
}

// Looks through definitions at the head; interval membership stays as is.
Formula head_view(Formula f, const Environment& env) {
    while (f.is(FormulaKind::DefApp)) {
        const Definition* d = env.definition(f.name());
        if (!d) break;
        f = instantiate_definition(*d, f.def_args());
    }
    return f;
}

Outcome replace_focused(const ProofState& s, std::vector<Goal> with, std::vector<std::string> notes = {}) {
    Outcome o{s, std::move(notes)};
    o.state.goals.erase(o.state.goals.begin());
    o.state.goals.insert(o.state.goals.begin(), with.begin(), with.end());
    return o;
}

std::string user_label(const Goal& g, const std::optional<std::string>& label, const ProofState& s) {
    if (!label) return g.next_label();
    if (g.find_hypothesis(*label)) fail(ErrorCode::NameClash, "The label `" + *label + "` is already in use.", s);
    return *label;
}

automation::ProofResult run_prove(const Goal& g, const Formula& target, const std::optional<std::string>& by,
                                  const ProofState& s, const Context& cx) {
    try {
        if (by) return automation::prove_required(g, target, *by, cx.env, cx.budget);
        return automation::prove(g, target, cx.env, cx.budget);
    } catch (const automation::UnresolvedReference& e) {
        fail(ErrorCode::UnresolvedReference, e.what(), s);
    } catch (const automation::Timeout& e) {
        fail(ErrorCode::Timeout, e.what(), s);
    }
}

void require_proof(const automation::ProofResult& r, const std::optional<std::string>& by, const std::string& failure,
                   const ProofState& s) {
    if (r.found()) return;
    if (r.verdict == automation::Verdict::LemmaUnused)
        fail(ErrorCode::LemmaUnused, "Could not find a proof that uses `" + *by + "`.", s);
    fail(ErrorCode::AutomationFailed, failure, s);
}

std::string goal_mismatch(const Goal& g, const Context& cx) {
    return "The statement does not match the goal. The goal is (" + show(g.target, cx) + ").";
}

// Chain global statement `g` proves goal atom `t`: same endpoints, at least
// as strong a relation, possibly written the other way around.
bool entails_atom(const Formula& g, const Formula& t) {
    if (!g.is(FormulaKind::Atom) || !t.is(FormulaKind::Atom)) return false;
    struct Ordered {
        Term lo, hi;
        Rel rel;  // Eq, Lt or Le
    };
    auto order = [](const Formula& a) {
        switch (a.rel()) {
            case Rel::Gt: return Ordered{a.rhs(), a.lhs(), Rel::Lt};
            case Rel::Ge: return Ordered{a.rhs(), a.lhs(), Rel::Le};
            default: return Ordered{a.lhs(), a.rhs(), a.rel()};
        }
    };
    Ordered x = order(g), y = order(t);
    bool same = x.lo == y.lo && x.hi == y.hi;
    bool swapped = x.lo == y.hi && x.hi == y.lo;
    if (x.rel == Rel::Eq) return (same || swapped) && (y.rel == Rel::Eq || y.rel == Rel::Le);
    if (!same) return false;
    return y.rel == Rel::Le || y.rel == x.rel;
}

Outcome unwrap(const ProofState& s, const Formula& f, WrapperKind kind, ErrorCode wrong, const char* wrong_msg,
               ErrorCode not_needed, const char* not_needed_msg, const Context& cx) {
    const Goal& g = focused(s);
    if (!g.wrapper) fail(not_needed, not_needed_msg, s);
    if (g.wrapper->kind != kind) fail(ErrorCode::GoalWrapped, unwrap_instruction(*g.wrapper, &cx.env), s);
    if (!alpha_equal(g.wrapper->expected, f)) fail(wrong, wrong_msg, s);
    Goal out = g;
    out.wrapper.reset();
    return replace_focused(s, {out});
}

}  // namespace

Outcome take(const ProofState& s, const std::vector<lang::TakeGroup>& groups, const Context& cx) {
    const Goal& g = unwrapped(s, cx);
    Goal out = g;
    bool first = true;
    for (const auto& group : groups) {
        for (const auto& name : group.names) {
            Formula t = head_view(out.target, cx.env);
            bool implication = t.is(FormulaKind::Implies) || (t.is(FormulaKind::ForAll) && t.sort() == Sort::prop());
            if (!t.is(FormulaKind::ForAll) || implication) {
                if (!first) fail(ErrorCode::TooManyVariables, "Tried to introduce too many variables.", s);
                if (implication)
                    fail(ErrorCode::TakeOnImplication,
                         "`Take ...` cannot be used to prove an implication. Use `Assume that ...` instead.", s);
                fail(ErrorCode::TakeNotForAll,
                     "`Take ...` can only be used to prove a `for all`-statement or to construct a map.", s);
            }
            if (!(group.sort == t.sort()))
                fail(ErrorCode::SortMismatch,
                     "Expected a variable of type " + t.sort().str() + " instead of " + group.sort.str() + ".", s);
            if (out.name_in_use(name) || out.find_hypothesis(name))
                fail(ErrorCode::NameClash, "The name `" + name + "` is already in use.", s);
            out.variables.push_back({name, t.sort()});
            out.target = name == t.name() ? t.body() : substitute(t.body(), t.name(), Term::var(name));
            first = false;
        }
    }
    return replace_focused(s, {out});
}

Outcome assume_that(const ProofState& s, const Formula& f, const std::optional<std::string>& label,
                    const Context& cx) {
    const Goal& g = unwrapped(s, cx);
    Formula t = head_view(g.target, cx.env);
    if (t.is(FormulaKind::ForAll) && !(t.sort() == Sort::prop()))
        fail(ErrorCode::NotAnImplication,
             "`Assume that ...` can only be used to prove an implication (⇒). Use `Take ...` to introduce a variable.",
             s);
    if (!t.is(FormulaKind::Implies))
        fail(ErrorCode::NotAnImplication, "`Assume that ...` can only be used to prove an implication (⇒).", s);
    check(f, g, s, cx);
    if (!convertible_in(g, f, t.left(), cx.env))
        fail(ErrorCode::WrongAssumption,
             "Wrong assumption specified. The premise of the implication is (" + show(t.left(), cx) + ").", s);
    Goal out = g;
    out.hypotheses.push_back({user_label(g, label, s), t.left(), Origin::Assumed});
    out.target = t.right();
    return replace_focused(s, {out});
}

Outcome choose(const ProofState& s, const std::string& name, const Term& witness, const Context& cx) {
    const Goal& g = unwrapped(s, cx);
    Formula t = head_view(g.target, cx.env);
    if (!t.is(FormulaKind::Exists))
        fail(ErrorCode::NotAnExists, "`Choose ...` can only be used to prove a `there exists`-statement.", s);
    if (g.name_in_use(name) || g.find_hypothesis(name))
        fail(ErrorCode::NameClash, "The name `" + name + "` is already in use.", s);
    Scope scope = Scope::of(g);
    try {
        Sort ws = sort_of(witness, scope, cx.env);
        if (!coercible(ws, t.sort()))
            fail(ErrorCode::SortMismatch,
                 "Expected a term of type " + t.sort().str() + ", but `" + to_string(witness) + "` has type " +
                     ws.str() + ".",
                 s);
    } catch (const SortError& e) {
        fail(ErrorCode::SortMismatch, e.what(), s);
    }
    Goal out = g;
    out.variables.push_back({name, t.sort()});
    out.hypotheses.push_back(
        {g.next_label(), Formula::atom(Rel::Eq, Term::var(name), witness), Origin::Chosen});
    out.target = name == t.name() ? t.body() : substitute(t.body(), t.name(), Term::var(name));
    return replace_focused(s, {out});
}

Outcome show_both(const ProofState& s, const Formula& f, const Formula& g2, const Context& cx) {
    const Goal& g = unwrapped(s, cx);
    check(f, g, s, cx);
    check(g2, g, s, cx);
    if (!convertible_in(g, Formula::conj(f, g2), g.target, cx.env))
        fail(ErrorCode::NotTheStatedConjunction,
             "The goal is not the conjunction of these statements. The goal is (" + show(g.target, cx) + ").", s);
    Goal a = g, b = g;
    a.target = f;
    b.target = g2;
    return replace_focused(s, {a, b});
}

Outcome either_or(const ProofState& s, const Formula& f, const Formula& g2, const Context& cx) {
    const Goal& g = unwrapped(s, cx);
    check(f, g, s, cx);
    check(g2, g, s, cx);
    auto r = run_prove(g, Formula::disj(f, g2), std::nullopt, s, cx);
    if (!r.found())
        fail(ErrorCode::EitherOrFailed, "Could not find a proof that the first or the second statement holds.", s);
    std::vector<Goal> cases;
    for (const Formula& c : {f, g2}) {
        Goal x = g;
        x.hypotheses.push_back({g.next_label(), c, Origin::Case});
        x.wrapper = Wrapper{WrapperKind::Case, c};
        cases.push_back(std::move(x));
    }
    return replace_focused(s, cases);
}

Outcome case_(const ProofState& s, const Formula& f, const Context& cx) {
    return unwrap(s, f, WrapperKind::Case, ErrorCode::WrongCase, "Wrong case specified.", ErrorCode::NoNeedForCase,
                  "No need to specify case.", cx);
}

Outcome conclude_that(const ProofState& s, const lang::Statement& body, const std::optional<std::string>& by,
                      const Context& cx) {
    const Goal& g = unwrapped(s, cx);
    if (const Formula* f = std::get_if<Formula>(&body)) {
        check(*f, g, s, cx);
        if (!convertible_in(g, *f, g.target, cx.env)) fail(ErrorCode::GoalMismatch, goal_mismatch(g, cx), s);
        require_proof(run_prove(g, *f, by, s, cx), by, "Could not verify this statement.", s);
        return replace_focused(s, {});
    }
    const auto& chain = std::get<chains::Chain>(body);
    auto v = chains::validate(chain, Scope::of(g), cx.env);
    if (!v.ok()) fail(v.error == chains::ChainError::Sort ? ErrorCode::SortMismatch : ErrorCode::GoalMismatch,
                      v.message, s);
    Formula global = chains::global_statement(chain);
    Formula target = expand_abbreviations(head_view(g.target, cx.env), g);
    if (!convertible_in(g, global, g.target, cx.env) && !entails_atom(global, g.target) &&
        !entails_atom(expand_abbreviations(global, g), target))
        fail(ErrorCode::GoalMismatch, goal_mismatch(g, cx), s);
    if (by) {
        require_proof(run_prove(g, chains::total_statement(chain), by, s, cx), by,
                      "Could not verify this chain of (in)equalities.", s);
        return replace_focused(s, {});
    }
    automation::ChainResult r;
    try {
        r = automation::prove_chain(g, chain, cx.env, cx.budget);
    } catch (const automation::Timeout& e) {
        fail(ErrorCode::Timeout, e.what(), s);
    }
    if (!r.found) {
        TacticError e{ErrorCode::AutomationFailed,
                      "Could not verify link " + std::to_string(r.link_index) + " of the chain: (" +
                          show(*r.link, cx) + ").",
                      {}, g, r.link_index};
        throw TacticFailure(std::move(e));
    }
    return replace_focused(s, {});
}

Outcome it_holds_that(const ProofState& s, const Formula& f, const std::optional<std::string>& label,
                      const std::optional<std::string>& by, const Context& cx) {
    const Goal& g = unwrapped(s, cx);
    check(f, g, s, cx);
    std::string l = user_label(g, label, s);
    require_proof(run_prove(g, f, by, s, cx), by, "Could not verify this statement.", s);
    Goal out = g;
    out.hypotheses.push_back({l, f, Origin::Asserted});
    return replace_focused(s, {out});
}

Outcome suffices_to_show(const ProofState& s, const Formula& f, const std::optional<std::string>& by,
                         const Context& cx) {
    const Goal& g = unwrapped(s, cx);
    check(f, g, s, cx);
    Goal with = g;
    with.hypotheses.push_back({g.next_label(), f, Origin::Assumed});
    require_proof(run_prove(with, g.target, by, s, cx), by,
                  "Could not verify that this statement suffices to show the goal.", s);
    Goal out = g;
    out.target = f;
    return replace_focused(s, {out});
}

Outcome need_to_show(const ProofState& s, const Formula& f, const Context& cx) {
    const Goal& g0 = focused(s);
    if (g0.wrapper && g0.wrapper->kind == WrapperKind::ExpectedGoal) {
        if (!alpha_equal(g0.wrapper->expected, f)) fail(ErrorCode::GoalWrapped, unwrap_instruction(*g0.wrapper), s);
        Goal out = g0;
        out.wrapper.reset();
        return replace_focused(s, {out});
    }
    const Goal& g = unwrapped(s, cx);
    check(f, g, s, cx);
    if (!convertible_in(g, f, g.target, cx.env)) fail(ErrorCode::GoalMismatch, goal_mismatch(g, cx), s);
    Goal out = g;
    out.target = f;
    return replace_focused(s, {out});
}

Outcome use_induction(const ProofState& s, const std::string& var, const Context& cx) {
    const Goal& g = unwrapped(s, cx);
    Formula t = head_view(g.target, cx.env);
    if (!t.is(FormulaKind::ForAll) || !(t.sort() == Sort::nat()))
        fail(ErrorCode::NotNatForAll, "Induction can only be used to prove a `for all`-statement over ℕ.", s);
    if (var != t.name() && free_vars(t).count(var))
        fail(ErrorCode::NameClash, "The name `" + var + "` is already in use.", s);
    Formula p = var == t.name() ? t.body() : substitute(t.body(), t.name(), Term::var(var));
    Formula base = substitute(p, var, Term::lit(0));
    Formula next = substitute(p, var, Term::add(Term::var(var), Term::lit(1)));
    Formula step = Formula::forall(var, Sort::nat(), Formula::implies(p, next));
    Goal a = g, b = g;
    a.target = base;
    a.wrapper = Wrapper{WrapperKind::BaseCase, base};
    b.target = step;
    b.wrapper = Wrapper{WrapperKind::InductionStep, step};
    return replace_focused(s, {a, b});
}

Outcome base_case(const ProofState& s, const Formula& f, const Context& cx) {
    return unwrap(s, f, WrapperKind::BaseCase, ErrorCode::WrongBaseCase, "Wrong base case specified.",
                  ErrorCode::NoNeedForBaseCase, "No need to specify the base case.", cx);
}

Outcome induction_step(const ProofState& s, const Formula& f, const Context& cx) {
    return unwrap(s, f, WrapperKind::InductionStep, ErrorCode::WrongInductionStep, "Wrong induction step specified.",
                  ErrorCode::NoNeedForInductionStep, "No need to specify the induction step.", cx);
}

Outcome expand_definition(const ProofState& s, const std::string& name, const Formula& in, const Context& cx) {
    auto def = cx.env.resolve_definition(name);
    if (!def) fail(ErrorCode::UnknownDefinition, "Unknown definition `" + name + "`.", s);
    if (!mentions_definition(in, *def))
        fail(ErrorCode::NameNotPresent, "The definition of " + name + " does not occur in (" + show(in, cx) + ").", s);
    Formula expanded = unfold(in, cx.env, Unfold::only({*def}));
    return Outcome{s, {show(expanded, cx)}};
}

std::string help_suggestion(const Goal& g, const Environment& env) {
    if (g.wrapper) return unwrap_line(*g.wrapper, &env);
    Formula t = head_view(g.target, env);
    switch (t.kind()) {
        case FormulaKind::ForAll:
            if (t.sort() == Sort::prop()) break;
            return "Take " + t.name() + " : " + t.sort().str() + ".";
        case FormulaKind::Implies:
            return "Assume that (" + to_string(t.left(), &env) + ").";
        case FormulaKind::Exists:
            return "Choose " + t.name() + " := (...).";
        case FormulaKind::And:
            return "We show both (" + to_string(t.left(), &env) + ") and (" + to_string(t.right(), &env) + ").";
        case FormulaKind::Or:
            return "It suffices to show that (" + to_string(t.left(), &env) + ").";
        default:
            break;
    }
    return "We conclude that (" + to_string(g.target, &env) + ").";
}

Outcome help(const ProofState& s, const Context& cx) {
    if (s.goals.empty()) return Outcome{s, {"Qed."}};
    const Goal& g = s.goals.front();
    Outcome o{s, {help_suggestion(g, cx.env)}};
    if (!g.wrapper && head_view(g.target, cx.env).is(FormulaKind::Or))
        o.notes.push_back("Either of the two statements may be chosen.");
    return o;
}

}  // namespace wp::tactics
