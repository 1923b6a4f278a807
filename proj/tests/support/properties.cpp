#include "properties.hpp"

#include <chrono>

#include "fm_oracle.hpp"
#include "support.hpp"
#include "wp/automation.hpp"
#include "wp/print.hpp"
#include "wp/tactics.hpp"

namespace wp::testing {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

void fail(Tally& t, const std::string& what) {
    if (t.failures++ == 0) t.first_failure = what;
}

automation::Constraint constraint(const Formula& atom) {
    using automation::Cmp;
    auto l = *automation::linearize(atom.lhs());
    auto r = *automation::linearize(atom.rhs());
    switch (atom.rel()) {
        case Rel::Eq: return {l - r, Cmp::Eq};
        case Rel::Lt: return {l - r, Cmp::Lt};
        case Rel::Le: return {l - r, Cmp::Le};
        case Rel::Gt: return {r - l, Cmp::Lt};
        case Rel::Ge: return {r - l, Cmp::Le};
    }
    return {l - r, Cmp::Eq};
}

const Environment& gen_env() {
    static const Environment e = generator_env();
    return e;
}

}  // namespace

Tally solver_vs_oracle(int systems, unsigned seed) {
    static const std::vector<std::string> vars = {"x", "y", "z", "w"};
    Gen g(seed);
    Tally t;
    auto start = Clock::now();
    for (int i = 0; i < systems; ++i) {
        int m = g.uniform(1, 6);
        std::vector<Formula> atoms;
        for (int k = 0; k < m; ++k) atoms.push_back(g.linear_atom());
        std::string shown;
        for (const auto& a : atoms) shown += to_string(a) + "; ";

        std::vector<automation::Constraint> cs;
        std::vector<oracle::Row> rows;
        for (const auto& a : atoms) {
            cs.push_back(constraint(a));
            rows.push_back(oracle::row(a, vars));
        }
        bool feasible = oracle::feasible(rows, vars.size());
        auto got = automation::fourier_motzkin(cs);
        if (got != (feasible ? automation::Feasibility::Feasible : automation::Feasibility::Infeasible))
            fail(t, "feasibility of " + shown);
        if (!feasible) ++t.interesting;

        std::vector<Formula> hyps(atoms.begin(), atoms.end() - 1);
        bool valid = oracle::valid(hyps, atoms.back(), vars);
        bool solved = automation::solve_linear(hyps, atoms.back()) == automation::LinearVerdict::Valid;
        if (solved != valid) fail(t, "entailment of " + shown);
        ++t.cases;
    }
    t.seconds = since(start);
    return t;
}

Tally sentence_round_trip(int sentences, unsigned seed) {
    Gen g(seed);
    Tally t;
    auto start = Clock::now();
    for (int i = 0; i < sentences; ++i) {
        lang::Sentence s = g.sentence();
        std::string text = lang::print_sentence(s, &gen_env());
        ++t.cases;
        try {
            lang::Sentence back = lang::parse_sentence(text, &gen_env());
            bool same = lang::equivalent(s, back) && s.formulas.size() == back.formulas.size();
            for (std::size_t k = 0; same && k < s.formulas.size(); ++k) same = s.formulas[k] == back.formulas[k];
            if (!same) fail(t, text);
        } catch (const std::exception& e) {
            fail(t, text + " (" + e.what() + ")");
        }
    }
    t.seconds = since(start);
    return t;
}

Tally document_round_trip(int documents, unsigned seed) {
    Gen g(seed);
    Tally t;
    auto start = Clock::now();
    for (int i = 0; i < documents; ++i) {
        doc::WaterDoc d = g.document();
        std::string text = doc::render_document(d);
        ++t.cases;
        try {
            if (!doc::parse_document(text).same(d)) fail(t, text);
        } catch (const std::exception& e) {
            fail(t, text + " (" + e.what() + ")");
        }
    }
    t.seconds = since(start);
    return t;
}

namespace {

struct Start {
    const char* statement;
    const char* script;
};

const Start kStarts[] = {
    {"∀ ε : ℝ, ε > 0 ⇒ ∃ a : ℝ, a ∈ [0,4) ∧ 4 - ε < a", "Take ε : ℝ. Assume that (ε > 0). Either (ε < 2) or (ε ≥ 2)."},
    {"∀ n : ℕ, n + 0 = n", "We use induction on n."},
    {"∀ x : ℝ, x < 0 ∨ x ≥ 0", "Take x : ℝ. Either (x < 0) or (x ≥ 0)."},
    {"∀ x : ℝ, x > 1 ⇒ x > 0 ∧ x > -1", ""},
};

// Sentences that would make progress on the unwrapped goals above.
const char* kPlausible[] = {
    "Choose a := 3.",
    "Choose a := (4 - ε/2).",
    "Assume that (ε > 0).",
    "We conclude that (ε < 2 ∨ ε ≥ 2).",
    "We conclude that (x < 0 ∨ x ≥ 0).",
    "We conclude that (0 + 0 = 0).",
    "It holds that (ε > 0).",
    "It holds that (1 + 1 = 2).",
    "It suffices to show that (x < 0).",
    "It suffices to show that (ε < 2).",
    "We need to show that (ε < 2 ∨ ε ≥ 2).",
    "We need to show that (∃ a : ℝ, a ∈ [0,4) ∧ 4 - ε < a).",
    "We show both (0 + 0 = 0) and (0 = 0).",
    "Either (ε < 1) or (ε ≥ 1).",
    "Take x : ℝ.",
    "Take n : ℕ.",
    "Case (ε ≥ 2).",
    "Case (x ≥ 0).",
    "Case (ε < 3).",
    "We first show the base case (0 + 0 = 1).",
    "We now show the induction step (∀ n : ℕ, n = n).",
    "We use induction on n.",
    "Help.",
    "Expand the definition of supremum in (1 is the supremum of [0,1)).",
    "By IVT it holds that (1 + 1 = 2).",
    "Qed.",
};

bool unwraps(const Goal& g, const lang::Sentence& s) {
    if (!g.wrapper || s.formulas.empty()) return false;
    lang::SentenceKind want;
    switch (g.wrapper->kind) {
        case WrapperKind::Case: want = lang::SentenceKind::Case; break;
        case WrapperKind::BaseCase: want = lang::SentenceKind::BaseCase; break;
        case WrapperKind::InductionStep: want = lang::SentenceKind::InductionStep; break;
        default: want = lang::SentenceKind::NeedToShow;
    }
    return s.kind == want && alpha_equal(s.formulas[0], g.wrapper->expected);
}

std::optional<std::string> bullet_for(const ProofState& s, Gen& g) {
    switch (g.uniform(0, 3)) {
        case 0: return std::nullopt;
        case 1: return bullet_marker(g.uniform(0, 2));
        default:
            if (!s.bullets.empty() && g.coin()) return s.bullets.back().marker;
            return bullet_marker(static_cast<int>(s.bullets.size()));
    }
}

}  // namespace

Tally wrapper_scripts(int scripts, unsigned seed) {
    static const Environment env = seed_env();
    Gen g(seed);
    Tally t;
    auto start = Clock::now();
    tactics::Context cx{env};
    cx.budget.max_nodes = 2000;
    for (int i = 0; i < scripts; ++i) {
        const Start& st = kStarts[g.uniform(0, 3)];
        ProofState state = ProofState::start(lang::parse_formula(st.statement, {&env, {}}));
        for (const auto& s : lang::parse_script(st.script, &env)) state = tactics::step(state, s, cx).state;
        int n = g.uniform(1, 12);
        for (int k = 0; k < n; ++k) {
            lang::Sentence s;
            int pick = g.uniform(0, 9);
            if (pick < 3) {
                s = g.sentence();
            } else if (pick < 8 || state.goals.empty() || !state.goals[0].wrapper) {
                s = lang::parse_sentence(kPlausible[g.uniform(0, std::size(kPlausible) - 1)], &env);
                s.bullet = bullet_for(state, g);
            } else {
                s = lang::parse_sentence(unwrap_line(*state.goals[0].wrapper, &env), &env);
                s.bullet = bullet_for(state, g);
            }
            bool guarded = !state.goals.empty() && state.goals[0].wrapper && !unwraps(state.goals[0], s);
            ProofState before = state;
            std::string shown = lang::print_sentence(s, &env);
            try {
                ProofState after = tactics::step(state, s, cx).state;
                if (guarded && (after.goals.size() != before.goals.size() || !same_goal(after.goals[0], before.goals[0])))
                    fail(t, "advanced a wrapped goal: " + shown);
                state = after;
            } catch (const tactics::TacticFailure&) {
                if (!same_state(state, before)) fail(t, "rejection changed the state: " + shown);
                if (guarded) ++t.interesting;
            } catch (const std::exception& e) {
                if (guarded) fail(t, std::string("unexpected exception: ") + e.what());
            }
        }
        ++t.cases;
    }
    t.seconds = since(start);
    return t;
}

}  // namespace wp::testing
