#include "wp/goal.hpp"

#include <string_view>

#include "wp/print.hpp"

namespace wp {

const char* origin_name(Origin o) {
    switch (o) {
        case Origin::Assumed: return "assumed";
        case Origin::Asserted: return "asserted";
        case Origin::Case: return "case";
        case Origin::Chosen: return "chosen";
    }
    return "?";
}

std::string unwrap_line(const Wrapper& w, const Environment* env) {
    std::string f = to_string(w.expected, env);
    switch (w.kind) {
        case WrapperKind::Case: return "Case (" + f + ").";
        case WrapperKind::ExpectedGoal: return "We need to show that (" + f + ").";
        case WrapperKind::BaseCase: return "We first show the base case (" + f + ").";
        case WrapperKind::InductionStep: return "We now show the induction step (" + f + ").";
    }
    return f;
}

std::string unwrap_instruction(const Wrapper& w, const Environment* env) {
    return "Add the following line to the proof:\n  " + unwrap_line(w, env);
}

const Variable* Goal::find_variable(const std::string& name) const {
    for (auto it = variables.rbegin(); it != variables.rend(); ++it)
        if (it->name == name) return &*it;
    return nullptr;
}

const Hypothesis* Goal::find_hypothesis(const std::string& label) const {
    for (const auto& h : hypotheses)
        if (h.label == label) return &h;
    return nullptr;
}

bool Goal::name_in_use(const std::string& name) const { return find_variable(name) != nullptr; }

std::string Goal::next_label() const {
    int next = 1;
    for (const auto& h : hypotheses) {
        std::string_view l = h.label;
        if (l.size() > 2 && l.substr(0, 2) == "_H") {
            try {
                int n = std::stoi(std::string(l.substr(2)));
                if (n >= next) next = n + 1;
            } catch (const std::exception&) {
            }
        }
    }
    std::string label = "_H" + std::to_string(next);
    while (find_hypothesis(label)) label = "_H" + std::to_string(++next);
    return label;
}

std::vector<std::pair<std::string, Term>> Goal::abbreviations() const {
    std::vector<std::pair<std::string, Term>> out;
    for (const auto& h : hypotheses) {
        if (h.origin != Origin::Chosen) continue;
        const Formula& s = h.statement;
        if (s.is(FormulaKind::Atom) && s.rel() == Rel::Eq && s.lhs().is(TermKind::Var))
            out.emplace_back(s.lhs().name(), s.rhs());
    }
    return out;
}

std::string render_goal(const Goal& g, const Environment* env) {
    if (g.wrapper) return unwrap_instruction(*g.wrapper, env);
    return to_string(g.target, env);
}

std::string bullet_marker(int depth) {
    static constexpr char kCycle[] = {'-', '+', '*'};
    return std::string(static_cast<std::size_t>(depth / 3 + 1), kCycle[depth % 3]);
}

std::optional<int> bullet_depth(const std::string& marker) {
    if (marker.empty()) return std::nullopt;
    char c = marker[0];
    int base = c == '-' ? 0 : c == '+' ? 1 : c == '*' ? 2 : -1;
    if (base < 0) return std::nullopt;
    for (char m : marker)
        if (m != c) return std::nullopt;
    return static_cast<int>(marker.size() - 1) * 3 + base;
}

ProofState ProofState::start(Formula statement) {
    ProofState s;
    s.goals.emplace_back(std::move(statement));
    return s;
}

int ProofState::focused_count() const {
    int unfocused = 0;
    for (const auto& f : bullets) unfocused += f.remaining;
    return static_cast<int>(goals.size()) - unfocused;
}

}  // namespace wp
