#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wp/environment.hpp"
#include "wp/syntax.hpp"

namespace wp {

enum class Origin { Assumed, Asserted, Case, Chosen };

const char* origin_name(Origin o);

struct Hypothesis {
    std::string label;
    Formula statement;
    Origin origin = Origin::Asserted;
};

struct Variable {
    std::string name;
    Sort sort;
};

enum class WrapperKind { Case, ExpectedGoal, BaseCase, InductionStep };

// Tag on a goal that blocks every sentence except its own unwrapping line.
struct Wrapper {
    WrapperKind kind;
    Formula expected;
};

// The sentence that removes the wrapper, e.g. "Case (ε < 2)."
std::string unwrap_line(const Wrapper& w, const Environment* env = nullptr);
// "Add the following line to the proof:\n  Case (ε < 2)."
std::string unwrap_instruction(const Wrapper& w, const Environment* env = nullptr);

struct Goal {
    explicit Goal(Formula t) : target(std::move(t)) {}

    std::vector<Variable> variables;
    std::vector<Hypothesis> hypotheses;
    Formula target;
    std::optional<Wrapper> wrapper;

    const Variable* find_variable(const std::string& name) const;
    const Hypothesis* find_hypothesis(const std::string& label) const;
    bool name_in_use(const std::string& name) const;
    // Next automatic label: _H1, _H2, ...
    std::string next_label() const;
    // Witness definitions introduced by `Choose`, in introduction order.
    std::vector<std::pair<std::string, Term>> abbreviations() const;
};

// What the user sees for a goal: the unwrap instruction for a wrapped goal,
// the target otherwise.
std::string render_goal(const Goal& g, const Environment* env = nullptr);

struct BulletFrame {
    std::string marker;
    int remaining = 0;  // unfocused sibling goals still to be handled at this level

    bool operator==(const BulletFrame&) const = default;
};

inline constexpr int kMaxBulletDepth = 8;

// "-", "+", "*", "--", "++", "**", "---", ...
std::string bullet_marker(int depth);
// Inverse of bullet_marker; nullopt for malformed markers.
std::optional<int> bullet_depth(const std::string& marker);

struct ProofState {
    std::vector<Goal> goals;
    std::vector<BulletFrame> bullets;

    static ProofState start(Formula statement);

    bool complete() const { return goals.empty(); }
    // Goals belonging to the currently focused bullet (goals[0] first).
    int focused_count() const;
};

}  // namespace wp
