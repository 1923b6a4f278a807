#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wp/automation.hpp"
#include "wp/environment.hpp"
#include "wp/goal.hpp"
#include "wp/lang.hpp"

namespace wp::tactics {

enum class ErrorCode {
    TooManyVariables,
    TakeOnImplication,
    TakeNotForAll,
    SortMismatch,
    NameClash,
    WrongAssumption,
    NotAnImplication,
    NotAnExists,
    NotTheStatedConjunction,
    EitherOrFailed,
    WrongCase,
    NoNeedForCase,
    GoalMismatch,
    AutomationFailed,
    LemmaUnused,
    UnresolvedReference,
    NotNatForAll,
    WrongBaseCase,
    WrongInductionStep,
    NoNeedForBaseCase,
    NoNeedForInductionStep,
    UnknownDefinition,
    NameNotPresent,
    GoalWrapped,
    BulletExpected,
    WrongBullet,
    BulletTooDeep,
    NoGoals,
    ProofNotFinished,
    UnexpectedSentence,
    Timeout,
};

const char* error_code_name(ErrorCode c);

struct TacticError {
    ErrorCode code;
    std::string message;
    lang::SourceSpan span;
    std::optional<Goal> goal;  // focused goal when the error occurred
    std::optional<int> link;   // failing chain link, 1-based
};

class TacticFailure : public std::runtime_error {
public:
    explicit TacticFailure(TacticError e) : std::runtime_error(e.message), error(std::move(e)) {}
    TacticError error;
};

struct Outcome {
    ProofState state;
    std::vector<std::string> notes;  // definition expansions, Help suggestions
};

struct Context {
    const Environment& env;
    automation::Budget budget = {};
};

// Operations on the focused goal (goals[0]). Every operation returns a new
// state and throws TacticFailure, leaving the input state untouched.
Outcome take(const ProofState& s, const std::vector<lang::TakeGroup>& groups, const Context& cx);
Outcome assume_that(const ProofState& s, const Formula& f, const std::optional<std::string>& label,
                    const Context& cx);
Outcome choose(const ProofState& s, const std::string& name, const Term& witness, const Context& cx);
Outcome show_both(const ProofState& s, const Formula& f, const Formula& g, const Context& cx);
Outcome either_or(const ProofState& s, const Formula& f, const Formula& g, const Context& cx);
Outcome case_(const ProofState& s, const Formula& f, const Context& cx);
Outcome conclude_that(const ProofState& s, const lang::Statement& body, const std::optional<std::string>& by,
                      const Context& cx);
Outcome it_holds_that(const ProofState& s, const Formula& f, const std::optional<std::string>& label,
                      const std::optional<std::string>& by, const Context& cx);
Outcome suffices_to_show(const ProofState& s, const Formula& f, const std::optional<std::string>& by,
                         const Context& cx);
Outcome need_to_show(const ProofState& s, const Formula& f, const Context& cx);
Outcome use_induction(const ProofState& s, const std::string& var, const Context& cx);
Outcome base_case(const ProofState& s, const Formula& f, const Context& cx);
Outcome induction_step(const ProofState& s, const Formula& f, const Context& cx);
Outcome expand_definition(const ProofState& s, const std::string& name, const Formula& in, const Context& cx);
Outcome help(const ProofState& s, const Context& cx);

// Suggested next sentence for a goal, by the shape of its target.
std::string help_suggestion(const Goal& g, const Environment& env);

// Dispatcher: bullet discipline, Qed, then the sentence's tactic. Errors carry
// the sentence span.
Outcome step(const ProofState& s, const lang::Sentence& sentence, const Context& cx);

}  // namespace wp::tactics
