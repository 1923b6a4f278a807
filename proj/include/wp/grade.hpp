#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "wp/document.hpp"

namespace wp::grade {

enum class Verdict { Correct, Incorrect, Incomplete, Tampered };

const char* verdict_name(Verdict v);

struct ExerciseResult {
    std::string id;  // lemma name
    Verdict verdict = Verdict::Incomplete;
    std::optional<doc::Diagnostic> diagnostic;
};

struct GradeReport {
    std::string checker_version;
    std::vector<ExerciseResult> exercises;
    int points = 0;
    int max_points = 0;
    std::optional<doc::TamperReport> tamper;
};

struct GradeOptions {
    std::chrono::milliseconds timeout{10000};  // per exercise
};

// Exercises are the lemmas whose proofs contain an input area, in document order.
std::vector<std::string> exercise_ids(const doc::WaterDoc& d, const Environment& env);

GradeReport grade(const doc::WaterDoc& original, const doc::WaterDoc& submission, const Environment& env,
                  const GradeOptions& options = {});

std::string to_json(const GradeReport& r);
std::string to_text(const GradeReport& r);

}  // namespace wp::grade
