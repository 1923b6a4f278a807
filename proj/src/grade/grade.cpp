#include "wp/grade.hpp"

#include <json.hpp>

#include "wp/version.hpp"

namespace wp::grade {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Correct: return "correct";
        case Verdict::Incorrect: return "incorrect";
        case Verdict::Incomplete: return "incomplete";
        case Verdict::Tampered: return "tampered";
    }
    return "?";
}

std::vector<std::string> exercise_ids(const doc::WaterDoc& d, const Environment& env) {
    std::vector<std::string> ids;
    std::optional<std::string> lemma;
    for (const auto& b : d.blocks) {
        if (b.kind == doc::BlockKind::Code) {
            for (const auto& ps : lang::parse_script_lenient(b.text, &env, {b.line, 1}))
                if (ps.sentence && ps.sentence->kind == lang::SentenceKind::LemmaHeader) lemma = ps.sentence->name;
        } else if (b.kind == doc::BlockKind::InputArea && lemma) {
            if (ids.empty() || ids.back() != *lemma) ids.push_back(*lemma);
        }
    }
    return ids;
}

GradeReport grade(const doc::WaterDoc& original, const doc::WaterDoc& submission, const Environment& env,
                  const GradeOptions& options) {
    GradeReport r;
    r.checker_version = kCheckerVersion;
    auto spliced = doc::splice_submission(original, submission);
    if (auto* tamper = std::get_if<doc::TamperReport>(&spliced)) {
        r.tamper = *tamper;
        for (const auto& id : exercise_ids(original, env)) r.exercises.push_back({id, Verdict::Tampered, std::nullopt});
        r.max_points = static_cast<int>(r.exercises.size());
        return r;
    }
    doc::CheckOptions opts;
    opts.unit_timeout = options.timeout;
    auto result = doc::check_document(std::get<doc::WaterDoc>(spliced), env, opts);
    for (const auto& u : result.units) {
        if (u.areas.empty()) continue;
        ExerciseResult e{u.lemma, Verdict::Incomplete, std::nullopt};
        if (u.first_error) {
            // Reaching Qed with goals left is unfinished work, not a mistake.
            e.verdict = u.first_error->code == tactics::error_code_name(tactics::ErrorCode::ProofNotFinished)
                            ? Verdict::Incomplete
                            : Verdict::Incorrect;
            e.diagnostic = u.first_error;
        } else if (u.complete) {
            e.verdict = Verdict::Correct;
            ++r.points;
        }
        r.exercises.push_back(std::move(e));
    }
    r.max_points = static_cast<int>(r.exercises.size());
    return r;
}

std::string to_json(const GradeReport& r) {
    nlohmann::ordered_json j;
    j["checkerVersion"] = r.checker_version;
    j["exercises"] = nlohmann::ordered_json::array();
    for (const auto& e : r.exercises) {
        nlohmann::ordered_json x;
        x["id"] = e.id;
        x["verdict"] = verdict_name(e.verdict);
        if (e.diagnostic) {
            x["diagnostic"] = {{"code", e.diagnostic->code},
                               {"message", e.diagnostic->message},
                               {"line", e.diagnostic->span.start_line},
                               {"column", e.diagnostic->span.start_col}};
        } else {
            x["diagnostic"] = nullptr;
        }
        j["exercises"].push_back(std::move(x));
    }
    j["points"] = r.points;
    j["maxPoints"] = r.max_points;
    if (r.tamper) j["tamper"] = {{"block", r.tamper->block}, {"reason", r.tamper->reason}};
    return j.dump(2) + "\n";
}

std::string to_text(const GradeReport& r) {
    std::string out;
    if (r.tamper)
        out += "submission was modified outside its input areas (block " + std::to_string(r.tamper->block) + ": " +
               r.tamper->reason + ")\n";
    for (const auto& e : r.exercises) {
        out += e.id + ": " + verdict_name(e.verdict);
        if (e.diagnostic)
            out += " (line " + std::to_string(e.diagnostic->span.start_line) + ": " + e.diagnostic->message + ")";
        out += "\n";
    }
    out += "points: " + std::to_string(r.points) + "/" + std::to_string(r.max_points) + "\n";
    return out;
}

}  // namespace wp::grade
