// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if any fails.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "support/properties.hpp"
#include "support/support.hpp"
#include "wp/chains.hpp"
#include "wp/grade.hpp"
#include "wp/tactics.hpp"

using namespace wp;
namespace fs = std::filesystem;

namespace {

struct Check {
    std::ostringstream detail;
    bool ok = true;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail << what;
        }
    }
};

std::string replaced(std::string text, const std::string& from, const std::string& to) {
    auto at = text.find(from);
    if (at == std::string::npos) throw std::runtime_error("missing text: " + from);
    return text.replace(at, from.size(), to);
}

doc::CheckResult check_text(const std::string& text, const Environment& env) {
    return doc::check_document(doc::parse_document(text), env);
}

std::string first_message(const doc::CheckResult& r) {
    auto d = r.diagnostics();
    return d.empty() ? std::string() : d[0].message;
}

bool all_green(const doc::CheckResult& r) {
    if (!r.diagnostics().empty()) return false;
    for (const auto& u : r.units)
        if (!u.complete) return false;
    return true;
}

std::string tactic_error(const Environment& env, const std::string& statement, const std::string& script) {
    ProofState s = ProofState::start(lang::parse_formula(statement, {&env, {}}));
    tactics::Context cx{env};
    for (const auto& sentence : lang::parse_script(script, &env)) {
        try {
            s = tactics::step(s, sentence, cx).state;
        } catch (const tactics::TacticFailure& e) {
            return e.error.message;
        }
    }
    return "(no error)";
}

const char* kEpsilon = "∀ ε : ℝ, ε > 0 ⇒ ∃ a : ℝ, a ∈ [0,4) ∧ 4 - ε < a";
const char* kIntro = "Take ε : ℝ. Assume that (ε > 0). ";

void golden(Check& c, const Environment& env) {
    auto start = std::chrono::steady_clock::now();
    auto r = check_text(testing::data_file("epsilon.wpd"), env);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.expect(all_green(r), "diagnostic: " + first_message(r));
    c.expect(r.units.size() == 1 && r.units[0].complete, "proof did not reach Qed");
    c.expect(s < 2.0, "took " + std::to_string(s) + " s");
    c.detail << "checked in " << std::fixed << std::setprecision(1) << s * 1000 << " ms";
}

void messages(Check& c, const Environment& env) {
    std::string either = std::string(kIntro) + "Either (ε < 2) or (ε ≥ 2). ";
    const std::pair<std::string, std::string> cases[] = {
        {tactic_error(env, "∀ x : ℝ, x ≥ 0 ∨ x < 0", "Take x, y : ℝ."), "Tried to introduce too many variables."},
        {tactic_error(env, "1 > 0 ⇒ 2 > 0", "Take x : ℝ."),
         "`Take ...` cannot be used to prove an implication. Use `Assume that ...` instead."},
        {tactic_error(env, "∃ x : ℝ, x ≥ 0", "Take x : ℝ."),
         "`Take ...` can only be used to prove a `for all`-statement or to construct a map."},
        {tactic_error(env, "∀ x : ℝ, x ≥ 0 ∨ x < 0", "Take x : ℕ."), "Expected a variable of type ℝ instead of ℕ."},
        {tactic_error(env, kEpsilon, either + "- Case (ε ≥ 2)."), "Wrong case specified."},
        {tactic_error(env, kEpsilon, "Take ε : ℝ. Case (ε < 2)."), "No need to specify case."},
        {tactic_error(env, kEpsilon, std::string(kIntro) + "Either (ε < 1) or (ε > 2)."),
         "Could not find a proof that the first or the second statement holds."},
        {tactic_error(env, kEpsilon, either + "- Choose a := 3."), "Add the following line to the proof:\n  Case (ε < 2)."},
    };
    int n = 0;
    for (const auto& [got, want] : cases) {
        c.expect(got == want, "expected \"" + want + "\", got \"" + got + "\"");
        n += got == want;
    }
    if (c.ok) c.detail << n << "/8 exact";
}

void signposting(Check& c, const Environment& env) {
    std::string golden = testing::data_file("epsilon.wpd");
    auto broken = check_text(replaced(golden, "Case (ε < 2).", ""), env);
    std::string m = first_message(broken);
    c.expect(m.find("Add the following line to the proof:") != std::string::npos &&
                 m.find("Case (ε < 2).") != std::string::npos,
             "message was \"" + m + "\"");
    c.expect(!broken.units.empty() && !broken.units[0].complete, "proof still complete");
    c.expect(all_green(check_text(golden, env)), "re-inserting did not restore green");
    if (c.ok) c.detail << "line " << broken.diagnostics()[0].span.start_line;
}

void by_clause(Check& c, const Environment& env) {
    Goal g(lang::parse_formula("1 + 1 = 2", {&env, {}}));
    auto with = automation::prove_required(g, g.target, "IVT", env);
    c.expect(with.verdict == automation::Verdict::LemmaUnused,
             std::string("By IVT gave ") + automation::verdict_name(with.verdict));
    std::string by = tactic_error(env, "1 < 2", "By IVT it holds that (1 + 1 = 2).");
    c.expect(by == "Could not find a proof that uses `IVT`.", "By IVT gave \"" + by + "\"");
    std::string plain = tactic_error(env, "1 < 2", "It holds that (1 + 1 = 2).");
    c.expect(plain == "(no error)", "It holds that gave \"" + plain + "\"");
    if (c.ok) c.detail << "lemma-unused vs accepted";
}

void chain_semantics(Check& c, const Environment& env) {
    std::string golden = testing::data_file("epsilon.wpd");
    auto r = check_text(golden, env);
    int closed = 0;
    for (const auto& s : r.sentences)
        if (s.text.find("(&") != std::string::npos && s.status == doc::SentenceStatus::Ok) ++closed;
    c.expect(closed == 2, std::to_string(closed) + " chains closed");

    std::string m = first_message(check_text(replaced(golden, "4 - 1 <", "4 + 1 <"), env));
    c.expect(m == "Could not verify link 2 of the chain: (4 + 1 < 4 - ε/2).", "corrupted link gave \"" + m + "\"");

    std::string mixed = tactic_error(env, "0 < 2", "We conclude that (& 0 < 1 > 2).");
    c.expect(mixed == "A chain of (in)equalities cannot contain both `<` and `>`.", "mixed chain gave \"" + mixed + "\"");
    if (c.ok) c.detail << "2 chains closed, link 2 blamed, mixed rejected";
}

void report(Check& c, const testing::Tally& t, const char* what, double limit = 0) {
    c.expect(t.failures == 0, std::to_string(t.failures) + " failures, first: " + t.first_failure);
    if (limit > 0) c.expect(t.seconds < limit, "took " + std::to_string(t.seconds) + " s");
    if (c.ok) c.detail << t.cases << " " << what << ", 0 failures";
}

void oracle(Check& c) {
    auto t = testing::solver_vs_oracle(200, 18);
    report(c, t, "systems", 30);
    if (c.ok) c.detail << ", " << t.interesting << " infeasible";
}

void shielding(Check& c) {
    const std::string script = "It holds that (∀ x : ℝ, x·x ≥ 0).";
    Environment base = testing::seed_env();
    std::string before = tactic_error(base, "1 < 2", script);
    c.expect(before == "Could not verify this statement.", "empty weak collection gave \"" + before + "\"");
    Environment extended = testing::seed_env();
    doc::extend_library(extended, "#database extra_weak\n#hint sq_nonneg\n#end\n#collection weak += extra_weak\n");
    std::string after = tactic_error(extended, "1 < 2", script);
    c.expect(after == "(no error)", "with sq_nonneg in weak gave \"" + after + "\"");
    if (c.ok) c.detail << "rejected, then accepted via the weak collection";
}

void wrappers(Check& c) {
    auto t = testing::wrapper_scripts(1000, 19);
    c.expect(t.interesting > 0, "no guarded sentence was tried");
    report(c, t, "scripts");
    if (c.ok) c.detail << ", " << t.interesting << " guarded rejections";
}

int run_cli(const std::vector<std::string>& args) {
    std::string cmd = WP_CLI;
    for (const auto& a : args) cmd += " '" + a + "'";
    cmd += " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void pipeline(Check& c, const Environment& env) {
    std::string text = testing::data_file("master3.wpd");
    auto master = doc::parse_document(text);
    auto sheet = doc::extract_sheet(master);

    // Fill the areas of the sheet from the master.
    auto filled = doc::splice_submission(sheet, master);
    c.expect(std::holds_alternative<doc::WaterDoc>(filled), "filling the sheet was reported as tampering");
    if (!c.ok) return;
    auto full = grade::grade(sheet, std::get<doc::WaterDoc>(filled), env);
    c.expect(full.points == 3 && full.max_points == 3, "full submission: " + std::to_string(full.points) + "/3");

    auto a = text.find("Choose a := (7/2).");
    auto b = text.find("```\n</input-area>", a);
    std::string empty = text;
    empty.erase(a, b - a);
    auto partial = grade::grade(sheet, doc::parse_document(empty), env);
    c.expect(partial.points == 2 && partial.exercises.size() == 3 &&
                 partial.exercises[1].verdict == grade::Verdict::Incomplete,
             "emptied area: " + grade::to_text(partial));

    std::string edited = replaced(text, "x > 2 ⇒ x > 1", "x > 2 ⇒ x > 0");
    auto tampered = grade::grade(sheet, doc::parse_document(edited), env);
    bool all_tampered = tampered.tamper.has_value();
    for (const auto& e : tampered.exercises) all_tampered = all_tampered && e.verdict == grade::Verdict::Tampered;
    c.expect(all_tampered, "edited statement: " + grade::to_text(tampered));

    fs::path dir = fs::temp_directory_path() / ("wp_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto write = [&](const char* name, const std::string& body) {
        std::ofstream(dir / name) << body;
        return (dir / name).string();
    };
    std::string lib = std::string(WP_LIBRARY_DIR) + "/analysis.wpl";
    std::string master_path = write("master.wpd", text);
    std::string sheet_path = (dir / "sheet.wpd").string();
    int sheet_rc = run_cli({"sheet", master_path, "-o", sheet_path});
    int ok_rc = run_cli({"grade", "--original", sheet_path, "--submission", master_path, "--library", lib});
    int tamper_rc = run_cli({"grade", "--original", sheet_path, "--submission", write("edited.wpd", edited), "--library", lib});
    fs::remove_all(dir);
    c.expect(sheet_rc == 0 && ok_rc == 0, "cli exit codes " + std::to_string(sheet_rc) + ", " + std::to_string(ok_rc));
    c.expect(tamper_rc == 2, "tampered submission exited with " + std::to_string(tamper_rc));
    if (c.ok) c.detail << "3/3, 2/3 with incomplete, tampered with exit code 2";
}

void round_trip(Check& c) {
    auto s = testing::sentence_round_trip(1000, 12);
    auto d = testing::document_round_trip(100, 13);
    c.expect(s.failures == 0, "sentence: " + s.first_failure);
    c.expect(d.failures == 0, "document: " + d.first_failure);
    if (c.ok) c.detail << s.cases << " sentences, " << d.cases << " documents";
}

}  // namespace

int main() {
    const Environment env = testing::seed_env();
    const std::pair<const char*, std::function<void(Check&)>> criteria[] = {
        {"golden script", [&](Check& c) { golden(c, env); }},
        {"error messages", [&](Check& c) { messages(c, env); }},
        {"mandatory signposting", [&](Check& c) { signposting(c, env); }},
        {"by-clause necessity", [&](Check& c) { by_clause(c, env); }},
        {"chain semantics", [&](Check& c) { chain_semantics(c, env); }},
        {"solver vs oracle", oracle},
        {"shielding", shielding},
        {"wrapper property", wrappers},
        {"grading pipeline", [&](Check& c) { pipeline(c, env); }},
        {"parser round trip", round_trip},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Check c;
        try {
            run(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        std::cout << (c.ok ? "PASS " : "FAIL ") << name << ": " << c.detail.str() << "\n";
        failed += !c.ok;
    }
    std::cout << (10 - failed) << "/10 criteria passed\n";
    return failed == 0 ? 0 : 1;
}
