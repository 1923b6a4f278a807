#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wp/environment.hpp"
#include "wp/goal.hpp"
#include "wp/lang.hpp"
#include "wp/tactics.hpp"

namespace wp::doc {

// ---------------------------------------------------------------------------
// Mixed documents (.wpd)

enum class BlockKind { Text, Code, InputArea, Hint };

const char* block_kind_name(BlockKind k);

struct Block {
    BlockKind kind = BlockKind::Text;
    std::string text;             // Text: markdown lines, Code: script text (both newline terminated)
    std::string title;            // Hint
    std::vector<Block> children;  // InputArea / Hint
    int line = 1;                 // first content line in the source file

    static Block make_text(std::string t) { return {BlockKind::Text, std::move(t), {}, {}, 1}; }
    static Block make_code(std::string t) { return {BlockKind::Code, std::move(t), {}, {}, 1}; }

    // Structural equality; source lines are ignored.
    bool same(const Block& o) const;
};

struct WaterDoc {
    std::string version;                // "1" from a `#wp 1` header, empty when absent
    std::vector<std::string> preamble;  // `#...` configuration lines following the header
    std::vector<Block> blocks;

    bool same(const WaterDoc& o) const;
};

class DocumentError : public std::runtime_error {
public:
    enum class Kind { UnbalancedMarker, NestedArea };
    DocumentError(Kind kind, int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), kind(kind), line(line) {}
    Kind kind;
    int line;
};

WaterDoc parse_document(std::string_view text);
std::string render_document(const WaterDoc& doc);

// Every input area emptied down to one empty code block.
WaterDoc extract_sheet(const WaterDoc& master);

struct TamperReport {
    std::size_t block = 0;  // first divergent top-level block (0-based)
    std::string reason;
};

// The original with the submission's input areas spliced in, or the place
// where the submission differs outside its input areas.
std::variant<WaterDoc, TamperReport> splice_submission(const WaterDoc& original, const WaterDoc& submission);

// ---------------------------------------------------------------------------
// Course libraries (.wpl)

class LibraryParseError : public std::runtime_error {
public:
    LibraryParseError(int line, const std::string& message)
        : std::runtime_error("library line " + std::to_string(line) + ": " + message), line(line) {}
    int line;
};

Environment load_library(std::string_view text);
// Adds the directives of `text` to an existing environment.
void extend_library(Environment& env, std::string_view text);

// ---------------------------------------------------------------------------
// Checking

struct Diagnostic {
    std::string code;
    std::string message;
    lang::SourceSpan span;
    std::optional<std::string> hint;
};

enum class SentenceStatus { Ok, Error, Skipped };

const char* status_name(SentenceStatus s);

struct SentenceReport {
    lang::SourceSpan span;
    std::string text;
    SentenceStatus status = SentenceStatus::Ok;
    std::optional<Diagnostic> diagnostic;
    std::vector<std::string> notes;
    int unit = -1;                 // lemma unit, -1 before the first lemma
    std::optional<int> area;       // input area index
    std::optional<ProofState> before;
    std::optional<ProofState> after;  // state after the sentence (ok sentences)
};

struct UnitReport {
    std::string lemma;
    lang::SourceSpan span;
    bool complete = false;  // reached Qed without errors
    std::optional<Diagnostic> first_error;
    std::vector<int> areas;
};

struct AreaReport {
    int unit = -1;
    bool green = false;
    int line = 1;
};

struct CheckResult {
    std::vector<SentenceReport> sentences;
    std::vector<UnitReport> units;
    std::vector<AreaReport> areas;

    std::vector<Diagnostic> diagnostics() const;
};

struct CheckOptions {
    automation::Budget budget = {};
    // Wall-clock limit per lemma unit.
    std::optional<std::chrono::milliseconds> unit_timeout;
};

// Each lemma+proof unit is checked from a fresh proof state; earlier lemmas
// are available to later units whether or not their proofs are finished.
CheckResult check_document(const WaterDoc& doc, const Environment& env, const CheckOptions& options = {});

// Goals in effect at a (1-based) position of the document.
struct GoalsAt {
    std::optional<ProofState> state;
    std::optional<std::string> lemma;
};
GoalsAt goals_at(const CheckResult& result, lang::Position pos);

}  // namespace wp::doc
