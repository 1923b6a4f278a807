#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wp/chains.hpp"
#include "wp/environment.hpp"
#include "wp/syntax.hpp"

namespace wp::lang {

// 1-based; columns count Unicode scalar values, end column exclusive.
struct SourceSpan {
    int start_line = 1;
    int start_col = 1;
    int end_line = 1;
    int end_col = 1;

    bool operator==(const SourceSpan&) const = default;
};

struct Position {
    int line = 1;
    int col = 1;
};

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(std::string message, SourceSpan span, std::vector<std::string> expected = {},
                std::optional<std::string> hint = std::nullopt)
        : std::runtime_error(std::move(message)), span(span), expected(std::move(expected)), hint(std::move(hint)) {}

    SourceSpan span;
    std::vector<std::string> expected;
    std::optional<std::string> hint;  // suggested sentence form
};

class UnknownCharacter : public SyntaxError {
public:
    using SyntaxError::SyntaxError;
};

// ---------------------------------------------------------------------------
// Tokens

enum class TokenKind {
    Keyword,  // word of the sentence grammar: Take, Assume, that, ...
    Ident,
    Number,
    SortReal,
    SortInt,
    SortNat,
    Forall,
    Exists,
    And,
    Or,
    Implies,
    Iff,
    Not,
    Eq,
    Lt,
    Le,
    Gt,
    Ge,
    In,
    Colon,
    Assign,
    Comma,
    Period,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Plus,
    Minus,
    Times,
    Slash,
    Squared,
    Amp,
    Error,  // only produced by lex(); carries the offending character
};

const char* token_kind_name(TokenKind k);

struct Token {
    TokenKind kind;
    std::string text;
    SourceSpan span;
    Rational value;         // Number
    bool terminal = false;  // Period followed by whitespace or end of input
    bool spaced_before = true;
    std::size_t begin = 0;  // byte offsets into the lexed text
    std::size_t end = 0;
};

// Throws UnknownCharacter / SyntaxError (unterminated comment).
std::vector<Token> tokenize(std::string_view text, Position start = {});
// Never throws; bad characters become Error tokens.
std::vector<Token> lex(std::string_view text, Position start = {});

// ---------------------------------------------------------------------------
// Grammar table

struct PatternElement {
    enum class Type { Literal, Formula, Statement, Groups, Name, Term, Ref, Words, Label };
    Type type;
    std::string text;  // literal text
};

struct SentencePattern {
    std::string kind;
    std::string inner;  // ByClause only
    std::string source;
    std::vector<PatternElement> elements;
};

class Grammar {
public:
    static Grammar from_json(std::string_view json);
    // The table compiled into the library (data/grammar_en.json).
    static const Grammar& builtin();

    const std::vector<SentencePattern>& patterns() const { return patterns_; }
    bool is_keyword(const std::string& word) const;
    const std::string& language() const { return language_; }
    int version() const { return version_; }
    // Pattern with slots rendered as "...", e.g. "Assume that (...)."
    static std::string display(const SentencePattern& p);

private:
    std::string language_;
    int version_ = 0;
    std::vector<SentencePattern> patterns_;
    std::vector<std::string> keywords_;
};

// ---------------------------------------------------------------------------
// Formulas

struct ParseContext {
    const Environment* env = nullptr;
    std::vector<std::string> sets;  // set parameters in scope (definition bodies)
};

using Statement = std::variant<Formula, chains::Chain>;

Formula parse_formula(std::string_view text, const ParseContext& ctx = {});
Formula parse_formula(const std::vector<Token>& tokens, const ParseContext& ctx = {});
Term parse_term(std::string_view text, const ParseContext& ctx = {});
Statement parse_statement(const std::vector<Token>& tokens, const ParseContext& ctx = {});
Sort parse_sort(std::string_view text);

// ---------------------------------------------------------------------------
// Sentences

enum class SentenceKind {
    Take,
    AssumeThat,
    Choose,
    ShowBoth,
    EitherOr,
    Case,
    ConcludeThat,
    ItHoldsThat,
    SufficesToShow,
    NeedToShow,
    ByClause,
    ExpandDefinition,
    Help,
    UseInduction,
    BaseCase,
    InductionStep,
    LemmaHeader,
    ProofBegin,
    Qed,
};

const char* sentence_kind_name(SentenceKind k);
std::optional<SentenceKind> sentence_kind_from_name(std::string_view name);

struct TakeGroup {
    std::vector<std::string> names;
    Sort sort;
    bool operator==(const TakeGroup&) const = default;
};

struct Sentence {
    SentenceKind kind = SentenceKind::Help;
    SentenceKind inner = SentenceKind::Help;  // ByClause only
    std::optional<std::string> bullet;
    SourceSpan span;
    std::string text;  // source text of the sentence

    std::vector<TakeGroup> groups;        // Take
    std::vector<Formula> formulas;        // formula slots in order
    std::optional<chains::Chain> chain;   // ConcludeThat given as a chain
    std::string name;                     // Choose / LemmaHeader / UseInduction / ExpandDefinition words
    std::optional<Term> term;             // Choose witness
    std::optional<std::string> label;     // AssumeThat / ItHoldsThat
    std::optional<std::string> reference; // ByClause

    // Kind that determines the semantics: `inner` for ByClause.
    SentenceKind effective_kind() const { return kind == SentenceKind::ByClause ? inner : kind; }
};

struct ParsedSentence {
    std::optional<Sentence> sentence;
    std::optional<SyntaxError> error;
    SourceSpan span;
    std::string text;
};

// Strict: throws the first SyntaxError.
std::vector<Sentence> parse_script(std::string_view text, const Environment* env = nullptr, Position start = {});
// Lenient: every sentence is parsed independently, errors are kept in place.
std::vector<ParsedSentence> parse_script_lenient(std::string_view text, const Environment* env = nullptr,
                                                 Position start = {});
Sentence parse_sentence(std::string_view text, const Environment* env = nullptr);

std::string print_sentence(const Sentence& s, const Environment* env = nullptr);

// Same kind, bullet and payload (formulas up to alpha-equivalence); spans ignored.
bool equivalent(const Sentence& a, const Sentence& b);

}  // namespace wp::lang
