#include <algorithm>
#include <array>

#include "parse_range.hpp"
#include "wp/kernel.hpp"
#include "wp/print.hpp"

namespace wp::lang {

namespace {

struct KindName {
    SentenceKind kind;
    const char* name;
};

constexpr std::array<KindName, 19> kKindNames{{
    {SentenceKind::Take, "Take"},
    {SentenceKind::AssumeThat, "AssumeThat"},
    {SentenceKind::Choose, "Choose"},
    {SentenceKind::ShowBoth, "ShowBoth"},
    {SentenceKind::EitherOr, "EitherOr"},
    {SentenceKind::Case, "Case"},
    {SentenceKind::ConcludeThat, "ConcludeThat"},
    {SentenceKind::ItHoldsThat, "ItHoldsThat"},
    {SentenceKind::SufficesToShow, "SufficesToShow"},
    {SentenceKind::NeedToShow, "NeedToShow"},
    {SentenceKind::ByClause, "ByClause"},
    {SentenceKind::ExpandDefinition, "ExpandDefinition"},
    {SentenceKind::Help, "Help"},
    {SentenceKind::UseInduction, "UseInduction"},
    {SentenceKind::BaseCase, "BaseCase"},
    {SentenceKind::InductionStep, "InductionStep"},
    {SentenceKind::LemmaHeader, "LemmaHeader"},
    {SentenceKind::ProofBegin, "ProofBegin"},
    {SentenceKind::Qed, "Qed"},
}};

}  // namespace

const char* sentence_kind_name(SentenceKind k) {
    for (const auto& kn : kKindNames)
        if (kn.kind == k) return kn.name;
    return "?";
}

std::optional<SentenceKind> sentence_kind_from_name(std::string_view name) {
    for (const auto& kn : kKindNames)
        if (name == kn.name) return kn.kind;
    return std::nullopt;
}

namespace {

using Tokens = std::vector<Token>;
using ET = PatternElement::Type;

bool is_open(TokenKind k) { return k == TokenKind::LParen || k == TokenKind::LBracket; }
bool is_close(TokenKind k) { return k == TokenKind::RParen || k == TokenKind::RBracket; }

bool literal_matches(const Token& t, const std::string& lit) {
    if (t.text != lit) return false;
    return t.kind != TokenKind::Error && t.kind != TokenKind::Number;
}

// First index in [from, end) at bracket depth 0 whose token is `lit`.
std::optional<std::size_t> find_literal(const Tokens& t, std::size_t from, std::size_t end, const std::string& lit) {
    int depth = 0;
    for (std::size_t i = from; i < end; ++i) {
        if (depth == 0 && literal_matches(t[i], lit)) return i;
        if (is_open(t[i].kind)) ++depth;
        if (is_close(t[i].kind) && depth > 0) --depth;
    }
    return std::nullopt;
}

struct MatchFailure {
    int progress = 0;
    std::optional<SyntaxError> slot_error;
};

std::vector<TakeGroup> parse_groups(const Tokens& t, std::size_t b, std::size_t e, const ParseContext& ctx) {
    std::vector<TakeGroup> groups;
    std::size_t i = b;
    while (true) {
        TakeGroup g;
        do {
            if (!g.names.empty()) ++i;
            if (i >= e || t[i].kind != TokenKind::Ident)
                throw SyntaxError("Expected a variable name.", detail::span_of(t, i, e), {"name"});
            g.names.push_back(t[i].text);
            ++i;
        } while (i < e && t[i].kind == TokenKind::Comma);
        if (i >= e || t[i].kind != TokenKind::Colon)
            throw SyntaxError("Expected `:` followed by a type, as in `Take x : ℝ.`", detail::span_of(t, i, e), {":"});
        ++i;
        std::size_t stop = find_literal(t, i, e, "and").value_or(e);
        if (i < stop && t[i].kind == TokenKind::LParen && t[stop - 1].kind == TokenKind::RParen) {
            // a proposition in type position, e.g. "Take h : (ε > 0)."
            detail::formula(t, i + 1, stop - 1, ctx);
            g.sort = Sort::prop();
        } else {
            g.sort = detail::sort(t, i, stop);
        }
        groups.push_back(std::move(g));
        i = stop;
        if (i >= e) break;
        ++i;  // "and"
    }
    return groups;
}

std::optional<Sentence> match(const SentencePattern& p, const Tokens& t, std::size_t b, std::size_t e,
                              const ParseContext& ctx, MatchFailure& fail) {
    Sentence s;
    s.kind = *sentence_kind_from_name(p.kind);
    if (!p.inner.empty()) s.inner = *sentence_kind_from_name(p.inner);
    std::size_t i = b;
    const auto& els = p.elements;
    for (std::size_t k = 0; k < els.size(); ++k) {
        const PatternElement& el = els[k];
        fail.progress = static_cast<int>(k);
        if (el.type == ET::Literal) {
            if (i >= e || !literal_matches(t[i], el.text)) return std::nullopt;
            ++i;
            continue;
        }
        if (el.type == ET::Label) {
            if (i + 2 < e && t[i].kind == TokenKind::LParen && t[i + 1].kind == TokenKind::Ident &&
                t[i + 2].kind == TokenKind::RParen) {
                s.label = t[i + 1].text;
                i += 3;
            }
            continue;
        }
        if (el.type == ET::Name || el.type == ET::Ref) {
            if (i >= e || t[i].kind != TokenKind::Ident) {
                fail.slot_error = SyntaxError("Expected a name.", detail::span_of(t, i, e), {"name"});
                return std::nullopt;
            }
            (el.type == ET::Name ? s.name : s.reference.emplace()) = t[i].text;
            ++i;
            continue;
        }
        // slots running up to the next literal
        std::string next;
        for (std::size_t j = k + 1; j < els.size(); ++j)
            if (els[j].type == ET::Literal) {
                next = els[j].text;
                break;
            }
        std::size_t stop = e;
        if (!next.empty()) {
            auto found = find_literal(t, i, e, next);
            if (!found) return std::nullopt;
            stop = *found;
        }
        try {
            switch (el.type) {
                case ET::Formula: s.formulas.push_back(detail::formula(t, i, stop, ctx)); break;
                case ET::Statement: {
                    Statement st = detail::statement(t, i, stop, ctx);
                    if (auto* c = std::get_if<chains::Chain>(&st))
                        s.chain = *c;
                    else
                        s.formulas.push_back(std::get<Formula>(st));
                    break;
                }
                case ET::Term: s.term = detail::term(t, i, stop, ctx); break;
                case ET::Groups: s.groups = parse_groups(t, i, stop, ctx); break;
                case ET::Words: {
                    if (i >= stop) throw SyntaxError("Expected a name.", detail::span_of(t, i, stop), {"name"});
                    std::string words;
                    for (std::size_t j = i; j < stop; ++j) {
                        if (t[j].kind != TokenKind::Ident && t[j].kind != TokenKind::Keyword)
                            throw SyntaxError("Expected the name of a definition.", t[j].span, {"name"});
                        if (!words.empty()) words += " ";
                        words += t[j].text;
                    }
                    s.name = words;
                    break;
                }
                default: break;
            }
        } catch (const SyntaxError& err) {
            fail.slot_error = err;
            return std::nullopt;
        }
        i = stop;
    }
    fail.progress = static_cast<int>(els.size());
    if (i != e) return std::nullopt;
    return s;
}

Sentence parse_tokens(const Tokens& t, std::size_t b, std::size_t e, std::string_view source, const Environment* env) {
    SourceSpan span = detail::span_of(t, b, e);
    for (std::size_t i = b; i < e; ++i)
        if (t[i].kind == TokenKind::Error) {
            if (t[i].text == "(*") throw SyntaxError("Unterminated comment.", t[i].span);
            throw UnknownCharacter("Unknown character `" + t[i].text + "`.", t[i].span);
        }
    std::optional<std::string> bullet;
    std::size_t i = b;
    if (i < e && (t[i].text == "-" || t[i].text == "+" || t[i].text == "*")) {
        std::string marker = t[i].text;
        ++i;
        while (i < e && t[i].text == t[b].text && !t[i].spaced_before) marker += t[i++].text;
        bullet = marker;
    }
    ParseContext ctx{env, {}};
    const Grammar& g = Grammar::builtin();
    const SentencePattern* best = nullptr;
    MatchFailure best_fail;
    best_fail.progress = -1;
    for (const auto& p : g.patterns()) {
        MatchFailure fail;
        if (auto s = match(p, t, i, e, ctx, fail)) {
            s->bullet = bullet;
            s->span = span;
            if (!t.empty() && e > b) s->text = std::string(source.substr(t[b].begin, t[e - 1].end - t[b].begin));
            return *s;
        }
        if (fail.progress > best_fail.progress) {
            best_fail = fail;
            best = &p;
        }
    }
    if (best_fail.slot_error) throw *best_fail.slot_error;
    if (best && best_fail.progress > 0) {
        std::string hint = Grammar::display(*best);
        throw SyntaxError("Unrecognized sentence. Did you mean `" + hint + "`?", span, {}, hint);
    }
    throw SyntaxError("Unrecognized sentence.", span);
}

struct Piece {
    std::size_t begin;
    std::size_t end;  // exclusive, includes the terminating period when present
    bool terminated;
};

std::vector<Piece> split(const Tokens& t) {
    std::vector<Piece> out;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (is_open(t[i].kind)) ++depth;
        if (is_close(t[i].kind) && depth > 0) --depth;
        if (t[i].kind == TokenKind::Period && t[i].terminal && depth == 0) {
            out.push_back({start, i + 1, true});
            start = i + 1;
        }
    }
    if (start < t.size()) out.push_back({start, t.size(), false});
    return out;
}

ParsedSentence parse_piece(const Tokens& t, const Piece& piece, std::string_view text, const Environment* env) {
    ParsedSentence ps;
    ps.span = detail::span_of(t, piece.begin, piece.end);
    ps.text = std::string(text.substr(t[piece.begin].begin, t[piece.end - 1].end - t[piece.begin].begin));
    try {
        if (!piece.terminated) {
            for (std::size_t i = piece.begin; i < piece.end; ++i)
                if (t[i].kind == TokenKind::Error) parse_tokens(t, piece.begin, piece.end, text, env);
            SourceSpan s = t[piece.end - 1].span;
            throw SyntaxError("Expected a period at the end of the sentence.",
                              {s.end_line, s.end_col, s.end_line, s.end_col}, {"."});
        }
        ps.sentence = parse_tokens(t, piece.begin, piece.end, text, env);
    } catch (const SyntaxError& e) {
        ps.error = e;
    }
    return ps;
}

// -- printing ---------------------------------------------------------------

std::string join_groups(const std::vector<TakeGroup>& groups) {
    std::string out;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (g) out += " and ";
        for (std::size_t n = 0; n < groups[g].names.size(); ++n) {
            if (n) out += ", ";
            out += groups[g].names[n];
        }
        out += " : ";
        out += groups[g].sort.str();
    }
    return out;
}

std::string witness(const Term& t) {
    std::string s = to_string(t);
    bool simple = t.is(TermKind::Var) || (t.is(TermKind::Lit) && t.value().sign() >= 0 && t.value().decimal());
    return simple ? s : "(" + s + ")";
}

}  // namespace

std::vector<ParsedSentence> parse_script_lenient(std::string_view text, const Environment* env, Position start) {
    Tokens t = lex(text, start);
    std::vector<ParsedSentence> out;
    for (const auto& piece : split(t)) out.push_back(parse_piece(t, piece, text, env));
    return out;
}

std::vector<Sentence> parse_script(std::string_view text, const Environment* env, Position start) {
    std::vector<Sentence> out;
    for (auto& ps : parse_script_lenient(text, env, start)) {
        if (ps.error) throw *ps.error;
        out.push_back(std::move(*ps.sentence));
    }
    return out;
}

Sentence parse_sentence(std::string_view text, const Environment* env) {
    auto all = parse_script(text, env);
    if (all.size() != 1)
        throw SyntaxError("Expected exactly one sentence.", all.empty() ? SourceSpan{} : all[1].span);
    return all.front();
}

std::string print_sentence(const Sentence& s, const Environment* env) {
    const SentencePattern* pattern = nullptr;
    for (const auto& p : Grammar::builtin().patterns()) {
        if (p.kind != sentence_kind_name(s.kind)) continue;
        if (s.kind == SentenceKind::ByClause && p.inner != sentence_kind_name(s.inner)) continue;
        pattern = &p;
        break;
    }
    if (!pattern) return {};
    std::string out;
    if (s.bullet) out += *s.bullet + " ";
    bool after_open = true;
    std::size_t formula_index = 0;
    for (const auto& el : pattern->elements) {
        std::string piece;
        switch (el.type) {
            case ET::Literal: piece = el.text; break;
            case ET::Formula: piece = to_string(s.formulas.at(formula_index++), env); break;
            case ET::Statement:
                piece = s.chain ? chains::to_string(*s.chain) : to_string(s.formulas.at(formula_index++), env);
                break;
            case ET::Groups: piece = join_groups(s.groups); break;
            case ET::Name:
            case ET::Words: piece = s.name; break;
            case ET::Term: piece = witness(*s.term); break;
            case ET::Ref: piece = s.reference.value_or(""); break;
            case ET::Label:
                if (!s.label) continue;
                piece = "(" + *s.label + ")";
                break;
        }
        bool glue = after_open || piece == ")" || piece == ".";
        if (!glue) out += " ";
        out += piece;
        after_open = el.type == ET::Literal && piece == "(";
    }
    return out;
}

bool equivalent(const Sentence& a, const Sentence& b) {
    if (a.kind != b.kind || a.bullet != b.bullet) return false;
    if (a.kind == SentenceKind::ByClause && a.inner != b.inner) return false;
    if (a.groups != b.groups || a.name != b.name || a.label != b.label || a.reference != b.reference) return false;
    if (a.formulas.size() != b.formulas.size()) return false;
    for (std::size_t i = 0; i < a.formulas.size(); ++i)
        if (!alpha_equal(a.formulas[i], b.formulas[i])) return false;
    if (a.chain.has_value() != b.chain.has_value() || (a.chain && !(*a.chain == *b.chain))) return false;
    if (a.term.has_value() != b.term.has_value() || (a.term && !(*a.term == *b.term))) return false;
    return true;
}

}  // namespace wp::lang
