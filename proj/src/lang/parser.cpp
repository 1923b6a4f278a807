#include <algorithm>

#include "parse_range.hpp"
#include "wp/print.hpp"

namespace wp::lang {

namespace detail {

SourceSpan span_of(const std::vector<Token>& t, std::size_t begin, std::size_t end) {
    if (t.empty()) return {};
    if (begin >= t.size()) {
        SourceSpan s = t.back().span;
        return {s.end_line, s.end_col, s.end_line, s.end_col};
    }
    if (end <= begin) {
        SourceSpan s = t[begin].span;
        return {s.start_line, s.start_col, s.start_line, s.start_col};
    }
    end = std::min(end, t.size());
    return {t[begin].span.start_line, t[begin].span.start_col, t[end - 1].span.end_line, t[end - 1].span.end_col};
}

}  // namespace detail

namespace {

bool is_relation(TokenKind k) {
    return k == TokenKind::Eq || k == TokenKind::Lt || k == TokenKind::Le || k == TokenKind::Gt || k == TokenKind::Ge;
}

Rel relation(TokenKind k) {
    switch (k) {
        case TokenKind::Lt: return Rel::Lt;
        case TokenKind::Le: return Rel::Le;
        case TokenKind::Gt: return Rel::Gt;
        case TokenKind::Ge: return Rel::Ge;
        default: return Rel::Eq;
    }
}

// Tokens that can only continue a term, so "(x) + 1" is not a parenthesized formula.
bool continues_term(TokenKind k) {
    return is_relation(k) || k == TokenKind::Plus || k == TokenKind::Minus || k == TokenKind::Times ||
           k == TokenKind::Slash || k == TokenKind::Squared || k == TokenKind::In || k == TokenKind::Colon;
}

class Parser {
public:
    Parser(const std::vector<Token>& t, std::size_t begin, std::size_t end, const ParseContext& ctx)
        : t_(t), pos_(begin), end_(end), ctx_(ctx) {}

    Formula whole_formula() {
        Formula f = formula();
        finish();
        return f;
    }

    Term whole_term() {
        Term x = term();
        finish();
        return x;
    }

    Statement whole_statement() {
        if (at(TokenKind::Amp)) {
            chains::Chain c = chain();
            finish();
            return c;
        }
        return whole_formula();
    }

    Sort whole_sort() {
        Sort s = sort();
        finish();
        return s;
    }

private:
    const std::vector<Token>& t_;
    std::size_t pos_;
    std::size_t end_;
    const ParseContext& ctx_;
    std::optional<SyntaxError> furthest_;
    std::size_t furthest_pos_ = 0;

    bool at_end() const { return pos_ >= end_; }
    const Token* peek(std::size_t k = 0) const { return pos_ + k < end_ ? &t_[pos_ + k] : nullptr; }
    bool at(TokenKind k, std::size_t ahead = 0) const {
        const Token* tok = peek(ahead);
        return tok && tok->kind == k;
    }
    const Token& advance() { return t_[pos_++]; }

    SourceSpan here() const {
        if (!at_end()) return t_[pos_].span;
        if (end_ == 0 || t_.empty()) return {};
        SourceSpan s = t_[std::min(end_, t_.size()) - 1].span;
        return {s.end_line, s.end_col, s.end_line, s.end_col};
    }

    std::string describe() const {
        if (at_end()) return "the end of the expression";
        return "`" + t_[pos_].text + "`";
    }

    [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected = {}) {
        throw SyntaxError(msg, here(), std::move(expected));
    }

    void expect(TokenKind k, const char* shown) {
        if (!at(k)) fail(std::string("Expected `") + shown + "` but found " + describe() + ".", {shown});
        advance();
    }

    void finish() {
        if (!at_end()) fail("Unexpected " + describe() + ".");
    }

    void remember(const SyntaxError& e, std::size_t at) {
        if (!furthest_ || at >= furthest_pos_) {
            furthest_ = e;
            furthest_pos_ = at;
        }
    }

    // -- formulas --------------------------------------------------------

    Formula formula() {
        if (at(TokenKind::Forall) || at(TokenKind::Exists)) return quantifier();
        return iff();
    }

    Formula quantifier() {
        bool universal = advance().kind == TokenKind::Forall;
        std::vector<std::string> names;
        do {
            if (!names.empty()) advance();
            if (!at(TokenKind::Ident)) fail("Expected a variable name but found " + describe() + ".", {"name"});
            names.push_back(advance().text);
        } while (at(TokenKind::Comma));
        expect(TokenKind::Colon, ":");
        Sort s = sort();
        expect(TokenKind::Comma, ",");
        Formula body = formula();
        for (auto it = names.rbegin(); it != names.rend(); ++it)
            body = universal ? Formula::forall(*it, s, body) : Formula::exists(*it, s, body);
        return body;
    }

    Formula iff() {
        Formula l = implication();
        if (!at(TokenKind::Iff)) return l;
        advance();
        Formula r = implication();
        if (at(TokenKind::Iff)) fail("`⇔` does not associate; add parentheses.");
        return Formula::iff(l, r);
    }

    Formula implication() {
        Formula l = disjunction();
        if (!at(TokenKind::Implies)) return l;
        advance();
        return Formula::implies(l, implication());
    }

    Formula disjunction() {
        Formula l = conjunction();
        if (!at(TokenKind::Or)) return l;
        advance();
        return Formula::disj(l, disjunction());
    }

    Formula conjunction() {
        Formula l = negation();
        if (!at(TokenKind::And)) return l;
        advance();
        return Formula::conj(l, conjunction());
    }

    Formula negation() {
        if (at(TokenKind::Not)) {
            advance();
            return Formula::negation(negation());
        }
        return primary();
    }

    Formula primary() {
        if (at(TokenKind::Forall) || at(TokenKind::Exists)) return quantifier();
        if (at(TokenKind::LParen)) {
            std::size_t save = pos_;
            try {
                advance();
                Formula f = formula();
                expect(TokenKind::RParen, ")");
                if (!(peek() && continues_term(peek()->kind))) return f;
            } catch (const SyntaxError& e) {
                remember(e, pos_);
            }
            pos_ = save;
        }
        try {
            return atomic();
        } catch (const SyntaxError& e) {
            if (furthest_ && furthest_pos_ > pos_) throw *furthest_;
            throw;
        }
    }

    const Environment* env() const { return ctx_.env; }

    bool is_set_name(const std::string& n) const {
        return std::find(ctx_.sets.begin(), ctx_.sets.end(), n) != ctx_.sets.end();
    }

    DefArg def_arg(const Param& p) {
        if (p.is_set) {
            if (at(TokenKind::LBracket) || at(TokenKind::LParen)) return interval();
            if (at(TokenKind::Ident)) return Term::var(advance().text);
            fail("Expected an interval but found " + describe() + ".", {"interval"});
        }
        return term();
    }

    std::optional<Formula> notation() {
        if (!env()) return std::nullopt;
        std::vector<const Notation*> candidates;
        for (const auto& n : env()->notations())
            if (n.pieces.size() > 1 || (n.pieces.size() == 1 && !n.pieces[0].is_slot)) candidates.push_back(&n);
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const Notation* a, const Notation* b) { return a->pieces.size() > b->pieces.size(); });
        for (const Notation* n : candidates) {
            const Definition* def = env()->definition(n->definition);
            if (!def) continue;
            bool mixfix = std::any_of(n->pieces.begin(), n->pieces.end(), [](const auto& p) { return p.is_slot; });
            if (!mixfix) continue;
            std::size_t save = pos_;
            try {
                std::vector<std::optional<DefArg>> args(def->params.size());
                bool ok = true;
                for (const auto& piece : n->pieces) {
                    if (piece.is_slot) {
                        args.at(piece.param) = def_arg(def->params.at(piece.param));
                    } else {
                        const Token* tok = peek();
                        if (!tok || tok->text != piece.word) {
                            ok = false;
                            break;
                        }
                        advance();
                    }
                }
                if (ok && std::all_of(args.begin(), args.end(), [](const auto& a) { return a.has_value(); })) {
                    std::vector<DefArg> out;
                    for (auto& a : args) out.push_back(*a);
                    return Formula::def_app(def->name, std::move(out));
                }
            } catch (const SyntaxError&) {
            }
            pos_ = save;
        }
        return std::nullopt;
    }

    Formula atomic() {
        if (auto f = notation()) return *f;
        if (at(TokenKind::Ident) && env()) {
            const std::string& name = peek()->text;
            if (const PredicateSymbol* p = env()->predicate(name)) {
                advance();
                std::vector<Term> args;
                if (at(TokenKind::LParen)) {
                    advance();
                    do {
                        if (!args.empty()) advance();
                        args.push_back(term());
                    } while (at(TokenKind::Comma));
                    expect(TokenKind::RParen, ")");
                } else if (!p->arg_sorts.empty()) {
                    fail("The predicate `" + name + "` needs arguments.");
                }
                return Formula::pred(name, std::move(args));
            }
            if (const Definition* def = env()->definition(name); def && at(TokenKind::LParen, 1)) {
                advance();
                advance();
                std::vector<DefArg> args;
                for (std::size_t i = 0; i < def->params.size(); ++i) {
                    if (i) expect(TokenKind::Comma, ",");
                    args.push_back(def_arg(def->params[i]));
                }
                expect(TokenKind::RParen, ")");
                return Formula::def_app(name, std::move(args));
            }
        }
        Term lhs = term();
        if (peek() && is_relation(peek()->kind)) {
            Rel r = relation(advance().kind);
            Term rhs = term();
            if (peek() && is_relation(peek()->kind))
                fail("A chain of (in)equalities must start with `&`, as in (& a < b < c).", {"&"});
            return Formula::atom(r, lhs, rhs);
        }
        if (at(TokenKind::In) || at(TokenKind::Colon)) {
            advance();
            if (at(TokenKind::LBracket) || at(TokenKind::LParen)) return Formula::in_interval(lhs, interval());
            if (at(TokenKind::Ident) && is_set_name(peek()->text)) return Formula::in_set(lhs, advance().text);
            fail("Expected an interval such as [0,1) but found " + describe() + ".", {"interval"});
        }
        fail("Expected a relation (=, <, ≤, >, ≥) or `∈` after `" + to_string(lhs) + "` but found " + describe() + ".",
             {"=", "<", "≤", ">", "≥", "∈"});
    }

    Interval interval() {
        Interval iv{Term::lit(0), Term::lit(0)};
        if (at(TokenKind::LBracket))
            iv.lo_closed = true;
        else if (at(TokenKind::LParen))
            iv.lo_closed = false;
        else
            fail("Expected an interval but found " + describe() + ".", {"[", "("});
        advance();
        iv.lo = term();
        expect(TokenKind::Comma, ",");
        iv.hi = term();
        if (at(TokenKind::RBracket))
            iv.hi_closed = true;
        else if (at(TokenKind::RParen))
            iv.hi_closed = false;
        else
            fail("Expected `]` or `)` to close the interval but found " + describe() + ".", {"]", ")"});
        advance();
        return iv;
    }

    chains::Chain chain() {
        expect(TokenKind::Amp, "&");
        chains::Chain c{term(), {}};
        while (peek() && is_relation(peek()->kind)) {
            Rel r = relation(advance().kind);
            c.links.push_back({r, term()});
        }
        if (c.links.empty()) fail("A chain needs at least one relation, as in (& a < b).", {"<"});
        return c;
    }

    // -- sorts and terms -------------------------------------------------

    Sort sort() {
        if (at(TokenKind::SortReal)) return advance(), Sort::real();
        if (at(TokenKind::SortInt)) return advance(), Sort::integer();
        if (at(TokenKind::SortNat)) return advance(), Sort::nat();
        if (at(TokenKind::Ident)) {
            std::string n = advance().text;
            return n == "Prop" ? Sort::prop() : Sort::named(n);
        }
        fail("Expected a type such as ℝ but found " + describe() + ".", {"ℝ", "ℤ", "ℕ"});
    }

    Term term() {
        Term l = product();
        while (at(TokenKind::Plus) || at(TokenKind::Minus)) {
            bool plus = advance().kind == TokenKind::Plus;
            Term r = product();
            l = plus ? Term::add(l, r) : Term::sub(l, r);
        }
        return l;
    }

    Term product() {
        Term l = unary();
        while (at(TokenKind::Times) || at(TokenKind::Slash)) {
            bool times = at(TokenKind::Times);
            SourceSpan op = advance().span;
            Term r = unary();
            if (times) {
                l = Term::mul(l, r);
            } else {
                if (!r.is(TermKind::Lit) || r.value().is_zero())
                    throw SyntaxError("Only division by a nonzero number is supported, as in ε/2.", op);
                l = Term::div(l, r);
            }
        }
        return l;
    }

    Term unary() {
        if (!at(TokenKind::Minus)) return postfix();
        advance();
        if (at(TokenKind::Number) && !at(TokenKind::Squared, 1)) {
            Term lit = postfix();
            return Term::lit(-lit.value());
        }
        return Term::neg(unary());
    }

    Term postfix() {
        Term a = atom();
        while (at(TokenKind::Squared)) {
            advance();
            a = Term::mul(a, a);
        }
        return a;
    }

    Term atom() {
        if (at(TokenKind::Number)) return Term::lit(advance().value);
        if (at(TokenKind::Ident)) {
            std::string name = advance().text;
            if (at(TokenKind::LParen)) {
                advance();
                std::vector<Term> args;
                do {
                    if (!args.empty()) advance();
                    args.push_back(term());
                } while (at(TokenKind::Comma));
                expect(TokenKind::RParen, ")");
                return Term::app(name, std::move(args));
            }
            return Term::var(name);
        }
        if (at(TokenKind::LParen)) {
            advance();
            Term x = term();
            expect(TokenKind::RParen, ")");
            return x;
        }
        if (at(TokenKind::Keyword))
            fail("`" + peek()->text + "` is a reserved word and cannot be used as a name.", {"term"});
        fail("Expected a term but found " + describe() + ".", {"term"});
    }
};

}  // namespace

namespace detail {

Formula formula(const std::vector<Token>& t, std::size_t begin, std::size_t end, const ParseContext& ctx) {
    if (begin >= end) throw SyntaxError("Expected a formula.", span_of(t, begin, end), {"formula"});
    return Parser(t, begin, end, ctx).whole_formula();
}

Term term(const std::vector<Token>& t, std::size_t begin, std::size_t end, const ParseContext& ctx) {
    if (begin >= end) throw SyntaxError("Expected a term.", span_of(t, begin, end), {"term"});
    return Parser(t, begin, end, ctx).whole_term();
}

Statement statement(const std::vector<Token>& t, std::size_t begin, std::size_t end, const ParseContext& ctx) {
    if (begin >= end) throw SyntaxError("Expected a formula.", span_of(t, begin, end), {"formula"});
    return Parser(t, begin, end, ctx).whole_statement();
}

Sort sort(const std::vector<Token>& t, std::size_t begin, std::size_t end) {
    ParseContext ctx;
    if (begin >= end) throw SyntaxError("Expected a type.", span_of(t, begin, end), {"type"});
    return Parser(t, begin, end, ctx).whole_sort();
}

}  // namespace detail

Formula parse_formula(const std::vector<Token>& tokens, const ParseContext& ctx) {
    return detail::formula(tokens, 0, tokens.size(), ctx);
}

Formula parse_formula(std::string_view text, const ParseContext& ctx) { return parse_formula(tokenize(text), ctx); }

Term parse_term(std::string_view text, const ParseContext& ctx) {
    auto toks = tokenize(text);
    return detail::term(toks, 0, toks.size(), ctx);
}

Statement parse_statement(const std::vector<Token>& tokens, const ParseContext& ctx) {
    return detail::statement(tokens, 0, tokens.size(), ctx);
}

Sort parse_sort(std::string_view text) {
    auto toks = tokenize(text);
    return detail::sort(toks, 0, toks.size());
}

}  // namespace wp::lang
