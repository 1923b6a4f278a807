#include <cstdint>

#include "wp/lang.hpp"

namespace wp::lang {

const char* token_kind_name(TokenKind k) {
    switch (k) {
        case TokenKind::Keyword: return "Keyword";
        case TokenKind::Ident: return "Ident";
        case TokenKind::Number: return "Number";
        case TokenKind::SortReal: return "SortReal";
        case TokenKind::SortInt: return "SortInt";
        case TokenKind::SortNat: return "SortNat";
        case TokenKind::Forall: return "Forall";
        case TokenKind::Exists: return "Exists";
        case TokenKind::And: return "And";
        case TokenKind::Or: return "Or";
        case TokenKind::Implies: return "Implies";
        case TokenKind::Iff: return "Iff";
        case TokenKind::Not: return "Not";
        case TokenKind::Eq: return "Eq";
        case TokenKind::Lt: return "Lt";
        case TokenKind::Le: return "Le";
        case TokenKind::Gt: return "Gt";
        case TokenKind::Ge: return "Ge";
        case TokenKind::In: return "In";
        case TokenKind::Colon: return "Colon";
        case TokenKind::Assign: return "Assign";
        case TokenKind::Comma: return "Comma";
        case TokenKind::Period: return "Period";
        case TokenKind::LParen: return "LParen";
        case TokenKind::RParen: return "RParen";
        case TokenKind::LBracket: return "LBracket";
        case TokenKind::RBracket: return "RBracket";
        case TokenKind::Plus: return "Plus";
        case TokenKind::Minus: return "Minus";
        case TokenKind::Times: return "Times";
        case TokenKind::Slash: return "Slash";
        case TokenKind::Squared: return "Squared";
        case TokenKind::Amp: return "Amp";
        case TokenKind::Error: return "Error";
    }
    return "?";
}

namespace {

struct Char {
    char32_t cp;
    std::size_t offset;
    std::size_t size;
};

std::vector<Char> decode(std::string_view s) {
    std::vector<Char> out;
    std::size_t i = 0;
    while (i < s.size()) {
        auto b = static_cast<unsigned char>(s[i]);
        char32_t cp = 0xFFFD;
        std::size_t n = 1;
        if (b < 0x80) {
            cp = b;
        } else if ((b >> 5) == 0x6) {
            n = 2;
        } else if ((b >> 4) == 0xE) {
            n = 3;
        } else if ((b >> 3) == 0x1E) {
            n = 4;
        }
        if (n > 1) {
            if (i + n > s.size()) {
                n = 1;
            } else {
                cp = b & (0xFF >> (n + 1));
                bool ok = true;
                for (std::size_t k = 1; k < n; ++k) {
                    auto c = static_cast<unsigned char>(s[i + k]);
                    if ((c >> 6) != 0x2) ok = false;
                    cp = (cp << 6) | (c & 0x3F);
                }
                if (!ok) {
                    cp = 0xFFFD;
                    n = 1;
                }
            }
        }
        out.push_back({cp, i, n});
        i += n;
    }
    return out;
}

bool is_space(char32_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == 0xA0; }
bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }

bool is_letter(char32_t c) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') return true;
    if (c >= 0xC0 && c <= 0x24F && c != 0xD7 && c != 0xF7) return true;
    if (c >= 0x391 && c <= 0x3C9 && c != 0x3A2) return true;
    if (c == 0x3D1 || c == 0x3D5 || c == 0x3F5) return true;  // ϑ ϕ ϵ
    if (c == 0x2102 || c == 0x211A || c == 0x2119 || c == 0x2111) return true;  // ℂ ℚ ℙ ℑ
    return false;
}

bool is_ident_continue(char32_t c) {
    return is_letter(c) || is_digit(c) || c == '\'' || c == 0x2032 || c == 0x2033 || c == 0x2034 ||
           (c >= 0x2080 && c <= 0x2089);
}

struct Lexer {
    std::string_view src;
    std::vector<Char> chars;
    std::size_t pos = 0;
    int line;
    int col;
    std::vector<Token> out;

    Lexer(std::string_view s, Position start) : src(s), chars(decode(s)), line(start.line), col(start.col) {}

    char32_t peek(std::size_t k = 0) const { return pos + k < chars.size() ? chars[pos + k].cp : 0; }
    bool at_end() const { return pos >= chars.size(); }

    void advance() {
        if (chars[pos].cp == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    std::string text(std::size_t from, std::size_t to) const {
        std::size_t a = from < chars.size() ? chars[from].offset : src.size();
        std::size_t b = to < chars.size() ? chars[to].offset : src.size();
        return std::string(src.substr(a, b - a));
    }

    void emit(TokenKind k, std::size_t from, int l, int c, bool spaced, std::string t = {}) {
        Token tok;
        tok.kind = k;
        tok.text = t.empty() ? text(from, pos) : std::move(t);
        tok.span = SourceSpan{l, c, line, col};
        tok.spaced_before = spaced;
        tok.begin = from < chars.size() ? chars[from].offset : src.size();
        tok.end = pos < chars.size() ? chars[pos].offset : src.size();
        out.push_back(std::move(tok));
    }

    // Returns false for an unterminated comment.
    bool skip_comment() {
        int depth = 0;
        while (!at_end()) {
            if (peek() == '(' && peek(1) == '*') {
                ++depth;
                advance();
                advance();
            } else if (peek() == '*' && peek(1) == ')') {
                --depth;
                advance();
                advance();
                if (depth == 0) return true;
            } else {
                advance();
            }
        }
        return false;
    }

    bool word_follows(std::size_t at, std::string_view w) const {
        for (std::size_t k = 0; k < w.size(); ++k)
            if (at + k >= chars.size() || chars[at + k].cp != static_cast<char32_t>(w[k])) return false;
        std::size_t end = at + w.size();
        return end >= chars.size() || !is_ident_continue(chars[end].cp);
    }

    void run(bool strict) {
        const Grammar& g = Grammar::builtin();
        bool spaced = true;
        while (!at_end()) {
            char32_t c = peek();
            if (is_space(c)) {
                advance();
                spaced = true;
                continue;
            }
            if (c == '(' && peek(1) == '*') {
                int l = line, cl = col;
                std::size_t comment_from = pos;
                if (!skip_comment()) {
                    SourceSpan sp{l, cl, line, col};
                    if (strict) throw SyntaxError("Unterminated comment.", sp);
                    Token t{TokenKind::Error, "(*", sp};
                    t.begin = chars[comment_from].offset;
                    t.end = src.size();
                    out.push_back(t);
                }
                spaced = true;
                continue;
            }
            std::size_t from = pos;
            int l = line, cl = col;
            auto two = [&](char32_t a, char32_t b) { return peek() == a && peek(1) == b; };
            auto single = [&](TokenKind k) {
                advance();
                emit(k, from, l, cl, spaced);
            };
            auto multi = [&](TokenKind k, int n) {
                for (int i = 0; i < n; ++i) advance();
                emit(k, from, l, cl, spaced);
            };
            if (is_letter(c)) {
                while (!at_end() && is_ident_continue(peek())) advance();
                std::string w = text(from, pos);
                if (w == "for" && is_space(peek())) {
                    std::size_t save_pos = pos;
                    int save_line = line, save_col = col;
                    while (!at_end() && is_space(peek())) advance();
                    if (word_follows(pos, "all")) {
                        for (int i = 0; i < 3; ++i) advance();
                        emit(TokenKind::Forall, from, l, cl, spaced, "for all");
                        spaced = false;
                        continue;
                    }
                    pos = save_pos;
                    line = save_line;
                    col = save_col;
                }
                if (w == "there" && is_space(peek())) {
                    std::size_t save_pos = pos;
                    int save_line = line, save_col = col;
                    while (!at_end() && is_space(peek())) advance();
                    if (word_follows(pos, "exists")) {
                        for (int i = 0; i < 6; ++i) advance();
                        emit(TokenKind::Exists, from, l, cl, spaced, "there exists");
                        spaced = false;
                        continue;
                    }
                    pos = save_pos;
                    line = save_line;
                    col = save_col;
                }
                TokenKind k = TokenKind::Ident;
                if (w == "forall")
                    k = TokenKind::Forall;
                else if (w == "exists")
                    k = TokenKind::Exists;
                else if (w == "in")
                    k = TokenKind::In;
                else if (g.is_keyword(w))
                    k = TokenKind::Keyword;
                emit(k, from, l, cl, spaced, w);
            } else if (is_digit(c)) {
                while (is_digit(peek())) advance();
                if (peek() == '.' && is_digit(peek(1))) {
                    advance();
                    while (is_digit(peek())) advance();
                }
                emit(TokenKind::Number, from, l, cl, spaced);
                if (auto v = Rational::parse_decimal(out.back().text)) {
                    out.back().value = *v;
                } else {
                    out.back().kind = TokenKind::Error;
                    if (strict) throw SyntaxError("The number `" + out.back().text + "` is too large.", out.back().span);
                }
            } else {
                switch (c) {
                    case 0x211D: single(TokenKind::SortReal); break;
                    case 0x2124: single(TokenKind::SortInt); break;
                    case 0x2115: single(TokenKind::SortNat); break;
                    case 0x2200: single(TokenKind::Forall); break;
                    case 0x2203: single(TokenKind::Exists); break;
                    case 0x2227: single(TokenKind::And); break;
                    case 0x2228: single(TokenKind::Or); break;
                    case 0x21D2:
                    case 0x2192: single(TokenKind::Implies); break;
                    case 0x21D4:
                    case 0x2194: single(TokenKind::Iff); break;
                    case 0xAC:
                    case '~': single(TokenKind::Not); break;
                    case 0x2264: single(TokenKind::Le); break;
                    case 0x2265: single(TokenKind::Ge); break;
                    case 0x2208: single(TokenKind::In); break;
                    case 0xB7:
                    case 0x22C5:
                    case '*': single(TokenKind::Times); break;
                    case 0x2212:
                    case '-': single(TokenKind::Minus); break;
                    case 0xB2: single(TokenKind::Squared); break;
                    case '+': single(TokenKind::Plus); break;
                    case '&': single(TokenKind::Amp); break;
                    case ',': single(TokenKind::Comma); break;
                    case '(': single(TokenKind::LParen); break;
                    case ')': single(TokenKind::RParen); break;
                    case '[': single(TokenKind::LBracket); break;
                    case ']': single(TokenKind::RBracket); break;
                    case '.': {
                        advance();
                        emit(TokenKind::Period, from, l, cl, spaced);
                        out.back().terminal = at_end() || is_space(peek());
                        break;
                    }
                    case '/':
                        if (two('/', '\\'))
                            multi(TokenKind::And, 2);
                        else
                            single(TokenKind::Slash);
                        break;
                    case '\\':
                        if (two('\\', '/')) {
                            multi(TokenKind::Or, 2);
                        } else {
                            advance();
                            emit(TokenKind::Error, from, l, cl, spaced);
                            if (strict) throw UnknownCharacter("Unknown character `\\`.", out.back().span);
                        }
                        break;
                    case '<':
                        if (two('<', '=') && peek(2) == '>')
                            multi(TokenKind::Iff, 3);
                        else if (two('<', '='))
                            multi(TokenKind::Le, 2);
                        else
                            single(TokenKind::Lt);
                        break;
                    case '>':
                        if (two('>', '='))
                            multi(TokenKind::Ge, 2);
                        else
                            single(TokenKind::Gt);
                        break;
                    case '=':
                        if (two('=', '>'))
                            multi(TokenKind::Implies, 2);
                        else
                            single(TokenKind::Eq);
                        break;
                    case ':':
                        if (two(':', '='))
                            multi(TokenKind::Assign, 2);
                        else
                            single(TokenKind::Colon);
                        break;
                    default: {
                        advance();
                        emit(TokenKind::Error, from, l, cl, spaced);
                        if (strict)
                            throw UnknownCharacter("Unknown character `" + out.back().text + "`.", out.back().span);
                    }
                }
            }
            spaced = false;
        }
    }
};

}  // namespace

std::vector<Token> tokenize(std::string_view text, Position start) {
    Lexer lx(text, start);
    lx.run(true);
    return std::move(lx.out);
}

std::vector<Token> lex(std::string_view text, Position start) {
    Lexer lx(text, start);
    lx.run(false);
    return std::move(lx.out);
}

}  // namespace wp::lang
