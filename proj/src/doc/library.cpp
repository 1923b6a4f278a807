#include <cctype>

#include "wp/document.hpp"
#include "wp/kernel.hpp"

namespace wp::doc {

namespace {

std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t p = s.find(sep, start);
        out.push_back(trim(std::string_view(s).substr(start, p == std::string::npos ? std::string::npos : p - start)));
        if (p == std::string::npos) break;
        start = p + 1;
    }
    return out;
}

struct Directive {
    std::string keyword;
    std::string rest;
    int line;
};

std::vector<Directive> directives(std::string_view text) {
    std::vector<Directive> out;
    int number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::string line = trim(text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
        ++number;
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (line.empty() || line.rfind("//", 0) == 0) continue;
        if (line[0] == '#') {
            std::size_t sp = line.find_first_of(" \t");
            out.push_back({line.substr(1, sp == std::string::npos ? std::string::npos : sp - 1),
                           sp == std::string::npos ? "" : trim(std::string_view(line).substr(sp)), number});
        } else if (!out.empty()) {
            out.back().rest += " " + line;
        } else {
            throw LibraryParseError(number, "expected a directive starting with `#`");
        }
    }
    return out;
}

// "name : rest" -> (name, rest)
std::pair<std::string, std::string> named(const std::string& s, int line, const char* what) {
    std::size_t colon = s.find(':');
    if (colon == std::string::npos) throw LibraryParseError(line, std::string("expected `") + what + " : ...`");
    std::string name = trim(std::string_view(s).substr(0, colon));
    if (name.empty() || name.find_first_of(" \t") != std::string::npos)
        throw LibraryParseError(line, std::string("expected a single name before `:` in ") + what);
    return {name, trim(std::string_view(s).substr(colon + 1))};
}

Sort sort(const std::string& text, const Environment& env, int line) {
    Sort s = lang::parse_sort(text);
    if (s.kind == Sort::Kind::Named && !env.has_sort(s.name))
        throw LibraryParseError(line, "unknown type `" + s.name + "`");
    return s;
}

std::vector<Sort> sorts(const std::string& text, const Environment& env, int line) {
    std::vector<Sort> out;
    if (trim(text).empty()) return out;
    for (const auto& piece : split(text, ',')) out.push_back(sort(piece, env, line));
    return out;
}

class Loader {
public:
    explicit Loader(Environment& env) : env_(env) {}

    void run(std::string_view text) {
        for (const auto& d : directives(text)) {
            try {
                directive(d);
            } catch (const LibraryParseError&) {
                throw;
            } catch (const lang::SyntaxError& e) {
                throw LibraryParseError(d.line, e.what());
            } catch (const std::exception& e) {
                throw LibraryParseError(d.line, e.what());
            }
        }
        if (database_) throw LibraryParseError(database_line_, "`#database " + *database_ + "` is never closed");
    }

private:
    void directive(const Directive& d) {
        const std::string& k = d.keyword;
        if (k == "sort") {
            env_.declare_sort(d.rest);
        } else if (k == "function") {
            auto [name, sig] = named(d.rest, d.line, "#function name");
            std::size_t arrow = sig.find("→");
            std::size_t len = 3;
            if (arrow == std::string::npos) {
                arrow = sig.find("->");
                len = 2;
            }
            if (arrow == std::string::npos) throw LibraryParseError(d.line, "expected `→` in function signature");
            env_.add_function({name, sorts(sig.substr(0, arrow), env_, d.line),
                               sort(trim(std::string_view(sig).substr(arrow + len)), env_, d.line)});
        } else if (k == "predicate") {
            std::size_t colon = d.rest.find(':');
            std::string name = trim(std::string_view(d.rest).substr(0, colon));
            std::vector<Sort> args;
            if (colon != std::string::npos) args = sorts(d.rest.substr(colon + 1), env_, d.line);
            env_.add_predicate({name, args});
        } else if (k == "definition") {
            definition(d);
        } else if (k == "notation") {
            notation(d);
        } else if (k == "opaque") {
            env_.set_opaque(d.rest);
        } else if (k == "lemma") {
            auto [label, text] = named(d.rest, d.line, "#lemma label");
            Formula f = lang::parse_formula(text, lang::ParseContext{&env_, {}});
            check_formula(f, Scope{}, env_);
            env_.add_lemma({label, f}, database_);
        } else if (k == "hint") {
            if (!database_) throw LibraryParseError(d.line, "`#hint` must appear inside a `#database` block");
            env_.add_hint(*database_, d.rest);
        } else if (k == "database") {
            if (database_) throw LibraryParseError(d.line, "databases cannot be nested");
            env_.add_database(d.rest);
            database_ = d.rest;
            database_line_ = d.line;
        } else if (k == "end") {
            if (!database_) throw LibraryParseError(d.line, "`#end` without `#database`");
            database_.reset();
        } else if (k == "collection") {
            std::size_t plus = d.rest.find("+=");
            if (plus == std::string::npos) throw LibraryParseError(d.line, "expected `#collection <name> += <database>`");
            std::string which = trim(std::string_view(d.rest).substr(0, plus));
            std::string db = trim(std::string_view(d.rest).substr(plus + 2));
            Collection c;
            if (which == "main")
                c = Collection::Main;
            else if (which == "weak")
                c = Collection::Weak;
            else if (which == "core")
                c = Collection::Core;
            else
                throw LibraryParseError(d.line, "unknown collection `" + which + "` (expected main, weak or core)");
            env_.add_to_collection(c, db);
        } else {
            throw LibraryParseError(d.line, "unknown directive `#" + k + "`");
        }
    }

    // #definition name (x y : ℝ) (S : set) := body
    void definition(const Directive& d) {
        std::size_t assign = d.rest.find(":=");
        if (assign == std::string::npos) throw LibraryParseError(d.line, "expected `:=` in definition");
        std::string head = d.rest.substr(0, assign);
        std::string body = trim(std::string_view(d.rest).substr(assign + 2));
        std::size_t paren = head.find('(');
        Definition def{trim(std::string_view(head).substr(0, paren)), {}, Formula::pred("true"), false};
        Scope scope;
        while (paren != std::string::npos) {
            std::size_t close = head.find(')', paren);
            if (close == std::string::npos) throw LibraryParseError(d.line, "unbalanced parenthesis in parameters");
            auto [names, sort_text] = [&] {
                std::string group = head.substr(paren + 1, close - paren - 1);
                std::size_t colon = group.find(':');
                if (colon == std::string::npos)
                    throw LibraryParseError(d.line, "expected `(name : type)` in parameters");
                return std::pair{trim(std::string_view(group).substr(0, colon)),
                                 trim(std::string_view(group).substr(colon + 1))};
            }();
            for (const auto& n : split(names, ' ')) {
                if (n.empty()) continue;
                if (sort_text == "set") {
                    def.params.push_back({n, Sort::real(), true});
                    scope.sets.push_back(n);
                } else {
                    Sort s = sort(sort_text, env_, d.line);
                    def.params.push_back({n, s, false});
                    scope.vars.push_back({n, s});
                }
            }
            paren = head.find('(', close);
        }
        if (def.name.empty()) throw LibraryParseError(d.line, "definition without a name");
        def.body = lang::parse_formula(body, lang::ParseContext{&env_, scope.sets});
        check_formula(def.body, scope, env_);
        env_.add_definition(std::move(def));
    }

    // #notation "M is the supremum of S" := is_sup
    void notation(const Directive& d) {
        const std::string& r = d.rest;
        std::size_t open = r.find('"');
        std::size_t close = open == std::string::npos ? open : r.find('"', open + 1);
        std::size_t assign = close == std::string::npos ? close : r.find(":=", close);
        if (assign == std::string::npos) throw LibraryParseError(d.line, "expected `#notation \"words\" := name`");
        env_.add_notation(r.substr(open + 1, close - open - 1), trim(std::string_view(r).substr(assign + 2)));
    }

    Environment& env_;
    std::optional<std::string> database_;
    int database_line_ = 0;
};

}  // namespace

void extend_library(Environment& env, std::string_view text) { Loader(env).run(text); }

Environment load_library(std::string_view text) {
    Environment env;
    extend_library(env, text);
    return env;
}

}  // namespace wp::doc
