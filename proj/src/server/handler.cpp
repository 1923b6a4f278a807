#include <algorithm>
#include <cctype>

#include "wp/document.hpp"
#include "wp/print.hpp"
#include "wp/server.hpp"
#include "wp/version.hpp"

namespace wp::server {

namespace {

struct RpcError {
    int code;
    std::string message;
    std::optional<lang::SourceSpan> span;
};

json span_json(const lang::SourceSpan& s) {
    return {{"startLine", s.start_line}, {"startColumn", s.start_col}, {"endLine", s.end_line}, {"endColumn", s.end_col}};
}

json diagnostic_json(const doc::Diagnostic& d) {
    json j = {{"code", d.code}, {"message", d.message}, {"span", span_json(d.span)}};
    if (d.hint) j["hint"] = *d.hint;
    return j;
}

const json& param(const json& params, const char* name) {
    if (!params.is_object() || !params.contains(name)) throw RpcError{kInvalidParams, std::string("missing parameter `") + name + "`", {}};
    return params[name];
}

std::string string_param(const json& params, const char* name) {
    const json& v = param(params, name);
    if (!v.is_string()) throw RpcError{kInvalidParams, std::string("parameter `") + name + "` must be a string", {}};
    return v.get<std::string>();
}

lang::Position position_param(const json& params) {
    const json& p = param(params, "position");
    if (!p.is_object() || !p.contains("line") || !p.contains("column") || !p["line"].is_number_integer() ||
        !p["column"].is_number_integer())
        throw RpcError{kInvalidParams, "parameter `position` must be {line, column}", {}};
    return {p["line"].get<int>(), p["column"].get<int>()};
}

Environment library(const json& params) {
    std::string text = params.is_object() && params.contains("libraryText") ? string_param(params, "libraryText") : "";
    try {
        return doc::load_library(text);
    } catch (const doc::LibraryParseError& e) {
        throw RpcError{kLibraryError, e.what(), lang::SourceSpan{e.line, 1, e.line, 1}};
    }
}

doc::WaterDoc document(const json& params) {
    try {
        return doc::parse_document(string_param(params, "docText"));
    } catch (const doc::DocumentError& e) {
        throw RpcError{kDocumentError, e.what(), lang::SourceSpan{e.line, 1, e.line, 1}};
    }
}

json rendered_goals(const ProofState& s, const Environment& env) {
    json out = json::array();
    for (const auto& g : s.goals) out.push_back(render_goal(g, &env));
    return out;
}

json check(const json& params) {
    Environment env = library(params);
    auto result = doc::check_document(document(params), env);
    json sentences = json::array();
    for (const auto& s : result.sentences) {
        const auto& state = s.after ? s.after : s.before;
        sentences.push_back({{"span", span_json(s.span)},
                             {"text", s.text},
                             {"status", doc::status_name(s.status)},
                             {"diagnostic", s.diagnostic ? diagnostic_json(*s.diagnostic) : json(nullptr)},
                             {"goalsAfter", state ? rendered_goals(*state, env) : json::array()},
                             {"notes", s.notes}});
    }
    json areas = json::array();
    for (std::size_t i = 0; i < result.areas.size(); ++i) {
        const auto& a = result.areas[i];
        areas.push_back({{"index", i},
                         {"line", a.line},
                         {"lemma", a.unit >= 0 ? json(result.units[a.unit].lemma) : json(nullptr)},
                         {"status", a.green ? "green" : "red"}});
    }
    json units = json::array();
    for (const auto& u : result.units)
        units.push_back({{"lemma", u.lemma},
                         {"complete", u.complete},
                         {"error", u.first_error ? diagnostic_json(*u.first_error) : json(nullptr)}});
    json diagnostics = json::array();
    for (const auto& d : result.diagnostics()) diagnostics.push_back(diagnostic_json(d));
    return {{"sentences", sentences}, {"areas", areas}, {"units", units}, {"diagnostics", diagnostics}};
}

json goals(const json& params) {
    Environment env = library(params);
    auto at = doc::goals_at(doc::check_document(document(params), env), position_param(params));
    json out;
    if (!at.state) {
        out["goalOnly"] = "";
        out["fullContext"] = nullptr;
        out["lemma"] = nullptr;
        return out;
    }
    std::string goal_only;
    for (const auto& g : at.state->goals) {
        if (!goal_only.empty()) goal_only += "\n\n";
        goal_only += render_goal(g, &env);
    }
    out["goalOnly"] = goal_only;
    if (at.state->goals.empty()) {
        out["fullContext"] = nullptr;
    } else {
        const Goal& g = at.state->goals.front();
        json vars = json::array(), hyps = json::array();
        for (const auto& v : g.variables) vars.push_back({{"name", v.name}, {"type", v.sort.str()}});
        for (const auto& h : g.hypotheses)
            hyps.push_back({{"label", h.label}, {"statement", to_string(h.statement, &env)}, {"origin", origin_name(h.origin)}});
        out["fullContext"] = {{"variables", vars}, {"hypotheses", hyps}, {"target", to_string(g.target, &env)},
                              {"wrapped", g.wrapper.has_value()}};
    }
    out["lemma"] = at.lemma ? json(*at.lemma) : json(nullptr);
    return out;
}

json help(const json& params) {
    Environment env = library(params);
    auto at = doc::goals_at(doc::check_document(document(params), env), position_param(params));
    std::string suggestion;
    if (at.state) suggestion = at.state->goals.empty() ? "Qed." : tactics::help_suggestion(at.state->goals.front(), env);
    return {{"suggestion", suggestion}};
}

json expand(const json& params) {
    Environment env = library(params);
    std::string name = string_param(params, "name");
    std::string text = string_param(params, "formula");
    try {
        Formula f = lang::parse_formula(text, lang::ParseContext{&env, {}});
        auto o = tactics::expand_definition(ProofState{}, name, f, tactics::Context{env});
        return {{"expanded", o.notes.at(0)}};
    } catch (const lang::SyntaxError& e) {
        throw RpcError{kCheckError, e.what(), e.span};
    } catch (const tactics::TacticFailure& e) {
        throw RpcError{kCheckError, e.what(), std::nullopt};
    }
}

struct Alias {
    const char* name;
    const char* symbol;
};

constexpr Alias kAliases[] = {
    {"\\forall", "∀"}, {"\\exists", "∃"}, {"\\and", "∧"},    {"\\or", "∨"},     {"\\not", "¬"},
    {"\\implies", "⇒"}, {"\\iff", "⇔"},  {"\\in", "∈"},     {"\\R", "ℝ"},      {"\\N", "ℕ"},
    {"\\Z", "ℤ"},      {"\\le", "≤"},    {"\\ge", "≥"},     {"\\infty", "∞"},  {"\\eps", "ε"},
    {"\\epsilon", "ε"}, {"\\delta", "δ"}, {"\\cdot", "·"},   {"\\to", "→"},     {"\\squared", "²"},
    {"\\alpha", "α"},  {"\\beta", "β"},  {"\\gamma", "γ"},  {"\\lambda", "λ"}, {"\\mu", "μ"},
};

std::string placeholder(lang::PatternElement::Type t) {
    using T = lang::PatternElement::Type;
    switch (t) {
        case T::Formula: return "formula";
        case T::Statement: return "statement";
        case T::Name: return "x";
        case T::Term: return "term";
        case T::Ref: return "lemma";
        case T::Words: return "definition";
        default: return "";
    }
}

// "Take ${1:x} : ${2:ℝ}."
std::string snippet(const lang::SentencePattern& p) {
    using T = lang::PatternElement::Type;
    std::string out;
    int stop = 1;
    std::string prev;
    for (const auto& el : p.elements) {
        std::string piece;
        if (el.type == T::Label) continue;
        if (el.type == T::Literal) {
            piece = el.text;
        } else if (el.type == T::Groups) {
            piece = "${" + std::to_string(stop) + ":x} : ${" + std::to_string(stop + 1) + ":ℝ}";
            stop += 2;
        } else {
            piece = "${" + std::to_string(stop++) + ":" + placeholder(el.type) + "}";
        }
        bool glue = out.empty() || prev == "(" || piece == ")" || piece == ".";
        if (!glue) out += " ";
        out += piece;
        prev = piece;
    }
    return out;
}

bool starts_with_ci(const std::string& s, const std::string& prefix) {
    if (prefix.size() > s.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(s[i])) != std::tolower(static_cast<unsigned char>(prefix[i])))
            return false;
    return true;
}

json complete(const json& params) {
    std::string prefix = string_param(params, "prefix");
    json items = json::array();
    for (const auto& a : kAliases)
        if (starts_with_ci(a.name, prefix) && (!prefix.empty() && prefix[0] == '\\'))
            items.push_back({{"label", a.name}, {"insertText", a.symbol}, {"kind", "symbol"}});
    if (prefix.empty() || prefix[0] != '\\') {
        for (const auto& p : lang::Grammar::builtin().patterns()) {
            std::string label = lang::Grammar::display(p);
            if (starts_with_ci(label, prefix))
                items.push_back({{"label", label}, {"insertText", snippet(p)}, {"kind", "snippet"}});
        }
    }
    return {{"items", items}};
}

json dispatch(const std::string& method, const json& params) {
    if (method == "wp/check") return check(params);
    if (method == "wp/goals") return goals(params);
    if (method == "wp/expand") return expand(params);
    if (method == "wp/help") return help(params);
    if (method == "wp/complete") return complete(params);
    if (method == "wp/version") return {{"spec", kProtocolVersion}, {"checker", kCheckerVersion}};
    throw RpcError{kMethodNotFound, "unknown method `" + method + "`", {}};
}

json error_response(const json& id, const RpcError& e) {
    json err = {{"code", e.code}, {"message", e.message}};
    if (e.span) err["span"] = span_json(*e.span);
    return {{"jsonrpc", "2.0"}, {"id", id}, {"error", err}};
}

}  // namespace

json handle(const json& request) {
    json id = request.is_object() && request.contains("id") ? request["id"] : json(nullptr);
    try {
        if (!request.is_object() || !request.contains("method") || !request["method"].is_string())
            throw RpcError{kInvalidRequest, "invalid request", {}};
        json params = request.contains("params") ? request["params"] : json::object();
        if (!params.is_object()) throw RpcError{kInvalidParams, "`params` must be an object", {}};
        json result = dispatch(request["method"].get<std::string>(), params);
        return {{"jsonrpc", "2.0"}, {"id", id}, {"result", result}};
    } catch (const RpcError& e) {
        return error_response(id, e);
    } catch (const std::exception& e) {
        return error_response(id, RpcError{kCheckError, e.what(), {}});
    }
}

std::string handle_text(const std::string& text) {
    json request;
    try {
        request = json::parse(text);
    } catch (const json::parse_error& e) {
        return error_response(nullptr, RpcError{kParseError, "parse error", {}}).dump();
    }
    return handle(request).dump();
}

}  // namespace wp::server
