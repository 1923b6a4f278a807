#include <algorithm>
#include <cctype>
#include <sstream>

#include "json.hpp"
#include "wp/lang.hpp"

namespace wp::lang {

std::string_view embedded_grammar();

namespace {

PatternElement element(const std::string& word) {
    using T = PatternElement::Type;
    if (word == "{formula}") return {T::Formula, {}};
    if (word == "{statement}") return {T::Statement, {}};
    if (word == "{groups}") return {T::Groups, {}};
    if (word == "{name}") return {T::Name, {}};
    if (word == "{term}") return {T::Term, {}};
    if (word == "{ref}") return {T::Ref, {}};
    if (word == "{words}") return {T::Words, {}};
    if (word == "{label?}") return {T::Label, {}};
    if (word.size() > 1 && word.front() == '{') throw std::runtime_error("grammar: unknown slot " + word);
    return {T::Literal, word};
}

bool alphabetic(const std::string& w) {
    return !w.empty() && std::all_of(w.begin(), w.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); });
}

}  // namespace

Grammar Grammar::from_json(std::string_view json) {
    auto doc = nlohmann::json::parse(json);
    Grammar g;
    g.language_ = doc.value("language", "en");
    g.version_ = doc.value("version", 1);
    for (const auto& entry : doc.at("sentences")) {
        SentencePattern p;
        p.kind = entry.at("kind").get<std::string>();
        p.inner = entry.value("inner", "");
        p.source = entry.at("pattern").get<std::string>();
        if (!sentence_kind_from_name(p.kind)) throw std::runtime_error("grammar: unknown sentence kind " + p.kind);
        std::istringstream in(p.source);
        std::string word;
        while (in >> word) {
            p.elements.push_back(element(word));
            if (alphabetic(word) && word != "in" &&
                std::find(g.keywords_.begin(), g.keywords_.end(), word) == g.keywords_.end())
                g.keywords_.push_back(word);
        }
        g.patterns_.push_back(std::move(p));
    }
    return g;
}

const Grammar& Grammar::builtin() {
    static const Grammar g = from_json(embedded_grammar());
    return g;
}

bool Grammar::is_keyword(const std::string& word) const {
    return std::find(keywords_.begin(), keywords_.end(), word) != keywords_.end();
}

std::string Grammar::display(const SentencePattern& p) {
    std::string out;
    bool after_open = false;
    for (const auto& e : p.elements) {
        if (e.type == PatternElement::Type::Label) continue;
        std::string piece = e.type == PatternElement::Type::Literal ? e.text : "...";
        bool glue = after_open || piece == ")" || piece == "." || out.empty();
        if (!glue) out += " ";
        out += piece;
        after_open = piece == "(";
    }
    return out;
}

}  // namespace wp::lang
