#include "wp/environment.hpp"

#include <algorithm>
#include <sstream>

namespace wp {

const char* collection_name(Collection c) {
    switch (c) {
        case Collection::Main: return "main";
        case Collection::Weak: return "weak";
        case Collection::Core: return "core";
    }
    return "?";
}

void Environment::declare_sort(const std::string& name) {
    if (!has_sort(name)) sorts_.push_back(name);
}

bool Environment::has_sort(const std::string& name) const {
    return std::find(sorts_.begin(), sorts_.end(), name) != sorts_.end();
}

bool Environment::is_symbol(const std::string& name) const {
    return functions_.count(name) || predicates_.count(name) || definition(name) != nullptr;
}

void Environment::add_function(FunctionSymbol fn) {
    if (is_symbol(fn.name)) throw LibraryError("symbol `" + fn.name + "` is already declared");
    auto name = fn.name;
    functions_.emplace(name, std::move(fn));
}

const FunctionSymbol* Environment::function(const std::string& name) const {
    auto it = functions_.find(name);
    return it == functions_.end() ? nullptr : &it->second;
}

void Environment::add_predicate(PredicateSymbol p) {
    if (is_symbol(p.name)) throw LibraryError("symbol `" + p.name + "` is already declared");
    auto name = p.name;
    predicates_.emplace(name, std::move(p));
}

const PredicateSymbol* Environment::predicate(const std::string& name) const {
    auto it = predicates_.find(name);
    return it == predicates_.end() ? nullptr : &it->second;
}

void Environment::add_definition(Definition def) {
    if (is_symbol(def.name)) throw LibraryError("symbol `" + def.name + "` is already declared");
    definitions_.push_back(std::move(def));
}

const Definition* Environment::definition(const std::string& name) const {
    for (const auto& d : definitions_)
        if (d.name == name) return &d;
    return nullptr;
}

void Environment::set_opaque(const std::string& name, bool opaque) {
    for (auto& d : definitions_) {
        if (d.name == name) {
            d.opaque = opaque;
            return;
        }
    }
    throw LibraryError("unknown definition `" + name + "`");
}

void Environment::add_notation(const std::string& words, const std::string& def_name) {
    const Definition* def = definition(def_name);
    if (!def) throw LibraryError("notation for unknown definition `" + def_name + "`");

    std::istringstream in(words);
    std::vector<std::string> parts;
    for (std::string w; in >> w;) parts.push_back(w);
    if (parts.empty()) throw LibraryError("empty notation for `" + def_name + "`");

    Notation n;
    n.definition = def_name;
    std::vector<bool> seen(def->params.size(), false);
    bool has_slot = false;
    for (const auto& w : parts) {
        Notation::Piece piece;
        for (std::size_t i = 0; i < def->params.size(); ++i) {
            if (def->params[i].name == w) {
                piece.is_slot = true;
                piece.param = i;
            }
        }
        if (piece.is_slot) {
            if (seen[piece.param]) throw LibraryError("parameter `" + w + "` occurs twice in notation");
            seen[piece.param] = true;
            has_slot = true;
        } else {
            piece.word = w;
        }
        n.pieces.push_back(std::move(piece));
    }
    if (!has_slot) {
        display_names_[words] = def_name;
        return;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw LibraryError("notation for `" + def_name + "` must mention every parameter");
    for (std::size_t i = 0; i + 1 < n.pieces.size(); ++i)
        if (n.pieces[i].is_slot && n.pieces[i + 1].is_slot)
            throw LibraryError("notation for `" + def_name + "` has adjacent parameters");
    notations_.push_back(std::move(n));
}

std::optional<std::string> Environment::resolve_definition(const std::string& words) const {
    std::istringstream in(words);
    std::string normalized;
    for (std::string w; in >> w;) normalized += (normalized.empty() ? "" : " ") + w;
    auto it = display_names_.find(normalized);
    if (it != display_names_.end()) return it->second;
    if (definition(normalized)) return normalized;
    return std::nullopt;
}

std::string Environment::display_name(const std::string& def_name) const {
    for (const auto& [words, name] : display_names_)
        if (name == def_name) return words;
    return def_name;
}

void Environment::add_lemma(Lemma lemma, const std::optional<std::string>& db) {
    if (this->lemma(lemma.label)) throw LibraryError("lemma `" + lemma.label + "` is already declared");
    if (db) {
        auto it = std::find_if(databases_.begin(), databases_.end(), [&](const auto& d) { return d.name == *db; });
        if (it == databases_.end()) throw LibraryError("unknown hint database `" + *db + "`");
        it->lemmas.push_back(lemma);
    }
    lemmas_.push_back(std::move(lemma));
}

void Environment::add_hint(const std::string& db, const std::string& label) {
    const Lemma* l = lemma(label);
    if (!l) throw LibraryError("unknown lemma `" + label + "`");
    auto it = std::find_if(databases_.begin(), databases_.end(), [&](const auto& d) { return d.name == db; });
    if (it == databases_.end()) throw LibraryError("unknown hint database `" + db + "`");
    for (const auto& h : it->lemmas)
        if (h.label == label) return;
    it->lemmas.push_back(*l);
}

const Lemma* Environment::lemma(const std::string& label) const {
    for (const auto& l : lemmas_)
        if (l.label == label) return &l;
    return nullptr;
}

void Environment::add_database(const std::string& name) {
    if (database(name)) return;
    databases_.push_back(HintDatabase{name, {}});
}

const HintDatabase* Environment::database(const std::string& name) const {
    for (const auto& d : databases_)
        if (d.name == name) return &d;
    return nullptr;
}

void Environment::add_to_collection(Collection c, const std::string& db) {
    if (!database(db)) throw LibraryError("unknown hint database `" + db + "`");
    auto add = [&](std::vector<std::string>& names) {
        if (std::find(names.begin(), names.end(), db) == names.end()) names.push_back(db);
    };
    switch (c) {
        case Collection::Main: add(collections_.main); break;
        case Collection::Weak: add(collections_.weak); break;
        case Collection::Core:
            add(collections_.core);
            add(collections_.main);
            break;
    }
}

std::vector<const Lemma*> Environment::collection_lemmas(Collection c) const {
    std::vector<std::string> names = collections_.core;
    const auto& extra = c == Collection::Weak ? collections_.weak : collections_.main;
    if (c != Collection::Core)
        for (const auto& n : extra)
            if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
    std::vector<const Lemma*> out;
    for (const auto& n : names) {
        const HintDatabase* db = database(n);
        if (!db) continue;
        for (const auto& l : db->lemmas) out.push_back(&l);
    }
    return out;
}

}  // namespace wp
