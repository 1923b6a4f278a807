#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wp/syntax.hpp"

namespace wp {

class LibraryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FunctionSymbol {
    std::string name;
    std::vector<Sort> arg_sorts;
    Sort result;
};

struct PredicateSymbol {
    std::string name;
    std::vector<Sort> arg_sorts;
};

// Parameter of a definition. Set parameters range over subsets of `sort`
// and are instantiated with intervals.
struct Param {
    std::string name;
    Sort sort;
    bool is_set = false;
};

struct Definition {
    std::string name;
    std::vector<Param> params;
    Formula body;
    bool opaque = false;  // hidden from automation, still expandable by users
};

// Mixfix notation such as "M is the supremum of S" for is_sup(S, M).
struct Notation {
    struct Piece {
        bool is_slot = false;
        std::string word;          // literal word when !is_slot
        std::size_t param = 0;     // definition parameter index when is_slot
    };
    std::vector<Piece> pieces;
    std::string definition;
};

struct Lemma {
    std::string label;
    Formula statement;
};

struct HintDatabase {
    std::string name;
    std::vector<Lemma> lemmas;
};

enum class Collection { Main, Weak, Core };

const char* collection_name(Collection c);

struct CollectionConfig {
    std::vector<std::string> main;
    std::vector<std::string> weak;
    std::vector<std::string> core;
};

// Everything a script is checked against: declared symbols, definitions and
// their notations, the lemma library and the hint databases.
class Environment {
public:
    void declare_sort(const std::string& name);
    bool has_sort(const std::string& name) const;

    void add_function(FunctionSymbol fn);
    const FunctionSymbol* function(const std::string& name) const;

    void add_predicate(PredicateSymbol p);
    const PredicateSymbol* predicate(const std::string& name) const;

    void add_definition(Definition def);
    const Definition* definition(const std::string& name) const;
    const std::vector<Definition>& definitions() const { return definitions_; }
    void set_opaque(const std::string& name, bool opaque = true);

    // `words` either contain parameter names of the definition (mixfix
    // notation) or are a display name used by "Expand the definition of".
    void add_notation(const std::string& words, const std::string& definition);
    const std::vector<Notation>& notations() const { return notations_; }
    // Display name or internal name -> internal definition name.
    std::optional<std::string> resolve_definition(const std::string& words) const;
    // Display name registered for a definition, or its internal name.
    std::string display_name(const std::string& definition) const;

    // Global lemma library; `database` additionally registers it as a hint.
    void add_lemma(Lemma lemma, const std::optional<std::string>& database = std::nullopt);
    const Lemma* lemma(const std::string& label) const;
    const std::vector<Lemma>& lemmas() const { return lemmas_; }
    // Registers an already declared lemma as a hint.
    void add_hint(const std::string& database, const std::string& label);

    void add_database(const std::string& name);
    const HintDatabase* database(const std::string& name) const;
    const std::vector<HintDatabase>& databases() const { return databases_; }

    void add_to_collection(Collection c, const std::string& database);
    const CollectionConfig& collections() const { return collections_; }
    // Lemmas active for a collection; the core databases are always included.
    std::vector<const Lemma*> collection_lemmas(Collection c) const;

    bool is_symbol(const std::string& name) const;

private:
    std::vector<std::string> sorts_;
    std::map<std::string, FunctionSymbol> functions_;
    std::map<std::string, PredicateSymbol> predicates_;
    std::vector<Definition> definitions_;
    std::vector<Notation> notations_;
    std::map<std::string, std::string> display_names_;
    std::vector<Lemma> lemmas_;
    std::vector<HintDatabase> databases_;
    CollectionConfig collections_;
};

}  // namespace wp
