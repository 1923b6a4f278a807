#pragma once

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wp/environment.hpp"
#include "wp/goal.hpp"
#include "wp/syntax.hpp"

namespace wp {

class SortError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownDefinition : public std::runtime_error {
public:
    explicit UnknownDefinition(std::string n)
        : std::runtime_error("Unknown definition `" + n + "`."), name(std::move(n)) {}
    std::string name;
};

// ---------------------------------------------------------------------------
// Free variables and fresh names

std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const Formula& f);

// base, base′, base″, base‴, base′′′′, ... — first one `taken` rejects.
std::string fresh_name(const std::string& base, const std::function<bool(const std::string&)>& taken);

// ---------------------------------------------------------------------------
// Substitution

struct Substitution {
    std::map<std::string, Term> terms;
    std::map<std::string, Interval> sets;
};

Term substitute(const Term& t, const std::map<std::string, Term>& s);
Term substitute(const Term& t, const std::string& var, const Term& by);
// Capture avoiding; binders are renamed with prime suffixes when needed.
Formula substitute(const Formula& f, const Substitution& s);
Formula substitute(const Formula& f, const std::string& var, const Term& by);

// ---------------------------------------------------------------------------
// Sort checking

struct Scope {
    std::vector<Variable> vars;
    std::vector<std::string> sets;  // set parameters inside definition bodies

    static Scope of(const Goal& g);
    const Variable* find(const std::string& name) const;
};

// Throws SortError.
Sort sort_of(const Term& t, const Scope& scope, const Environment& env);
void check_formula(const Formula& f, const Scope& scope, const Environment& env);

// substitute() that first checks `by` against the sort of `var`.
Formula substitute_checked(const Formula& f, const std::string& var, const Sort& var_sort, const Term& by,
                           const Scope& scope, const Environment& env);

// ---------------------------------------------------------------------------
// Unfolding and conversion

struct Unfold {
    bool every_definition = true;
    std::set<std::string> names;
    bool intervals = true;
    bool skip_opaque = false;

    static Unfold all() { return {}; }
    static Unfold only(std::set<std::string> names) { return {false, std::move(names), false, false}; }
    // What automation sees: intervals and non-opaque definitions.
    static Unfold transparent() { return {true, {}, true, true}; }
};

Formula unfold(const Formula& f, const Environment& env, const Unfold& which = Unfold::all());
// Unfolds only the head constructor (definition or interval) until it is neither.
Formula unfold_head(const Formula& f, const Environment& env);
Formula instantiate_definition(const Definition& def, const std::vector<DefArg>& args);
bool mentions_definition(const Formula& f, const std::string& name);

bool alpha_equal(const Formula& a, const Formula& b);
bool convertible(const Formula& a, const Formula& b, const Environment& env);

// Replaces chosen witnesses (Choose a := ...) by their definitions.
Formula expand_abbreviations(const Formula& f, const Goal& g);
// convertible() modulo the goal's witness definitions.
bool convertible_in(const Goal& g, const Formula& a, const Formula& b, const Environment& env);

}  // namespace wp
