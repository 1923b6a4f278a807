#include "wp/chains.hpp"

#include <algorithm>

#include "wp/print.hpp"

namespace wp::chains {

std::vector<Term> Chain::terms() const {
    std::vector<Term> out{base};
    for (const auto& l : links) out.push_back(l.rhs);
    return out;
}

bool ascending(Rel r) { return r == Rel::Eq || r == Rel::Lt || r == Rel::Le; }
bool descending(Rel r) { return r == Rel::Eq || r == Rel::Gt || r == Rel::Ge; }

Validation validate_direction(const Chain& c) {
    Validation v;
    const Link* up = nullptr;
    const Link* down = nullptr;
    for (const auto& l : c.links) {
        if (l.rel == Rel::Eq) continue;
        if (ascending(l.rel) && !up) up = &l;
        if (descending(l.rel) && !down) down = &l;
    }
    if (up && down) {
        // report in order of appearance
        bool up_first = std::find_if(c.links.begin(), c.links.end(), [&](const Link& l) { return &l == up; }) <
                        std::find_if(c.links.begin(), c.links.end(), [&](const Link& l) { return &l == down; });
        v.error = ChainError::Direction;
        v.first = up_first ? up->rel : down->rel;
        v.second = up_first ? down->rel : up->rel;
        v.message = std::string("A chain of (in)equalities cannot contain both `") + rel_symbol(*v.first) +
                    "` and `" + rel_symbol(*v.second) + "`.";
    }
    return v;
}

Validation validate(const Chain& c, const Scope& scope, const Environment& env) {
    Validation v = validate_direction(c);
    if (!v.ok()) return v;
    if (c.links.empty()) {
        v.error = ChainError::Sort;
        v.message = "A chain needs at least one link.";
        return v;
    }
    bool only_eq = std::all_of(c.links.begin(), c.links.end(), [](const Link& l) { return l.rel == Rel::Eq; });
    try {
        std::vector<Term> ts = c.terms();
        Sort common = sort_of(ts.front(), scope, env);
        for (std::size_t i = 1; i < ts.size(); ++i) {
            Sort s = sort_of(ts[i], scope, env);
            auto j = join(common, s);
            if (!j)
                throw SortError("The terms `" + to_string(ts[i - 1]) + "` and `" + to_string(ts[i]) +
                                "` in the chain do not have the same type.");
            common = *j;
        }
        if (!only_eq && !common.is_numeric())
            throw SortError("The terms in the chain have type " + common.str() + " and cannot be compared by size.");
    } catch (const SortError& e) {
        v.error = ChainError::Sort;
        v.message = e.what();
    }
    return v;
}

std::vector<Formula> link_statements(const Chain& c) {
    std::vector<Formula> out;
    Term prev = c.base;
    for (const auto& l : c.links) {
        out.push_back(Formula::atom(l.rel, prev, l.rhs));
        prev = l.rhs;
    }
    return out;
}

Formula total_statement(const Chain& c) {
    std::vector<Formula> parts = link_statements(c);
    Formula acc = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;) acc = Formula::conj(parts[i], acc);
    return acc;
}

Formula global_statement(const Chain& c) {
    bool any_up = false, any_down = false, strict = false;
    for (const auto& l : c.links) {
        if (l.rel == Rel::Lt || l.rel == Rel::Le) any_up = true;
        if (l.rel == Rel::Gt || l.rel == Rel::Ge) any_down = true;
        if (l.rel == Rel::Lt || l.rel == Rel::Gt) strict = true;
    }
    Rel r = Rel::Eq;
    if (any_up) r = strict ? Rel::Lt : Rel::Le;
    if (any_down) r = strict ? Rel::Gt : Rel::Ge;
    return Formula::atom(r, c.base, c.links.back().rhs);
}

Chain reversed(const Chain& c) {
    std::vector<Term> ts = c.terms();
    Chain out{ts.back(), {}};
    for (std::size_t i = c.links.size(); i-- > 0;) out.links.push_back(Link{flip(c.links[i].rel), ts[i]});
    return out;
}

std::string to_string(const Chain& c) {
    std::string out = "& " + wp::to_string(c.base);
    for (const auto& l : c.links) {
        out += " ";
        out += rel_symbol(l.rel);
        out += " ";
        out += wp::to_string(l.rhs);
    }
    return out;
}

}  // namespace wp::chains
