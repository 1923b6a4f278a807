#pragma once

#include <random>
#include <string>
#include <vector>

#include "wp/document.hpp"
#include "wp/lang.hpp"

namespace wp::testing {

std::string read_file(const std::string& path);
std::string data_file(const std::string& name);
std::string seed_library_text();
Environment seed_env();

// Environment with the seed library plus a predicate P : ℝ, used by generators.
Environment generator_env();

bool same_goal(const Goal& a, const Goal& b);
bool same_state(const ProofState& a, const ProofState& b);

class Gen {
public:
    explicit Gen(unsigned seed) : rng_(seed) {}

    int uniform(int lo, int hi);
    bool coin(double p = 0.5);
    template <class T>
    const T& pick(const std::vector<T>& v) { return v[static_cast<std::size_t>(uniform(0, int(v.size()) - 1))]; }

    // Non-negative integer literals only, so printing stays canonical.
    Term term(int depth, bool linear = false);
    Formula formula(int depth);
    chains::Chain chain();
    lang::Sentence sentence();
    doc::WaterDoc document();

    // Random linear (in)equality between terms over x, y, z, w.
    Formula linear_atom();

    std::mt19937& rng() { return rng_; }

private:
    Term leaf();
    Sort sort();
    std::string name();
    Interval interval();
    std::string code_text();
    std::string text_lines();

    std::mt19937 rng_;
    std::vector<std::string> bound_;
};

}  // namespace wp::testing
