#pragma once

#include <string>

#include "wp/environment.hpp"
#include "wp/syntax.hpp"

namespace wp {

// Canonical surface syntax; parses back to an equal tree. With an environment,
// definitions that have a mixfix notation are printed through it.
std::string to_string(const Term& t);
std::string to_string(const Interval& iv);
std::string to_string(const Formula& f, const Environment* env = nullptr);

}  // namespace wp
