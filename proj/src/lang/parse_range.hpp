#pragma once

#include <cstddef>
#include <vector>

#include "wp/lang.hpp"

namespace wp::lang::detail {

// Parse exactly tokens[begin, end); throws SyntaxError.
Formula formula(const std::vector<Token>& t, std::size_t begin, std::size_t end, const ParseContext& ctx);
Term term(const std::vector<Token>& t, std::size_t begin, std::size_t end, const ParseContext& ctx);
Statement statement(const std::vector<Token>& t, std::size_t begin, std::size_t end, const ParseContext& ctx);
Sort sort(const std::vector<Token>& t, std::size_t begin, std::size_t end);

SourceSpan span_of(const std::vector<Token>& t, std::size_t begin, std::size_t end);

}  // namespace wp::lang::detail
