#pragma once

#include <span>
#include <string>
#include <string_view>

#include "pcadyn/poly.hpp"

namespace pcadyn {

/// Parses the polynomial text format: integer or rational constants, the given
/// variable names, binary + - * ^, unary minus, parentheses, and division by a
/// constant ("3/2*x"). Juxtaposition ("2x") is rejected. The arity of the result
/// is vars.size(). Errors carry `line` and a 1-based column offset by
/// `column_offset`.
MultiPoly parse_polynomial(std::string_view text, std::span<const std::string> vars, int line = 1,
                           int column_offset = 0);

/// Convenience overload with default names for `arity`.
MultiPoly parse_polynomial(std::string_view text, int arity);

}  // namespace pcadyn
