#pragma once

#include "cubereg/rational_function.hpp"

#include <map>
#include <string>
#include <string_view>

namespace cubereg {

using ParamTable = std::map<std::string, GaussRational>;

// Grammar: integers, i, t, bound parameter names, + - * / ^ (integer exponent), parentheses.
// The Unicode minus sign is accepted as '-'. Errors carry line and column (1-based).
RationalFunction parse_expression(std::string_view text, const ParamTable& params = {}, bool allow_t = true);

GaussRational parse_constant(std::string_view text, const ParamTable& params = {});
Rational parse_rational(std::string_view text);

}  // namespace cubereg
