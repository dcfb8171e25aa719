#pragma once

#include <string>

#include "isored/ratfun.hpp"

namespace isored {

// Weight-expression grammar: integers, rational literals a/b, complex values
// built from the imaginary unit i (both bare and glued to a number as in 2i),
// the spectral variable l, the operators + - * / ^ with nonnegative integer
// exponents, and parentheses. Whitespace is insignificant. The parser
// evaluates directly in the rational function field, so "1/(l-1) + 1/(l-1)"
// comes back as the canonical element 2/(l-1).
//
// Raises ParseError (with position and expected tokens) on syntax errors;
// field errors such as division by the zero element propagate unchanged.
RationalFunction parse_weight(const std::string& expr);

// Canonical serialization, the inverse of parse_weight on canonical elements:
// descending powers, numerator and denominator separated by a slash when the
// denominator is not 1, multi-term sides parenthesized. Examples: "l/(l-1)",
// "1/(l-1)", "(2*l-1)/(l^2-l)", "l+1", "-2".
std::string format_weight(const RationalFunction& w);

// Descending-power rendering of one polynomial ("0" for the zero polynomial).
std::string format_polynomial(const Polynomial& p);

} // namespace isored
