#pragma once

#include <gmpxx.h>

#include <string>

namespace bnalg {

// Exact arbitrary-precision rational. All vanishing tests run over this type;
// "zero" always means exactly zero.
using Rational = mpq_class;

// "p" when the denominator is 1, otherwise "p/q" in lowest terms.
std::string to_string(const Rational& value);

// Accepts "p" or "p/q" with optional leading sign. Throws ParseError.
Rational rational_from_string(const std::string& text);

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace bnalg
