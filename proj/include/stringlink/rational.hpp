#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace stringlink {

/// Exact arbitrary-precision rational. Always kept in lowest terms by GMP.
using Rational = mpq_class;

/// Renders as "p/q" with q > 0, including integers ("3/1", "0/1").
std::string to_string(const Rational& q);

/// Accepts "p/q" or "p" with optional sign. Throws ParseError.
Rational parse_rational(std::string_view text);

}  // namespace stringlink
