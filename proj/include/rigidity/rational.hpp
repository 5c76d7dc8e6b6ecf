#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rigidity {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p/q" or "int" (optional leading '-'); decimals and exponents are
/// rejected. The result is canonical (reduced, positive denominator).
Rational parse_rational(std::string_view text);

/// Canonical text form: "7/3", "-2", "0".
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

}  // namespace rigidity
