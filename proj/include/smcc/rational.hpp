#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace smcc {

/// Exact rational scalar used throughout the LP core. Backed by GMP and kept
/// canonical (lowest terms, positive denominator); every comparison in the
/// solver and the rounding engine is exact, never tolerance-based.
using Rational = mpq_class;

/// num/den as a canonical Rational. The raw two-argument mpq_class
/// constructor does not reduce; this does.
Rational make_rational(std::int64_t num, std::int64_t den = 1);

bool is_integer(const Rational& r);

/// "p/q", or plain "p" when the value is integral.
std::string to_fraction_string(const Rational& r);

/// Fixed-point decimal string with `places` fractional digits, rounded half
/// away from zero. Computed with integer arithmetic only.
std::string to_decimal_string(const Rational& r, int places = 6);

}  // namespace smcc
