#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace liftlab {

using Rational = mpq_class;

// Accepts "p/q", plain integers, and decimal strings ("-0.125", "1e-3").
// Decimal input is converted exactly, so "0.1" parses to 1/10.
Rational parse_rational(std::string_view text);

// "p/q", or just "p" for integers.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

// Closest rational to x whose denominator does not exceed max_den.
Rational rationalize(double x, std::int64_t max_den);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

}  // namespace liftlab
