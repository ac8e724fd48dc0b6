#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace corosim {

// All simulation time, work, and cost accounting is carried in exact
// rationals so conservation invariants can be asserted with equality.
// Decimal conversion happens only at the I/O boundary.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "123", "-0.25", "1e3"-free plain decimals exactly. Also accepts
// "num/den" fraction syntax for round-tripping non-terminating values.
Rational rational_from_decimal(std::string_view text);
std::optional<Rational> try_rational_from_decimal(std::string_view text);

// Exact when the expansion terminates within max_frac_digits; otherwise
// rounded half-up at the last digit. Deterministic in both cases.
std::string to_decimal_string(const Rational& value, int max_frac_digits = 30);

double to_double(const Rational& value);

// Exact value of a finite double (every finite double is a rational).
Rational rational_from_double(double value);

// floor(log2(|value|)); value must be nonzero.
long floor_log2_abs(const Rational& value);

// 2^exp as an exact rational (exp may be negative).
Rational pow2(long exp);

}  // namespace corosim
