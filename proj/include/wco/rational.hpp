#pragma once

// Exact rational arithmetic for certifying "= 0 at every point" conditions.

#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace wco {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses a decimal literal ("3", "-0.125", "2.5e-3", "1E4") exactly.
/// Throws InputError on anything else.
Rational parse_decimal(std::string_view text);

/// Exact value of a finite double (every double is a dyadic rational).
Rational rational_from_double(double x);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// C(n, k) as an exact integer.
BigInt binomial(unsigned n, unsigned k);

}  // namespace wco
