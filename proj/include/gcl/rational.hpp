#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>

namespace gcl {

// All polytope arithmetic is exact; floats never enter the combinatorial
// modules.  GMP-backed rationals keep every comparison and tightness test
// decidable.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Accepts "p" or "p/q" with optional sign; q must be positive and nonzero.
Rational parse_rational(const std::string& text);

// Canonical "p/q" with q >= 1, used by every on-disk serialization.
std::string to_fraction(const Rational& r);

// "p" when integral, "p/q" otherwise; used by human-facing text output.
std::string to_plain(const Rational& r);

// Exact conversion; every double is a dyadic rational.
Rational rational_from_double(double x);

bool is_integral(const Rational& r);

// Pre: is_integral(r) and the value fits in long long.
long long to_int64(const Rational& r);

}  // namespace gcl
