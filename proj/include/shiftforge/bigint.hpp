#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace shiftforge {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Natural log of a positive integer, accurate for values far beyond the
/// range of double.
double log_bigint(const BigInt& n);

/// Exact rational approximation of a double (binary expansion, exact).
Rational rational_from_double(double x);

double to_double(const Rational& q);

std::string to_string(const BigInt& n);
std::string to_string(const Rational& q);

}  // namespace shiftforge
