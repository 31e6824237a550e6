#include "shiftforge/bigint.hpp"

#include <cmath>
#include <limits>

#include "shiftforge/errors.hpp"

namespace shiftforge {

double log_bigint(const BigInt& n) {
  if (n <= 0) throw PreconditionError("log of a non-positive integer");
  const unsigned msb = boost::multiprecision::msb(n);
  if (msb < 1000) return std::log(n.convert_to<double>());
  // keep the top 60 bits
  const unsigned shift = msb - 60;
  BigInt top = n >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw PreconditionError("non-finite value has no rational form");
  int exp = 0;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, 0.5 <= |mant| < 1
  // 53 bits of mantissa are exact.
  auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  BigInt num = scaled;
  BigInt den = 1;
  if (exp >= 0) {
    num <<= exp;
  } else {
    den <<= -exp;
  }
  return Rational(num, den);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string to_string(const BigInt& n) { return n.str(); }

std::string to_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace shiftforge
