#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace rz {

using Rational = mpq_class;

/// Parses "7", "-2/5", "0.125", "1.5e-3". Decimals are converted exactly.
Rational parse_rational(std::string_view text);

/// Canonical form "p/q" (or "p" for integers).
std::string to_string(const Rational& value);

/// Every finite double is a dyadic rational; this conversion is exact.
Rational exact_rational(double value);

inline double to_double(const Rational& value) { return value.get_d(); }
inline double to_double(double value) { return value; }

std::vector<double> to_double(const std::vector<Rational>& values);
std::vector<Rational> exact_rational(const std::vector<double>& values);

/// Parses a comma separated list of rationals, e.g. "3,4" or "1/2, -1".
std::vector<Rational> parse_rational_list(std::string_view text);

Rational factorial(int k);
Rational binomial(int n, int k);

/// Coefficient-type conversion used by the templated algorithms.
template <class T>
T scalar_from(const Rational& value);
template <>
inline Rational scalar_from<Rational>(const Rational& value) {
  return value;
}
template <>
inline double scalar_from<double>(const Rational& value) {
  return value.get_d();
}

}  // namespace rz
