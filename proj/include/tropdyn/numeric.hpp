#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropdyn {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Base class of all errors raised for invalid domain input.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline IntVector int_vector(std::initializer_list<long long> xs) {
  IntVector v;
  v.reserve(xs.size());
  for (long long x : xs) v.emplace_back(x);
  return v;
}

inline RatVector to_rational(const IntVector& v) {
  return RatVector(v.begin(), v.end());
}

inline Rational dot(const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational dot(const IntVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

inline bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline bool is_zero(const RatVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

/// Multiplies a rational vector by the lcm of its denominators and divides by
/// the gcd of the resulting numerators. The zero vector maps to zero.
IntVector primitive_integer(const RatVector& v);

/// Exact conversion; every finite double is a dyadic rational.
Rational rational_from_double(double x);

double to_double(const Rational& q);
double to_double(const Integer& z);

std::string to_string(const Rational& q);

/// Parses "p", "-p" or "p/q".
Rational parse_rational(const std::string& s);

}  // namespace tropdyn
