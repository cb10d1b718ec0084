#include "tropdyn/numeric.hpp"

#include <cmath>

namespace tropdyn {

IntVector primitive_integer(const RatVector& v) {
  Integer l = 1;
  for (const auto& x : v) {
    const Integer& d = denominator(x);
    l = l / gcd(l, d) * d;
  }
  IntVector out(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = numerator(v[i]) * (l / denominator(v[i]));
    g = gcd(g, out[i]);
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value " + std::to_string(x));
  if (x == 0.0) return 0;
  int exp = 0;
  double mant = std::frexp(x, &exp);
  auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r{Integer(scaled)};
  if (exp > 0) return r * Rational(Integer(1) << exp);
  return r / Rational(Integer(1) << (-exp));
}

double to_double(const Rational& q) { return q.convert_to<double>(); }
double to_double(const Integer& z) { return z.convert_to<double>(); }

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + s + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw DomainError("malformed rational '" + s + "'");
  }
}

}  // namespace tropdyn
