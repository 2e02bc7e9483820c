#include "voa/rational.hpp"

namespace voa {

std::string format_rational(const Rational& r) {
  const BigInt num = numerator(r);
  const BigInt den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    const BigInt num(s.substr(0, slash));
    const BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument("bad rational literal '" + s + "': " + e.what());
  }
}

Rational rational_sqrt_upper(const Rational& r) {
  if (r < 0) throw std::invalid_argument("rational_sqrt_upper: negative input");
  if (r == 0) return 0;
  const BigInt num = numerator(r);
  const BigInt den = denominator(r);
  const BigInt prod = num * den;
  const BigInt root = boost::multiprecision::sqrt(prod);
  if (root * root == prod) return Rational(root, den);  // exact square
  // sqrt(num/den) = sqrt(num*den*M^2)/(den*M) <= (isqrt(...)+1)/(den*M),
  // over-estimation below 1e-9
  const BigInt scale = BigInt(1000000000);
  const BigInt scaled = prod * scale * scale;
  const BigInt scaled_root = boost::multiprecision::sqrt(scaled);
  return Rational(scaled_root + 1, den * scale);
}

Rational binomial(long n, long k) {
  if (k < 0) throw std::invalid_argument("binomial: negative k");
  Rational acc(1);
  for (long t = 0; t < k; ++t) {
    acc *= Rational(n - t, t + 1);
  }
  return acc;
}

}  // namespace voa
