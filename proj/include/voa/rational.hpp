#ifndef VOA_RATIONAL_HPP
#define VOA_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace voa {

// Arbitrary-precision rational, always normalized (positive denominator,
// lowest terms) by the backend.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// "p" or "p/q"
std::string format_rational(const Rational& r);
Rational parse_rational(const std::string& s);

// Smallest-effort rational x with x*x >= r (r >= 0). Exact when r is a
// perfect square of a rational.
Rational rational_sqrt_upper(const Rational& r);

// Binomial coefficient C(n, k) for arbitrary integer n and k >= 0:
// n(n-1)...(n-k+1)/k!.
Rational binomial(long n, long k);

}  // namespace voa

#endif
