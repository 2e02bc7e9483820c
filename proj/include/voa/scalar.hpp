#ifndef VOA_SCALAR_HPP
#define VOA_SCALAR_HPP

#include <complex>
#include <string>

#include "voa/rational.hpp"

namespace voa {

// Exact complex-rational scalar. All field operations are exact; the only
// lossy operation is the explicit conversion to std::complex<double>.
struct Scalar {
  Rational re;
  Rational im;

  Scalar() : re(0), im(0) {}
  Scalar(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational r) : re(std::move(r)), im(0) {}  // NOLINT
  Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  Scalar conj() const { return Scalar(re, -im); }
  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
  Rational norm2() const { return re * re + im * im; }

  Scalar& operator+=(const Scalar& o) { re += o.re; im += o.im; return *this; }
  Scalar& operator-=(const Scalar& o) { re -= o.re; im -= o.im; return *this; }
  Scalar& operator*=(const Scalar& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator-(const Scalar& a) { return Scalar(-a.re, -a.im); }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    const Rational n2 = b.norm2();
    if (n2 == 0) throw std::domain_error("Scalar division by zero");
    return Scalar((a.re * b.re + a.im * b.im) / n2, (a.im * b.re - a.re * b.im) / n2);
  }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
};

// "p/q" for real values, "p/q+r/s i" / "p/q-r/s i" otherwise.
std::string format_scalar(const Scalar& s);
Scalar parse_scalar(const std::string& s);

}  // namespace voa

#endif
