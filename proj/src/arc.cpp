#include "voa/arc.hpp"

#include <cmath>
#include <stdexcept>

namespace voa {

namespace {

// reduce x into [0, 2): x - 2*floor(x/2), exact
Rational mod_two(const Rational& x) {
  const BigInt num = numerator(x);
  const BigInt den2 = denominator(x) * 2;
  BigInt q = num / den2;  // truncates toward zero
  if (num < 0 && q * den2 != num) --q;
  return x - Rational(2 * q);
}

}  // namespace

Arc::Arc(const Rational& start_over_pi, const Rational& end_over_pi) {
  start_ = mod_two(start_over_pi);
  length_ = mod_two(end_over_pi - start_over_pi);
  if (length_ == 0)
    throw std::invalid_argument(
        "Arc: end angle must differ from start angle mod 2pi (arcs are non-empty and "
        "non-dense)");
}

double Arc::start_radians() const { return to_double(start_) * M_PI; }
double Arc::length_radians() const { return to_double(length_) * M_PI; }

bool Arc::contains_point(const Rational& theta_over_pi) const {
  const Rational t = mod_two(theta_over_pi - start_);
  return t > 0 && t < length_;
}

bool Arc::contains(const Arc& other) const {
  const Rational offset = mod_two(other.start_ - start_);
  return offset + other.length_ <= length_;
}

bool Arc::disjoint(const Arc& other) const {
  const Rational offset = mod_two(other.start_ - start_);
  if (offset == 0) return false;  // shared start point of two open arcs
  if (offset < length_) return false;             // other starts inside this
  if (Rational(2) - offset < other.length_) return false;  // this starts inside other
  return true;
}

std::string Arc::describe() const {
  return "(" + format_rational(start_) + " pi, " + format_rational(end()) + " pi)";
}

}  // namespace voa
