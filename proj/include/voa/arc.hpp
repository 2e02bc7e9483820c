#ifndef VOA_ARC_HPP
#define VOA_ARC_HPP

#include "voa/rational.hpp"

namespace voa {

// Open, non-empty, non-dense interval of the unit circle, stored as exact
// rational multiples of pi (angles in units of pi, counterclockwise).
// Disjointness and containment are exact on such arcs.
class Arc {
 public:
  // start/end in units of pi; end != start mod 2
  Arc(const Rational& start_over_pi, const Rational& end_over_pi);

  const Rational& start() const { return start_; }    // normalized into [0, 2)
  const Rational& length() const { return length_; }  // in (0, 2)
  Rational end() const { return start_ + length_; }   // may exceed 2

  double start_radians() const;
  double length_radians() const;

  bool contains_point(const Rational& theta_over_pi) const;
  bool contains(const Arc& other) const;
  bool disjoint(const Arc& other) const;

  std::string describe() const;  // "(p/q pi, r/s pi)"

 private:
  Rational start_;   // in [0, 2)
  Rational length_;  // in (0, 2)
};

}  // namespace voa

#endif
