#ifndef VOA_LDL_HPP
#define VOA_LDL_HPP

#include <string>
#include <vector>

#include "voa/matrix.hpp"

namespace voa {

struct Inertia {
  int positive = 0;
  int zero = 0;
  int negative = 0;

  friend bool operator==(const Inertia& a, const Inertia& b) {
    return a.positive == b.positive && a.zero == b.zero && a.negative == b.negative;
  }
};

enum class Definiteness { PositiveDefinite, PositiveSemidefinite, Indefinite };

std::string to_string(Definiteness d);

struct LdlResult {
  Inertia inertia;
  Definiteness classification = Definiteness::PositiveDefinite;
  // exact kernel basis (column vectors), nonempty iff inertia.zero > 0
  std::vector<std::vector<Scalar>> kernel;

  int kernel_dimension() const { return inertia.zero; }
  int negative_index() const { return inertia.negative; }
};

// Exact inertia of a Hermitian matrix over complex rationals, via pivoted
// LDL* with 1x1 pivots and, when every remaining diagonal entry vanishes,
// [[0,a],[conj(a),0]] block pivots (each contributing one positive and one
// negative eigenvalue by Sylvester's law). The kernel basis is recomputed
// independently by exact row reduction and cross-checked against the zero
// pivot count. Rejects non-Hermitian input.
LdlResult ldl_definiteness(const ExactMatrix& g);

// Exact nullspace basis of an arbitrary rectangular exact matrix.
std::vector<std::vector<Scalar>> exact_nullspace(const ExactMatrix& m);

// Solves a x = b exactly by Gaussian elimination with partial (first
// nonzero) pivoting; throws std::domain_error on singular a.
std::vector<Scalar> exact_solve(const ExactMatrix& a, const std::vector<Scalar>& b);

// Exact inverse; throws std::domain_error on singular input.
ExactMatrix exact_inverse(const ExactMatrix& a);

}  // namespace voa

#endif
