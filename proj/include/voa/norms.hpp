#ifndef VOA_NORMS_HPP
#define VOA_NORMS_HPP

#include "voa/graded.hpp"
#include "voa/matrix.hpp"
#include "voa/rational.hpp"

namespace voa {

// Largest singular value, computed in floating point (relative accuracy well
// below the documented 1e-9 tolerance).
double spectral_norm(const ComplexMatrix& m);

enum class NormMode { ExactBound, Float };

// Float mode: max over blocks of the largest singular value.
// ExactBound mode: max over blocks of a rational Frobenius-norm upper bound
// (always >= the float spectral norm). Empty operator -> 0.
double operator_norm_float(const GradedOperator& x);
Rational operator_norm_exact_bound(const GradedOperator& x);

Rational frobenius_bound(const ExactMatrix& m);

}  // namespace voa

#endif
