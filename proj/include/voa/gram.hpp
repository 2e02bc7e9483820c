#ifndef VOA_GRAM_HPP
#define VOA_GRAM_HPP

#include <vector>

#include "voa/graded.hpp"
#include "voa/ldl.hpp"
#include "voa/matrix.hpp"
#include "voa/window.hpp"

namespace voa {

// Per-level Hermitian matrices of the scalar product in the model basis.
// Distinct levels are orthogonal; the level-0 block is [1].
class GramForm {
 public:
  GramForm() = default;
  GramForm(TruncationWindow window, std::vector<ExactMatrix> levels);

  const TruncationWindow& window() const { return window_; }
  const ExactMatrix& level(int l) const;
  int levels() const { return static_cast<int>(blocks_.size()); }

  // exact pairing (u|v); cross-level terms vanish by construction
  Scalar pair(const GradedVector& u, const GradedVector& v) const;
  Rational norm2(const GradedVector& v) const;

  LdlResult definiteness(int level) const;
  bool positive_definite_up_to(int level) const;

  // Adjoint of x w.r.t. this form: blockwise G_{m}^{-1} M* G_{m+shift} where
  // M is x's block at source m. Requires positive-definite (in particular
  // nonsingular) Gram blocks on the touched levels; a singular block raises
  // std::domain_error naming the level.
  GradedOperator adjoint(const GradedOperator& x) const;

 private:
  TruncationWindow window_;
  std::vector<ExactMatrix> blocks_;
};

}  // namespace voa

#endif
