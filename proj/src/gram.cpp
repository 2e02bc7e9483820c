#include "voa/gram.hpp"

#include <stdexcept>
#include <string>

namespace voa {

GramForm::GramForm(TruncationWindow window, std::vector<ExactMatrix> levels)
    : window_(window), blocks_(std::move(levels)) {
  if (static_cast<int>(blocks_.size()) != window_.e_max + 1)
    throw std::invalid_argument("GramForm: need one block per level 0..e_max");
  for (const auto& b : blocks_)
    if (!b.is_hermitian()) throw std::invalid_argument("GramForm: non-Hermitian level block");
  if (blocks_[0].rows() != 1 || !(blocks_[0](0, 0) == Scalar(1)))
    throw std::invalid_argument("GramForm: level-0 block must be [1] (normalized vacuum)");
}

const ExactMatrix& GramForm::level(int l) const {
  if (l < 0 || l >= static_cast<int>(blocks_.size()))
    throw std::out_of_range("GramForm::level: level outside window");
  return blocks_[static_cast<std::size_t>(l)];
}

Scalar GramForm::pair(const GradedVector& u, const GradedVector& v) const {
  Scalar acc(0);
  for (const auto& [au, cu] : u.entries()) {
    for (const auto& [av, cv] : v.entries()) {
      if (au.level != av.level) continue;  // distinct levels are orthogonal
      const ExactMatrix& g = level(au.level);
      const Scalar& gij = g(static_cast<std::size_t>(au.index), static_cast<std::size_t>(av.index));
      if (gij.is_zero()) continue;
      acc += cu.conj() * gij * cv;
    }
  }
  return acc;
}

Rational GramForm::norm2(const GradedVector& v) const {
  const Scalar p = pair(v, v);
  if (!(p.im == 0)) throw std::logic_error("GramForm::norm2: non-real self-pairing");
  return p.re;
}

LdlResult GramForm::definiteness(int l) const { return ldl_definiteness(level(l)); }

bool GramForm::positive_definite_up_to(int lmax) const {
  for (int l = 0; l <= lmax; ++l) {
    if (level(l).rows() == 0) continue;
    if (definiteness(l).classification != Definiteness::PositiveDefinite) return false;
  }
  return true;
}

GradedOperator GramForm::adjoint(const GradedOperator& x) const {
  const int delta = x.shift();
  GradedOperator y(-delta, window_);
  for (int m = 0; m <= window_.e_max; ++m) {
    const int t = m - delta;  // target level of the adjoint, source level of x
    if (t < 0) continue;
    if (t > window_.e_max) {
      y.mark_out_of_window(m, t);
      continue;
    }
    if (const auto req = x.out_of_window_requirement(t)) {
      y.mark_out_of_window(m, *req);
      continue;
    }
    const ExactMatrix* X = x.block(t);
    if (X == nullptr) continue;  // zero map
    ExactMatrix gt_inv;
    try {
      gt_inv = exact_inverse(level(t));
    } catch (const std::domain_error&) {
      const auto ldl = ldl_definiteness(level(t));
      throw std::domain_error("GramForm::adjoint: singular Gram block at level " +
                              std::to_string(t) + " (kernel dimension " +
                              std::to_string(ldl.kernel_dimension()) +
                              "); null states obstruct adjoints");
    }
    y.set_block(m, gt_inv * X->conjugate_transpose() * level(m));
  }
  return y;
}

}  // namespace voa
