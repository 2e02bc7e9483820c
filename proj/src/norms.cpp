#include "voa/norms.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>

namespace voa {

namespace {

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(static_cast<long>(i), static_cast<long>(j)) = m(i, j);
  return out;
}

}  // namespace

double spectral_norm(const ComplexMatrix& m) {
  if (m.empty()) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double operator_norm_float(const GradedOperator& x) {
  double best = 0.0;
  for (const auto& [m, block] : x.blocks()) best = std::max(best, spectral_norm(to_complex(block)));
  return best;
}

Rational frobenius_bound(const ExactMatrix& m) {
  Rational sum(0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) sum += m(i, j).norm2();
  return rational_sqrt_upper(sum);
}

Rational operator_norm_exact_bound(const GradedOperator& x) {
  Rational best(0);
  for (const auto& [m, block] : x.blocks()) best = std::max(best, frobenius_bound(block));
  return best;
}

}  // namespace voa
