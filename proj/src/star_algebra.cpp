#include "voa/star_algebra.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "voa/norms.hpp"

namespace voa {

std::complex<double> trace_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  std::complex<double> acc(0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) acc += std::conj(a(i, j)) * b(i, j);
  return acc;
}

double frobenius(const ComplexMatrix& a) { return std::sqrt(std::abs(trace_inner(a, a))); }

namespace {

// orthogonalize against the basis twice, append when the residual is
// non-negligible relative to the candidate's size
bool gram_schmidt_append(std::vector<ComplexMatrix>& basis, ComplexMatrix cand, double tol) {
  const double original = frobenius(cand);
  if (original <= tol) return false;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      const std::complex<double> overlap = trace_inner(b, cand);
      if (overlap == std::complex<double>(0.0)) continue;
      ComplexMatrix shift = b;
      shift *= overlap;
      cand -= shift;
    }
  }
  const double residual = frobenius(cand);
  if (residual <= tol * std::max(1.0, original)) return false;
  cand *= std::complex<double>(1.0 / residual);
  basis.push_back(std::move(cand));
  return true;
}

ComplexMatrix unvec(const Eigen::VectorXcd& v, std::size_t d) {
  ComplexMatrix m(d, d);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < d; ++r) m(r, c) = v(static_cast<long>(c * d + r));
  return m;
}

}  // namespace

MatrixAlgebra generate_algebra(const std::vector<ComplexMatrix>& generators,
                               int stabilization_limit, double tol) {
  if (generators.empty()) throw std::invalid_argument("generate_algebra: no generators");
  const std::size_t d = generators[0].rows();
  for (const auto& g : generators)
    if (g.rows() != d || g.cols() != d)
      throw std::invalid_argument("generate_algebra: generators must be square on one window");

  MatrixAlgebra alg;
  alg.window_dim = static_cast<int>(d);
  alg.generators.push_back(ComplexMatrix::identity(d));
  for (const auto& g : generators) {
    alg.generators.push_back(g);
    alg.generators.push_back(g.conjugate_transpose());
  }
  for (const auto& g : alg.generators) gram_schmidt_append(alg.basis, g, tol);

  const std::size_t full = d * d;
  for (alg.rounds = 1; alg.rounds <= stabilization_limit; ++alg.rounds) {
    const std::size_t before = alg.basis.size();
    for (std::size_t i = 0; i < before && alg.basis.size() < full; ++i)
      for (std::size_t j = 0; j < before && alg.basis.size() < full; ++j)
        gram_schmidt_append(alg.basis, alg.basis[i] * alg.basis[j], tol);
    if (alg.basis.size() == before || alg.basis.size() == full) {
      alg.stabilized = true;
      return alg;
    }
  }
  alg.stabilized = false;  // partial result: round limit exceeded
  return alg;
}

MatrixAlgebra commutant(const MatrixAlgebra& alg, double tol) {
  const std::size_t d = static_cast<std::size_t>(alg.window_dim);
  const std::size_t d2 = d * d;
  const std::vector<ComplexMatrix>& constraints =
      alg.generators.empty() ? alg.basis : alg.generators;
  if (constraints.empty()) throw std::invalid_argument("commutant: empty algebra");

  // vec(GX - XG) = (I (x) G - G^T (x) I) vec(X), column-major vec
  Eigen::MatrixXcd K(static_cast<long>(constraints.size() * d2), static_cast<long>(d2));
  long row0 = 0;
  for (const auto& g : constraints) {
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t r = 0; r < d; ++r) {
        const long row = row0 + static_cast<long>(c * d + r);
        for (std::size_t k = 0; k < d2; ++k) K(row, static_cast<long>(k)) = 0.0;
        // (GX)(r,c) = sum_k G(r,k) X(k,c)
        for (std::size_t k = 0; k < d; ++k)
          K(row, static_cast<long>(c * d + k)) += g(r, k);
        // -(XG)(r,c) = -sum_k X(r,k) G(k,c)
        for (std::size_t k = 0; k < d; ++k)
          K(row, static_cast<long>(k * d + r)) -= g(k, c);
      }
    row0 += static_cast<long>(d2);
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(K, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  long rank = 0;
  for (long i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * std::max(1.0, smax)) ++rank;

  MatrixAlgebra out;
  out.window_dim = alg.window_dim;
  out.stabilized = true;
  for (long i = rank; i < static_cast<long>(d2); ++i)
    out.basis.push_back(unvec(svd.matrixV().col(i), d));
  out.generators = out.basis;
  return out;
}

double containment_residual(const MatrixAlgebra& sub, const MatrixAlgebra& sup) {
  double worst = 0.0;
  for (const auto& x : sub.basis) {
    ComplexMatrix resid = x;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : sup.basis) {
        const std::complex<double> overlap = trace_inner(b, resid);
        ComplexMatrix shift = b;
        shift *= overlap;
        resid -= shift;
      }
    }
    worst = std::max(worst, frobenius(resid));
  }
  return worst;
}

bool same_span(const MatrixAlgebra& a, const MatrixAlgebra& b, double tol) {
  if (a.dimension() != b.dimension()) return false;
  return containment_residual(a, b) <= tol && containment_residual(b, a) <= tol;
}

NetReport net_report(const FieldCalculus& calc, const std::vector<GradedVector>& states,
                     const std::vector<Arc>& arcs, int sample_count, long cutoff,
                     int stabilization_limit) {
  if (arcs.empty()) throw std::invalid_argument("net_report: no arcs");
  NetReport report;
  const WindowLayout layout = WindowLayout::of(calc.model());
  report.window_dimension = layout.dim;

  std::vector<std::vector<ComplexMatrix>> arc_gens;
  std::vector<MatrixAlgebra> algebras;
  for (const Arc& arc : arcs) {
    report.arcs.push_back(arc.describe());
    const TestFunction f = TestFunction::bump(arc, sample_count);
    std::vector<ComplexMatrix> gens;
    for (const auto& state : states) gens.push_back(smear(calc, state, f, cutoff).float_matrix);
    algebras.push_back(generate_algebra(gens, stabilization_limit));
    report.algebra_dimensions.push_back(algebras.back().dimension());
    arc_gens.push_back(std::move(gens));
  }

  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (std::size_t j = 0; j < arcs.size(); ++j) {
      if (i == j) continue;
      if (arcs[j].contains(arcs[i])) {
        // outer family includes the inner arc's functions
        std::vector<ComplexMatrix> combined = arc_gens[j];
        combined.insert(combined.end(), arc_gens[i].begin(), arc_gens[i].end());
        const MatrixAlgebra outer = generate_algebra(combined, stabilization_limit);
        NetIsotonyEntry e;
        e.inner = static_cast<int>(i);
        e.outer = static_cast<int>(j);
        e.residual = containment_residual(algebras[i], outer);
        e.contained = e.residual <= kAlgebraTolerance;
        report.isotony.push_back(e);
      }
      if (j > i && arcs[i].disjoint(arcs[j])) {
        NetLocalityEntry e;
        e.first = static_cast<int>(i);
        e.second = static_cast<int>(j);
        for (const auto& x : arc_gens[i])
          for (const auto& y : arc_gens[j])
            e.max_commutator_norm =
                std::max(e.max_commutator_norm, spectral_norm(x * y - y * x));
        report.locality.push_back(e);
      }
    }
  }

  std::vector<ComplexMatrix> all;
  for (const auto& gens : arc_gens) all.insert(all.end(), gens.begin(), gens.end());
  const MatrixAlgebra whole = generate_algebra(all, stabilization_limit);

  // vacuum cyclicity proxy: rank of { B Omega : B in basis }
  Eigen::MatrixXcd span(layout.dim, whole.dimension());
  for (int b = 0; b < whole.dimension(); ++b)
    for (int r = 0; r < layout.dim; ++r)
      span(r, b) = whole.basis[static_cast<std::size_t>(b)](static_cast<std::size_t>(r), 0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(span);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  for (long i = 0; i < sv.size(); ++i)
    if (sv(i) > kAlgebraTolerance * std::max(1.0, smax)) ++rank;
  report.cyclic_span_dimension = rank;

  const MatrixAlgebra whole_comm = commutant(whole);
  report.union_commutant_dimension = whole_comm.dimension();

  report.double_commutant_ok = true;
  for (const auto& alg : algebras) {
    const MatrixAlgebra dc = commutant(commutant(alg));
    if (!same_span(alg, dc)) report.double_commutant_ok = false;
  }
  if (!same_span(whole, commutant(whole_comm))) report.double_commutant_ok = false;

  return report;
}

}  // namespace voa
