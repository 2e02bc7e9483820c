#include "voa/ldl.hpp"

#include <stdexcept>

namespace voa {

std::string to_string(Definiteness d) {
  switch (d) {
    case Definiteness::PositiveDefinite: return "positive-definite";
    case Definiteness::PositiveSemidefinite: return "positive-semidefinite";
    case Definiteness::Indefinite: return "indefinite";
  }
  return "?";
}

namespace {

void swap_symmetric(ExactMatrix& a, std::size_t i, std::size_t j) {
  const std::size_t n = a.rows();
  if (i == j) return;
  for (std::size_t k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
  for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
}

}  // namespace

LdlResult ldl_definiteness(const ExactMatrix& g) {
  if (!g.is_hermitian()) throw std::invalid_argument("ldl_definiteness: matrix not Hermitian");
  const std::size_t n = g.rows();
  LdlResult res;

  ExactMatrix a = g;
  std::size_t k = 0;
  while (k < n) {
    // prefer a 1x1 pivot on any nonzero diagonal entry
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i) {
      if (!a(i, i).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < n) {
      swap_symmetric(a, k, piv);
      const Rational d = a(k, k).re;  // Hermitian diagonal is real
      if (d > 0) ++res.inertia.positive;
      else ++res.inertia.negative;
      for (std::size_t r = k + 1; r < n; ++r) {
        if (a(r, k).is_zero()) continue;
        const Scalar f = a(r, k) / a(k, k);
        for (std::size_t c = k; c < n; ++c) a(r, c) -= f * a(k, c);
      }
      for (std::size_t c = k + 1; c < n; ++c) a(k, c) = Scalar(0);
      ++k;
      continue;
    }
    // all remaining diagonals vanish; look for a nonzero off-diagonal entry
    std::size_t pi = n, pj = n;
    for (std::size_t i = k; i < n && pi == n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!a(i, j).is_zero()) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == n) {
      // remaining block is identically zero
      res.inertia.zero += static_cast<int>(n - k);
      break;
    }
    // block pivot E = [[0, e],[conj(e), 0]], inertia (+1, -1)
    swap_symmetric(a, k, pi);
    swap_symmetric(a, k + 1, pj);
    const Scalar e = a(k, k + 1);
    ++res.inertia.positive;
    ++res.inertia.negative;
    // Schur complement w.r.t. E: rows r >= k+2 get
    //   a(r,:) -= [a(r,k) a(r,k+1)] E^{-1} [a(k,:); a(k+1,:)]
    // with E^{-1} = [[0, 1/conj(e)],[1/e, 0]].
    const Scalar inv_e = Scalar(1) / e;
    const Scalar inv_ec = Scalar(1) / e.conj();
    for (std::size_t r = k + 2; r < n; ++r) {
      const Scalar l1 = a(r, k + 1) * inv_e;  // multiplies row k
      const Scalar l2 = a(r, k) * inv_ec;     // multiplies row k+1
      if (l1.is_zero() && l2.is_zero()) continue;
      for (std::size_t c = k; c < n; ++c) a(r, c) -= l1 * a(k, c) + l2 * a(k + 1, c);
    }
    for (std::size_t c = k + 2; c < n; ++c) {
      a(k, c) = Scalar(0);
      a(k + 1, c) = Scalar(0);
    }
    k += 2;
  }

  res.kernel = exact_nullspace(g);
  if (static_cast<int>(res.kernel.size()) != res.inertia.zero)
    throw std::logic_error("ldl_definiteness: kernel dimension disagrees with zero pivot count");

  if (res.inertia.negative > 0) res.classification = Definiteness::Indefinite;
  else if (res.inertia.zero > 0) res.classification = Definiteness::PositiveSemidefinite;
  else res.classification = Definiteness::PositiveDefinite;
  return res;
}

std::vector<std::vector<Scalar>> exact_nullspace(const ExactMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  ExactMatrix a = m;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!a(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(piv, j));
    const Scalar inv = Scalar(1) / a(r, c);
    for (std::size_t j = 0; j < cols; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const Scalar f = a(i, c);
      for (std::size_t j = 0; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (const auto c : pivot_col) is_pivot[c] = true;

  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(cols, Scalar(0));
    v[free] = Scalar(1);
    for (std::size_t pr = 0; pr < pivot_col.size(); ++pr) v[pivot_col[pr]] = -a(pr, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Scalar> exact_solve(const ExactMatrix& a, const std::vector<Scalar>& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("exact_solve: shape mismatch");
  ExactMatrix m(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n) = b[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = c; i < n; ++i)
      if (!m(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv == n) throw std::domain_error("exact_solve: singular matrix");
    if (piv != c)
      for (std::size_t j = 0; j <= n; ++j) std::swap(m(c, j), m(piv, j));
    const Scalar inv = Scalar(1) / m(c, c);
    for (std::size_t j = c; j <= n; ++j) m(c, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c).is_zero()) continue;
      const Scalar f = m(i, c);
      for (std::size_t j = c; j <= n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  std::vector<Scalar> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m(i, n);
  return x;
}

ExactMatrix exact_inverse(const ExactMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("exact_inverse: matrix not square");
  ExactMatrix m(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n + i) = Scalar(1);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = c; i < n; ++i)
      if (!m(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv == n) throw std::domain_error("exact_inverse: singular matrix");
    if (piv != c)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(m(c, j), m(piv, j));
    const Scalar inv = Scalar(1) / m(c, c);
    for (std::size_t j = c; j < 2 * n; ++j) m(c, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c).is_zero()) continue;
      const Scalar f = m(i, c);
      for (std::size_t j = c; j < 2 * n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  ExactMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = m(i, n + j);
  return out;
}

}  // namespace voa
