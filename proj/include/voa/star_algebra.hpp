#ifndef VOA_STAR_ALGEBRA_HPP
#define VOA_STAR_ALGEBRA_HPP

#include <string>
#include <vector>

#include "voa/matrix.hpp"
#include "voa/smearing.hpp"

namespace voa {

// Unital *-algebra of window matrices, with a trace-orthonormal basis built
// by stabilized products of the generators. On a finite-dimensional space
// this is the analogue of the von Neumann algebra generated by the set; the
// double-commutant check below verifies the coincidence.
struct MatrixAlgebra {
  int window_dim = 0;
  std::vector<ComplexMatrix> generators;  // closed under adjoints, includes identity
  std::vector<ComplexMatrix> basis;       // orthonormal for <A,B> = tr(A^* B)
  bool stabilized = true;
  int rounds = 0;

  int dimension() const { return static_cast<int>(basis.size()); }
};

inline constexpr double kAlgebraTolerance = 1e-9;

std::complex<double> trace_inner(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius(const ComplexMatrix& a);

// Generated unital *-algebra: iterated products with Gram-Schmidt under the
// trace inner product until the dimension stabilizes. If the round limit is
// hit first, the result is flagged as partial (stabilized = false).
MatrixAlgebra generate_algebra(const std::vector<ComplexMatrix>& generators,
                               int stabilization_limit, double tol = kAlgebraTolerance);

// Solves [X, G] = 0 for every generator G as a linear system; the returned
// algebra has the commutant basis as its generators.
MatrixAlgebra commutant(const MatrixAlgebra& alg, double tol = kAlgebraTolerance);

// max over basis elements of sub of the residual after projecting onto
// span(sup.basis); exact containment gives 0 up to roundoff
double containment_residual(const MatrixAlgebra& sub, const MatrixAlgebra& sup);
bool same_span(const MatrixAlgebra& a, const MatrixAlgebra& b, double tol = kAlgebraTolerance);

struct NetIsotonyEntry {
  int inner = 0, outer = 0;  // arc indices
  bool contained = false;
  double residual = 0.0;
};

struct NetLocalityEntry {
  int first = 0, second = 0;
  double max_commutator_norm = 0.0;
};

struct NetReport {
  std::vector<std::string> arcs;
  std::vector<int> algebra_dimensions;
  std::vector<NetIsotonyEntry> isotony;    // nested arc pairs
  std::vector<NetLocalityEntry> locality;  // disjoint arc pairs
  int cyclic_span_dimension = 0;           // dim of (union algebra) Omega
  int window_dimension = 0;
  int union_commutant_dimension = 0;  // irreducibility proxy
  bool double_commutant_ok = true;    // for every generated algebra above
  std::string product_semantics = "projected window matrices";
};

// Truncated net diagnostics over a family of arcs: per-arc generated
// algebras of the smeared states, isotony containment for nested arcs (the
// inner arc's functions are included in the outer family), commutator norms
// across disjoint arcs, the vacuum cyclicity proxy and the commutant of the
// union algebra.
NetReport net_report(const FieldCalculus& calc, const std::vector<GradedVector>& states,
                     const std::vector<Arc>& arcs, int sample_count, long cutoff,
                     int stabilization_limit);

}  // namespace voa

#endif
