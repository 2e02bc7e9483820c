#ifndef VOA_SMEARING_HPP
#define VOA_SMEARING_HPP

#include <complex>
#include <functional>
#include <vector>

#include "voa/arc.hpp"
#include "voa/field.hpp"
#include "voa/test_function.hpp"

namespace voa {

// Coordinates of the direct sum of the window levels in level-major order.
struct WindowLayout {
  std::vector<int> offsets;
  int dim = 0;

  static WindowLayout of(const Model& m);
  int offset(int level) const { return offsets[static_cast<std::size_t>(level)]; }
  int position(LevelIndex at) const { return offset(at.level) + at.index; }
};

// Y_0(a,f) = sum_{|n| <= F} f_n a_n restricted to the window. The matrix is
// the projected truncation P Y_0(a,f) P: creation components that leave the
// window are dropped by the projection, which is the declared semantics of
// every smeared-matrix product in this module. Entries themselves are exact
// for trig polys with exact coefficients.
struct SmearedOperator {
  GradedVector state;
  int weight = 0;
  long cutoff = 0;
  bool exact = false;
  TruncationWindow window;
  WindowLayout layout;
  ExactMatrix exact_matrix;    // populated when exact
  ComplexMatrix float_matrix;  // always populated
};

class SmearError : public std::runtime_error {
 public:
  SmearError(const std::string& msg, long achievable_cutoff)
      : std::runtime_error(msg), achievable_cutoff_(achievable_cutoff) {}
  // largest F' such that every shifted mode with |n| <= F' is computable on
  // the window
  long achievable_cutoff() const { return achievable_cutoff_; }

 private:
  long achievable_cutoff_;
};

SmearedOperator smear(const FieldCalculus& calc, const GradedVector& a, const TestFunction& f,
                      long cutoff);

struct EnergyBoundRow {
  long n = 0;
  double mode_norm = 0.0;  // spectral norm of a_n (L_0+1)^{-k} on the window
  double ratio = 0.0;      // mode_norm / (|n|+1)^s
};

struct EnergyBoundWindowResult {
  int e_max = 0;
  std::vector<EnergyBoundRow> rows;
  double m_est = 0.0;
  long skipped_blocks = 0;  // blocks not computable inside the window
};

struct EnergyBoundReport {
  int s = 0, k = 0;
  long index_bound = 0;
  std::vector<EnergyBoundWindowResult> windows;
};

// Estimates M in ||a_n b|| <= M (|n|+1)^s ||(L_0+1)^k b|| at a sequence of
// windows; each result states its window, and M_est is non-decreasing under
// window growth.
EnergyBoundReport energy_bound_estimate(
    const ModelSpec& base_spec,
    const std::function<GradedVector(const FieldCalculus&)>& state_factory, int s, int k,
    long index_bound, const std::vector<int>& windows);

struct DecayRow {
  long cutoff = 0;
  double commutator_norm = 0.0;            // projected-product commutator, spectral norm
  std::complex<double> pairing_scalar{0.0};  // sum_m m f_m g_{-m} (exact c-number for alpha)
};

struct DecayReport {
  std::string arc1, arc2;
  int sample_count = 0;
  std::vector<DecayRow> rows;
  std::string product_semantics = "projected window matrices";
};

// Commutator-norm decay of smeared fields with bump supports in two disjoint
// arcs, across Fourier cutoffs. Overlapping (in particular identical) arcs
// are rejected.
DecayReport commutator_decay(const FieldCalculus& calc, const GradedVector& a,
                             const GradedVector& b, const Arc& arc1, const Arc& arc2,
                             int sample_count, const std::vector<long>& cutoffs);

}  // namespace voa

#endif
