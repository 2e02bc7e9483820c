#ifndef VOA_AXIOMS_HPP
#define VOA_AXIOMS_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "voa/field.hpp"
#include "voa/gram.hpp"

namespace voa {

// A sequence of operators indexed by an integer, abstracting "the modes of
// some field": either a_{(m)} directly, or the re-indexed adjoint field
// Y(a,z)^+ whose coefficient of z^{-m-1} is a_{(-m-2)}^+.
class ModeFamily {
 public:
  virtual ~ModeFamily() = default;
  virtual GradedVector apply(long index, const GradedVector& v) const = 0;
};

class StateModeFamily : public ModeFamily {
 public:
  StateModeFamily(const FieldCalculus& calc, GradedVector state)
      : calc_(&calc), state_(std::move(state)) {}
  GradedVector apply(long index, const GradedVector& v) const override {
    return calc_->apply_mode(state_, index, v);
  }

 private:
  const FieldCalculus* calc_;
  GradedVector state_;
};

class AdjointModeFamily : public ModeFamily {
 public:
  AdjointModeFamily(const FieldCalculus& calc, const GramForm& gram, GradedVector state);
  // coefficient of z^{-m-1} in Y(a,z)^+ is a_{(-m-2)}^+
  GradedVector apply(long index, const GradedVector& v) const override;
  const GradedOperator& adjoint_matrix(long unshifted_n) const;

 private:
  const FieldCalculus* calc_;
  const GramForm* gram_;
  GradedVector state_;
  mutable std::mutex mutex_;
  mutable std::map<long, GradedOperator> adj_;
};

enum class GridOutcome { ExactZero, Nonzero, OutOfWindow };

std::string to_string(GridOutcome o);

struct LocalityWitness {
  long m = 0, n = 0;
  LevelIndex vector;
  GradedVector residual;  // the binomial sum applied to the witness vector
};

struct LocalityReport {
  long order = 0;  // tested N
  long m_min = 0, m_max = 0, n_min = 0, n_max = 0;
  int level_cap = 0;
  std::map<std::pair<long, long>, GridOutcome> grid;
  std::map<std::pair<long, long>, int> required_e_max;  // out-of-window points
  std::vector<LocalityWitness> witnesses;
  std::optional<long> minimal_passing_order;  // within 0..order

  bool passed() const {
    for (const auto& [mn, o] : grid)
      if (o == GridOutcome::Nonzero) return false;
    return true;
  }
};

// Evaluates sum_{j=0}^{N} (-1)^j C(N,j) [A_{m+N-j}, B_{n+j}] exactly on every
// window basis vector of level <= level_cap, for all (m,n) in the given
// ranges. Out-of-window contributions are flagged per grid point, never
// dropped. Also scans orders 0..N for the minimal passing one.
LocalityReport locality_test(const Model& model, const ModeFamily& a, const ModeFamily& b,
                             long N, long m_min, long m_max, long n_min, long n_max,
                             int level_cap);

// convenience overload for a pair of states
LocalityReport locality_test(const FieldCalculus& calc, const GradedVector& a,
                             const GradedVector& b, long N, long index_bound, int level_cap);

struct BracketWitness {
  long n = 0, m = 0;
  LevelIndex vector;
  GradedVector lhs, rhs;
};

struct BracketCheckReport {
  bool passed = true;
  long checked = 0;        // (n,m,vector) triples verified exactly
  long out_of_window = 0;  // skipped triples
  int max_required_e_max = 0;
  std::vector<BracketWitness> witnesses;
};

// [L_n, L_m] = (n-m) L_{n+m} + c/12 (n^3-n) delta_{n,-m} as exact identities
// on all in-window levels <= level_cap; L modes come from the model's
// conformal vector (native for Virasoro, Sugawara for Heisenberg).
BracketCheckReport virasoro_bracket_check(const FieldCalculus& calc, long index_bound,
                                          int level_cap);

struct VtgWitness {
  std::string state;
  std::string check;
  long n = 0;
  LevelIndex vector;
};

struct VtgReport {
  bool passed = true;
  long checked = 0;
  long out_of_window = 0;
  int kernel_l0_dimension = 0;
  std::vector<VtgWitness> witnesses;
};

// Exact checks of the vacuum, translation and grading axioms for the given
// states: a_{(-1)}Omega = a; a_{(n)}Omega = 0 for 0 <= n <= n_max;
// [L_{-1}, a_{(n)}] = -n a_{(n-1)}; [L_0, a_{(n)}] = (d-n-1) a_{(n)};
// L_0 = level id per level and Ker(L_0) = C Omega on the window.
VtgReport vacuum_translation_grading_check(
    const FieldCalculus& calc, const std::vector<std::pair<std::string, GradedVector>>& states,
    long n_min, long n_max, int level_cap);

struct AdjointTable {
  GradedVector state;
  std::map<long, GradedOperator> adjoints;  // unshifted index -> matrix of a_{(n)}^+
  bool relation_verified = false;
  long relation_pairs_checked = 0;
  long relation_pairs_out_of_window = 0;
};

// Exact adjoint matrices G^{-1} M* G blockwise for n in [n_min, n_max], with
// the defining relation (a_{(n)}^+ b | c) = (b | a_{(n)} c) verified exactly
// on all window basis pairs where in-window. Throws std::domain_error naming
// the level and kernel when a Gram block is singular.
AdjointTable adjoint_modes(const FieldCalculus& calc, const GramForm& gram,
                           const GradedVector& a, long n_min, long n_max);

// Binomial locality of the adjoint field Y(a,z)^+ against Y(b,z).
LocalityReport unitarity_test(const FieldCalculus& calc, const GramForm& gram,
                              const GradedVector& a, const GradedVector& b, long N,
                              long index_bound, int level_cap);

struct GramScanEntry {
  std::optional<Scalar> c;  // set when sweeping central charges
  int level = 0;
  int dimension = 0;
  LdlResult ldl;
};

// Exact per-level definiteness classification with kernel bases; for
// Virasoro specs with a nonempty c list the model is rebuilt per c value.
std::vector<GramScanEntry> gram_spectrum_scan(const ModelSpec& spec, int level_max,
                                              const std::vector<Scalar>& c_values);

}  // namespace voa

#endif
