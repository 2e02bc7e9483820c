#ifndef VOA_FIELD_HPP
#define VOA_FIELD_HPP

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "voa/graded.hpp"
#include "voa/model.hpp"

namespace voa {

// Mode index in either convention: unshifted a_{(n)} is the coefficient of
// z^{-n-1}; shifted a_n = a_{(n+d-1)} is the coefficient of z^{-n-d} for a
// homogeneous of weight d.
struct ModeIndex {
  enum class Convention { Unshifted, Shifted };

  long value = 0;
  Convention convention = Convention::Unshifted;

  static ModeIndex unshifted(long n) { return {n, Convention::Unshifted}; }
  static ModeIndex shifted(long n) { return {n, Convention::Shifted}; }

  long unshifted_value(int weight) const {
    return convention == Convention::Unshifted ? value : value + weight - 1;
  }
  ModeIndex converted(Convention to, int weight) const {
    if (to == convention) return *this;
    if (to == Convention::Unshifted) return unshifted(value + weight - 1);
    return shifted(value - weight + 1);
  }
};

// State-field correspondence on a truncated model. Composite modes are
// computed by the standard reconstruction: generator fields as the base
// case, (da)_{(n)} = -n a_{(n-1)} for the derivative, and
//   (u_{(-1)}v)_{(n)} = sum_{j<0} u_{(j)} v_{(n-j-1)} + sum_{j>=0} v_{(n-j-1)} u_{(j)}
// for the normal-ordered product; both sums are finite on any window vector.
// Applications whose intermediate or final level would leave the window
// throw OutOfWindowError carrying the minimal sufficient e_max.
class FieldCalculus {
 public:
  explicit FieldCalculus(const Model& model) : model_(model), state_(new MutableState) {}

  const Model& model() const { return model_; }

  GradedVector apply_mode(const GradedVector& a, long n, const GradedVector& b) const;
  GradedVector apply_mode_basis(LevelIndex a, long n, LevelIndex b) const;

  // conformal vector: 1/2 a_{-1}^2 Omega for Heisenberg (Sugawara, c = 1),
  // L_{-2} Omega for Virasoro, sum of factor lifts for tensor models
  GradedVector conformal_vector() const;
  // Heisenberg only; rejects other model kinds
  GradedVector sugawara_vector() const;
  Scalar central_charge() const { return model_.central_charge(); }

  // L_k v = nu_{(k+1)} v
  GradedVector apply_virasoro(long k, const GradedVector& v) const;

  // homogeneous weight (= level) of a; throws for mixed-level vectors,
  // returns 0 for the zero vector
  int weight_of(const GradedVector& a) const;

  // Materialized matrix of a_{(n)}; source levels whose columns cannot be
  // computed inside the window are marked with the required e_max.
  GradedOperator mode_matrix(const GradedVector& a, long n) const;

 private:
  struct CacheVal {
    bool ok = false;
    GradedVector value;
    int required = 0;
  };
  struct MutableState {
    std::mutex mutex;
    std::map<std::tuple<int, int, long, int, int>, CacheVal> cache;
  };

  GradedVector apply_mode_uncached(LevelIndex a, long n, LevelIndex b) const;
  static GradedVector conformal_vector_of(const Model& m);

  const Model& model_;
  std::shared_ptr<MutableState> state_;
};

// Cached family of mode matrices of a fixed state.
class FieldModeTable {
 public:
  FieldModeTable(const FieldCalculus& calc, GradedVector state);

  const GradedVector& state() const { return state_; }
  int weight() const { return weight_; }
  const GradedOperator& matrix(long unshifted_n) const;
  // level shift of a_{(n)} for this state's weight
  int shift(long unshifted_n) const { return weight_ - static_cast<int>(unshifted_n) - 1; }

 private:
  const FieldCalculus* calc_;
  GradedVector state_;
  int weight_;
  mutable std::mutex mutex_;
  mutable std::map<long, GradedOperator> mats_;
};

FieldModeTable reconstruct_field(const FieldCalculus& calc, const GradedVector& a);

// Requested mode matrix in either convention; the shifted convention
// requires a homogeneous state.
GradedOperator mode_of(const FieldCalculus& calc, const GradedVector& a, ModeIndex idx);

}  // namespace voa

#endif
