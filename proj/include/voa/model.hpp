#ifndef VOA_MODEL_HPP
#define VOA_MODEL_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "voa/graded.hpp"
#include "voa/gram.hpp"
#include "voa/scalar.hpp"
#include "voa/window.hpp"

namespace voa {

// Weakly decreasing positive parts; empty partition = vacuum.
using Partition = std::vector<int>;

inline int partition_level(const Partition& p) {
  int s = 0;
  for (const int part : p) s += part;
  return s;
}

// Partitions of n with all parts >= min_part, lexicographically decreasing.
std::vector<Partition> partitions_with_min_part(int n, int min_part);

struct ModelSpec {
  enum class Kind { Heisenberg, Virasoro, Tensor };

  Kind kind = Kind::Heisenberg;
  Scalar c;  // Virasoro central charge (real rational)
  std::shared_ptr<const ModelSpec> left, right;
  int e_max = 0;

  static ModelSpec heisenberg(int e_max);
  static ModelSpec virasoro(Scalar c, int e_max);
  static ModelSpec tensor(ModelSpec left, ModelSpec right);

  // deep copy with every window in the tree replaced
  ModelSpec with_window(int e_max) const;

  std::string kind_name() const;
};

// One free-field generator per leaf of the (possibly nested) tensor tree:
// alpha with [a_m, a_n] = m delta_{m,-n} (weight 1, parts >= 1, a_0 = 0 on
// the vacuum module) or L with the Virasoro relation (weight 2, parts >= 2).
struct Leaf {
  bool heisenberg = true;
  Scalar c;  // Virasoro only

  int weight() const { return heisenberg ? 1 : 2; }
  int min_part() const { return heisenberg ? 1 : 2; }
  // smallest index whose mode annihilates the vacuum
  long annihilation_floor() const { return heisenberg ? 0 : -1; }
  std::string symbol() const { return heisenberg ? "alpha" : "L"; }
};

// Immutable truncated model: per-level bases, exact generator mode actions,
// and the Gram form induced by the adjoint assignment g_k^+ = g_{-k}.
class Model {
 public:
  static Model build(const ModelSpec& spec);

  Model(Model&&) = default;
  Model& operator=(Model&&) = delete;
  Model(const Model&) = delete;

  const ModelSpec& spec() const { return spec_; }
  const TruncationWindow& window() const { return window_; }
  bool is_tensor() const { return spec_.kind == ModelSpec::Kind::Tensor; }

  int dim(int level) const;
  int window_dimension() const;  // sum of level dims
  GradedVector vacuum() const { return GradedVector::unit({0, 0}); }

  int num_leaves() const { return static_cast<int>(leaves_.size()); }
  const Leaf& leaf(int g) const { return leaves_.at(static_cast<std::size_t>(g)); }
  Scalar central_charge() const;

  // one partition per leaf (all but one empty for pure models)
  std::vector<Partition> basis_partitions(LevelIndex at) const;
  std::string basis_label(LevelIndex at) const;
  int index_of_leaf_partition(int level, const Partition& p) const;  // pure models

  // Exact action of the mode g_k of leaf generator g. Throws
  // OutOfWindowError when the result level would exceed the window.
  GradedVector apply_generator_mode(int g, long k, const GradedVector& v) const;
  GradedVector apply_generator_mode_basis(int g, long k, LevelIndex at) const;

  // Materialized mode matrix (level shift -k); blocks whose target exceeds
  // the window are marked out-of-window.
  GradedOperator generator_matrix(int g, long k) const;

  const GramForm& gram() const;

  // state = g_{-part} . rest, with g the leading leaf generator; nullopt for
  // the vacuum
  struct Decomposition {
    int leaf = 0;
    int part = 0;
    LevelIndex rest;
  };
  std::optional<Decomposition> decompose(LevelIndex at) const;

  // factor models of a tensor model
  const Model& left_factor() const;
  const Model& right_factor() const;

  // x ⊗ 1 (side 0) or 1 ⊗ x (side 1); x must live on the matching factor
  // model and carry the same window.
  GradedOperator tensor_lift(const GradedOperator& x, int side) const;
  // u ⊗ Ω (side 0) or Ω ⊗ u (side 1)
  GradedVector tensor_lift_vector(const GradedVector& u, int side) const;

 private:
  Model() = default;

  struct TensorDecode {
    int left_level, left_index, right_level, right_index;
  };

  // caches live behind a pointer so Model stays movable; single writer per
  // key, many readers
  struct MutableState {
    std::mutex mutex;
    std::map<std::tuple<int, long, int, int>, GradedVector> mode_cache;
    std::once_flag gram_once;
    std::optional<GramForm> gram;
  };

  GradedVector apply_uncached(int g, long k, LevelIndex at) const;
  int tensor_index(int left_level, int left_index, int total_level, int right_index) const;
  void build_bases();
  std::vector<ExactMatrix> build_gram_blocks() const;

  ModelSpec spec_;
  TruncationWindow window_;
  std::vector<Leaf> leaves_;

  // pure models: explicit partitions per level + index lookup
  std::vector<std::vector<Partition>> level_basis_;
  std::vector<std::map<Partition, int>> level_index_;
  // tensor models: factor decomposition tables per level
  std::unique_ptr<Model> left_, right_;
  std::vector<std::vector<TensorDecode>> tensor_decode_;
  std::vector<std::map<std::pair<int, int>, int>> tensor_offset_;  // (lL, iL) -> base index

  std::vector<int> dims_;

  std::unique_ptr<MutableState> state_;
};

}  // namespace voa

#endif
