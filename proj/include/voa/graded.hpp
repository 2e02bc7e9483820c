#ifndef VOA_GRADED_HPP
#define VOA_GRADED_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "voa/matrix.hpp"
#include "voa/scalar.hpp"
#include "voa/window.hpp"

namespace voa {

// (level, position within the level basis)
struct LevelIndex {
  int level = 0;
  int index = 0;

  friend bool operator==(const LevelIndex& a, const LevelIndex& b) {
    return a.level == b.level && a.index == b.index;
  }
  friend bool operator<(const LevelIndex& a, const LevelIndex& b) {
    return a.level != b.level ? a.level < b.level : a.index < b.index;
  }
};

// Finite exact linear combination of basis states of a model. Entries with
// zero coefficient are never stored.
class GradedVector {
 public:
  GradedVector() = default;

  static GradedVector unit(LevelIndex at) {
    GradedVector v;
    v.entries_.emplace(at, Scalar(1));
    return v;
  }

  bool is_zero() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }
  const std::map<LevelIndex, Scalar>& entries() const { return entries_; }

  Scalar coefficient(LevelIndex at) const {
    const auto it = entries_.find(at);
    return it == entries_.end() ? Scalar(0) : it->second;
  }

  void add(LevelIndex at, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = entries_.try_emplace(at, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }

  GradedVector& operator+=(const GradedVector& o) {
    for (const auto& [at, c] : o.entries_) add(at, c);
    return *this;
  }
  GradedVector& operator-=(const GradedVector& o) {
    for (const auto& [at, c] : o.entries_) add(at, -c);
    return *this;
  }
  GradedVector& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      entries_.clear();
      return *this;
    }
    for (auto& [at, c] : entries_) c *= s;
    return *this;
  }

  friend GradedVector operator+(GradedVector a, const GradedVector& b) { return a += b; }
  friend GradedVector operator-(GradedVector a, const GradedVector& b) { return a -= b; }
  friend GradedVector operator*(GradedVector a, const Scalar& s) { return a *= s; }
  friend GradedVector operator*(const Scalar& s, GradedVector a) { return a *= s; }
  friend bool operator==(const GradedVector& a, const GradedVector& b) {
    return a.entries_ == b.entries_;
  }

  // Level of a homogeneous vector; nullopt for 0 and for mixed-level vectors.
  std::optional<int> homogeneous_level() const {
    if (entries_.empty()) return std::nullopt;
    const int lvl = entries_.begin()->first.level;
    if (entries_.rbegin()->first.level != lvl) return std::nullopt;
    return lvl;
  }

  int max_level() const { return entries_.empty() ? 0 : entries_.rbegin()->first.level; }

 private:
  std::map<LevelIndex, Scalar> entries_;
};

// Level-shift-homogeneous sparse operator on a truncation window: block(m)
// maps the level-m subspace into level m+shift. A block may instead be
// marked out-of-window, recording the minimal e_max that would make it
// computable; that state is never silently dropped.
class GradedOperator {
 public:
  GradedOperator() = default;
  GradedOperator(int shift, TruncationWindow window) : shift_(shift), window_(window) {}

  int shift() const { return shift_; }
  const TruncationWindow& window() const { return window_; }

  void set_block(int source_level, ExactMatrix block) {
    blocks_[source_level] = std::move(block);
  }
  void mark_out_of_window(int source_level, int required_e_max) {
    invalid_[source_level] = required_e_max;
  }

  const ExactMatrix* block(int source_level) const {
    const auto it = blocks_.find(source_level);
    return it == blocks_.end() ? nullptr : &it->second;
  }
  std::optional<int> out_of_window_requirement(int source_level) const {
    const auto it = invalid_.find(source_level);
    if (it == invalid_.end()) return std::nullopt;
    return it->second;
  }

  const std::map<int, ExactMatrix>& blocks() const { return blocks_; }
  const std::map<int, int>& out_of_window_blocks() const { return invalid_; }
  bool fully_valid() const { return invalid_.empty(); }

  // Exact action. Throws OutOfWindowError when the vector touches a source
  // level whose block is unavailable (rather than truncating).
  GradedVector apply(const GradedVector& v) const;

  // Composition this ∘ other (apply `other` first); shifts add. Blocks are
  // only composed where both factors are valid; otherwise the requirement
  // propagates.
  GradedOperator compose(const GradedOperator& other) const;

  GradedOperator operator-(const GradedOperator& o) const;
  GradedOperator operator+(const GradedOperator& o) const;
  GradedOperator scaled(const Scalar& s) const;

  bool equals_on_valid_blocks(const GradedOperator& o) const;
  bool is_zero() const;

 private:
  int shift_ = 0;
  TruncationWindow window_;
  std::map<int, ExactMatrix> blocks_;
  std::map<int, int> invalid_;
};

}  // namespace voa

#endif
