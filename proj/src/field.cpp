#include "voa/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace voa {

GradedVector FieldCalculus::apply_mode(const GradedVector& a, long n,
                                       const GradedVector& b) const {
  GradedVector out;
  for (const auto& [aa, ca] : a.entries()) {
    for (const auto& [bb, cb] : b.entries()) {
      GradedVector w = apply_mode_basis(aa, n, bb);
      w *= ca * cb;
      out += w;
    }
  }
  return out;
}

GradedVector FieldCalculus::apply_mode_basis(LevelIndex a, long n, LevelIndex b) const {
  if (a.level == 0) {
    // Y(Omega, z) = identity
    return n == -1 ? GradedVector::unit(b) : GradedVector();
  }
  const long result_level = b.level + a.level - n - 1;  // homogeneous weight = level
  if (result_level < 0) return {};
  if (result_level > model_.window().e_max)
    throw OutOfWindowError(static_cast<int>(result_level), "apply_mode");

  const std::tuple<int, int, long, int, int> key{a.level, a.index, n, b.level, b.index};
  {
    std::lock_guard<std::mutex> lock(state_->mutex);
    const auto it = state_->cache.find(key);
    if (it != state_->cache.end()) {
      if (!it->second.ok) throw OutOfWindowError(it->second.required, "apply_mode");
      return it->second.value;
    }
  }
  CacheVal val;
  try {
    val.value = apply_mode_uncached(a, n, b);
    val.ok = true;
  } catch (const OutOfWindowError& e) {
    val.ok = false;
    val.required = e.required_e_max();
  }
  std::lock_guard<std::mutex> lock(state_->mutex);
  const auto& stored = state_->cache.emplace(key, std::move(val)).first->second;
  if (!stored.ok) throw OutOfWindowError(stored.required, "apply_mode");
  return stored.value;
}

GradedVector FieldCalculus::apply_mode_uncached(LevelIndex a, long n, LevelIndex b) const {
  const auto dec = model_.decompose(a);
  const Leaf& gen = model_.leaf(dec->leaf);
  const int dg = gen.weight();
  const long s = dec->part - dg;  // derivative order: a = (1/s!) (d^s gamma)_{(-1)} rest
  const LevelIndex rest = dec->rest;

  GradedVector out;
  // j <= -1: (1/s!)(d^s gamma)_{(j)} applied after rest_{(n-j-1)};
  // rest_{(p)} b vanishes once p exceeds b.level + rest.level - 1
  const long jmin = n - b.level - rest.level;
  for (long j = -1; j >= jmin; --j) {
    const Rational cf = ((s % 2) ? -1 : 1) * binomial(j, s);
    if (cf == 0) continue;
    const GradedVector inner = apply_mode_basis(rest, n - j - 1, b);
    if (inner.is_zero()) continue;
    GradedVector term = model_.apply_generator_mode(dec->leaf, j - s - dg + 1, inner);
    term *= Scalar(cf);
    out += term;
  }
  // j >= 0: rest_{(n-j-1)} applied after the generator mode; the generator
  // mode annihilates b once j exceeds b.level + part - 1
  const long jmax = b.level + dec->part - 1;
  for (long j = s; j <= jmax; ++j) {
    const Rational cf = ((s % 2) ? -1 : 1) * binomial(j, s);
    if (cf == 0) continue;
    // skip terms the outer rest-mode annihilates regardless, so that the
    // generator application cannot raise a phantom window requirement
    const long gk = j - s - dg + 1;
    if (rest.level == 0) {
      if (n - j - 1 != -1) continue;  // vacuum modes are delta_{m,-1} id
    } else if (n - j - 1 > (b.level - gk) + rest.level - 1) {
      continue;  // energy positivity kills the intermediate
    }
    const GradedVector inner = model_.apply_generator_mode_basis(dec->leaf, gk, b);
    if (inner.is_zero()) continue;
    for (const auto& [at, coeff] : inner.entries()) {
      GradedVector term = apply_mode_basis(rest, n - j - 1, at);
      term *= Scalar(cf) * coeff;
      out += term;
    }
  }
  return out;
}

GradedVector FieldCalculus::conformal_vector_of(const Model& m) {
  switch (m.spec().kind) {
    case ModelSpec::Kind::Heisenberg: {
      if (m.window().e_max < 2) throw OutOfWindowError(2, "conformal_vector");
      GradedVector nu;
      nu.add({2, m.index_of_leaf_partition(2, {1, 1})}, Scalar(Rational(1, 2)));
      return nu;
    }
    case ModelSpec::Kind::Virasoro: {
      if (m.window().e_max < 2) throw OutOfWindowError(2, "conformal_vector");
      GradedVector nu;
      nu.add({2, m.index_of_leaf_partition(2, {2})}, Scalar(1));
      return nu;
    }
    case ModelSpec::Kind::Tensor: {
      GradedVector nu = m.tensor_lift_vector(conformal_vector_of(m.left_factor()), 0);
      nu += m.tensor_lift_vector(conformal_vector_of(m.right_factor()), 1);
      return nu;
    }
  }
  throw std::logic_error("conformal_vector: unknown model kind");
}

GradedVector FieldCalculus::conformal_vector() const { return conformal_vector_of(model_); }

GradedVector FieldCalculus::sugawara_vector() const {
  if (model_.spec().kind != ModelSpec::Kind::Heisenberg)
    throw std::invalid_argument("sugawara_vector: requires the Heisenberg model");
  return conformal_vector_of(model_);
}

GradedVector FieldCalculus::apply_virasoro(long k, const GradedVector& v) const {
  return apply_mode(conformal_vector(), k + 1, v);
}

int FieldCalculus::weight_of(const GradedVector& a) const {
  if (a.is_zero()) return 0;
  const auto lvl = a.homogeneous_level();
  if (!lvl) throw std::invalid_argument("weight_of: state is not homogeneous");
  return *lvl;
}

GradedOperator FieldCalculus::mode_matrix(const GradedVector& a, long n) const {
  const int d = weight_of(a);
  const int shift = d - static_cast<int>(n) - 1;
  GradedOperator op(shift, model_.window());
  for (int m = 0; m <= model_.window().e_max; ++m) {
    if (model_.dim(m) == 0) continue;
    const int t = m + shift;
    if (t < 0) continue;
    if (t > model_.window().e_max) {
      op.mark_out_of_window(m, t);
      continue;
    }
    ExactMatrix block(static_cast<std::size_t>(model_.dim(t)),
                      static_cast<std::size_t>(model_.dim(m)));
    bool invalid = false;
    int required = 0;
    for (int j = 0; j < model_.dim(m); ++j) {
      try {
        const GradedVector col = apply_mode(a, n, GradedVector::unit({m, j}));
        for (const auto& [at, coeff] : col.entries())
          block(static_cast<std::size_t>(at.index), static_cast<std::size_t>(j)) = coeff;
      } catch (const OutOfWindowError& e) {
        invalid = true;
        required = std::max(required, e.required_e_max());
      }
    }
    if (invalid) op.mark_out_of_window(m, required);
    else op.set_block(m, std::move(block));
  }
  return op;
}

FieldModeTable::FieldModeTable(const FieldCalculus& calc, GradedVector state)
    : calc_(&calc), state_(std::move(state)), weight_(calc.weight_of(state_)) {}

const GradedOperator& FieldModeTable::matrix(long n) const {
  std::lock_guard<std::mutex> lock(mutex_);
  const auto it = mats_.find(n);
  if (it != mats_.end()) return it->second;
  return mats_.emplace(n, calc_->mode_matrix(state_, n)).first->second;
}

FieldModeTable reconstruct_field(const FieldCalculus& calc, const GradedVector& a) {
  return FieldModeTable(calc, a);
}

GradedOperator mode_of(const FieldCalculus& calc, const GradedVector& a, ModeIndex idx) {
  if (idx.convention == ModeIndex::Convention::Shifted && !a.is_zero() &&
      !a.homogeneous_level())
    throw std::invalid_argument("mode_of: shifted convention requires a homogeneous state");
  const int d = calc.weight_of(a);
  return calc.mode_matrix(a, idx.unshifted_value(d));
}

}  // namespace voa
