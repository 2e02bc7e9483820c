#include "voa/graded.hpp"

#include <algorithm>

namespace voa {

GradedVector GradedOperator::apply(const GradedVector& v) const {
  GradedVector out;
  for (const auto& [at, coeff] : v.entries()) {
    const int m = at.level;
    if (const auto req = out_of_window_requirement(m))
      throw OutOfWindowError(*req, "GradedOperator::apply");
    const int target = m + shift_;
    if (target < 0) continue;
    if (target > window_.e_max) throw OutOfWindowError(target, "GradedOperator::apply");
    const ExactMatrix* b = block(m);
    if (b == nullptr) continue;
    for (std::size_t r = 0; r < b->rows(); ++r) {
      const Scalar& entry = (*b)(r, static_cast<std::size_t>(at.index));
      if (entry.is_zero()) continue;
      out.add({target, static_cast<int>(r)}, entry * coeff);
    }
  }
  return out;
}

GradedOperator GradedOperator::compose(const GradedOperator& other) const {
  if (!(window_ == other.window_))
    throw std::invalid_argument("GradedOperator::compose: window mismatch");
  GradedOperator out(shift_ + other.shift_, window_);
  for (const auto& [m, req] : other.invalid_) out.mark_out_of_window(m, req);
  for (const auto& [m, B] : other.blocks_) {
    const int t = m + other.shift_;
    if (const auto req = out_of_window_requirement(t)) {
      out.mark_out_of_window(m, *req);
      continue;
    }
    const int u = t + shift_;
    if (u < 0) continue;
    if (u > window_.e_max) {
      out.mark_out_of_window(m, u);
      continue;
    }
    const ExactMatrix* A = block(t);
    if (A == nullptr) continue;  // zero map at level t
    out.set_block(m, (*A) * B);
  }
  return out;
}

GradedOperator GradedOperator::operator+(const GradedOperator& o) const {
  if (shift_ != o.shift_ || !(window_ == o.window_))
    throw std::invalid_argument("GradedOperator::operator+: shift/window mismatch");
  GradedOperator out(shift_, window_);
  for (const auto& [m, req] : invalid_) out.mark_out_of_window(m, req);
  for (const auto& [m, req] : o.invalid_) {
    const auto cur = out.out_of_window_requirement(m);
    out.mark_out_of_window(m, cur ? std::max(*cur, req) : req);
  }
  for (const auto& [m, B] : blocks_) {
    if (out.out_of_window_requirement(m)) continue;
    const ExactMatrix* C = o.block(m);
    out.set_block(m, C ? B + *C : B);
  }
  for (const auto& [m, C] : o.blocks_) {
    if (out.out_of_window_requirement(m) || out.block(m)) continue;
    out.set_block(m, C);
  }
  return out;
}

GradedOperator GradedOperator::operator-(const GradedOperator& o) const {
  return *this + o.scaled(Scalar(-1));
}

GradedOperator GradedOperator::scaled(const Scalar& s) const {
  GradedOperator out(shift_, window_);
  for (const auto& [m, req] : invalid_) out.mark_out_of_window(m, req);
  for (const auto& [m, B] : blocks_) {
    ExactMatrix scaled = B;
    scaled *= s;
    out.set_block(m, std::move(scaled));
  }
  return out;
}

bool GradedOperator::equals_on_valid_blocks(const GradedOperator& o) const {
  if (shift_ != o.shift_) return false;
  std::vector<int> levels;
  for (const auto& [m, B] : blocks_) levels.push_back(m);
  for (const auto& [m, B] : o.blocks_) levels.push_back(m);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  for (const int m : levels) {
    if (out_of_window_requirement(m) || o.out_of_window_requirement(m)) continue;
    const ExactMatrix* a = block(m);
    const ExactMatrix* b = o.block(m);
    if (a == nullptr && b == nullptr) continue;
    if (a == nullptr) {
      if (!b->is_zero()) return false;
    } else if (b == nullptr) {
      if (!a->is_zero()) return false;
    } else if (!(*a == *b)) {
      return false;
    }
  }
  return true;
}

bool GradedOperator::is_zero() const {
  for (const auto& [m, B] : blocks_)
    if (!B.is_zero()) return false;
  return true;
}

}  // namespace voa
