#include "voa/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace voa {

std::vector<Partition> partitions_with_min_part(int n, int min_part) {
  std::vector<Partition> out;
  Partition cur;
  // first parts chosen largest-first gives lexicographically decreasing order
  auto rec = [&](auto&& self, int rest, int cap) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(rest, cap); p >= min_part; --p) {
      if (rest - p != 0 && rest - p < min_part) continue;
      cur.push_back(p);
      self(self, rest - p, p);
      cur.pop_back();
    }
  };
  if (n >= 0) rec(rec, n, n);
  return out;
}

ModelSpec ModelSpec::heisenberg(int e_max) {
  ModelSpec s;
  s.kind = Kind::Heisenberg;
  s.e_max = e_max;
  return s;
}

ModelSpec ModelSpec::virasoro(Scalar c, int e_max) {
  ModelSpec s;
  s.kind = Kind::Virasoro;
  s.c = std::move(c);
  s.e_max = e_max;
  return s;
}

ModelSpec ModelSpec::tensor(ModelSpec left, ModelSpec right) {
  ModelSpec s;
  s.kind = Kind::Tensor;
  s.e_max = left.e_max;
  s.left = std::make_shared<const ModelSpec>(std::move(left));
  s.right = std::make_shared<const ModelSpec>(std::move(right));
  return s;
}

ModelSpec ModelSpec::with_window(int new_e_max) const {
  ModelSpec s = *this;
  s.e_max = new_e_max;
  if (kind == Kind::Tensor) {
    s.left = std::make_shared<const ModelSpec>(left->with_window(new_e_max));
    s.right = std::make_shared<const ModelSpec>(right->with_window(new_e_max));
  }
  return s;
}

std::string ModelSpec::kind_name() const {
  switch (kind) {
    case Kind::Heisenberg: return "heisenberg";
    case Kind::Virasoro: return "virasoro";
    case Kind::Tensor: return "tensor";
  }
  return "?";
}

namespace {

void flatten_leaves(const ModelSpec& spec, std::vector<Leaf>& out) {
  switch (spec.kind) {
    case ModelSpec::Kind::Heisenberg: {
      Leaf l;
      l.heisenberg = true;
      out.push_back(l);
      return;
    }
    case ModelSpec::Kind::Virasoro: {
      Leaf l;
      l.heisenberg = false;
      l.c = spec.c;
      out.push_back(l);
      return;
    }
    case ModelSpec::Kind::Tensor:
      flatten_leaves(*spec.left, out);
      flatten_leaves(*spec.right, out);
      return;
  }
}

// Normal-orders g_{word[0]} ... g_{word[k-1]} |Omega> for a single free-field
// generator by adjacent swaps with bracket corrections. All intermediate
// words keep the same total level, so no window guard is needed here.
void reduce_word(std::vector<long> word, Scalar coeff, const Leaf& leaf,
                 std::map<Partition, Scalar>& out) {
  if (coeff.is_zero()) return;
  for (;;) {
    if (word.empty()) {
      auto [it, inserted] = out.try_emplace(Partition{}, coeff);
      if (!inserted) it->second += coeff;
      return;
    }
    if (word.back() >= leaf.annihilation_floor()) return;  // kills the vacuum
    std::size_t inv = word.size();
    for (std::size_t i = word.size() - 1; i-- > 0;) {
      if (word[i] > word[i + 1]) {
        inv = i;
        break;
      }
    }
    if (inv == word.size()) {
      // weakly increasing, all creators: a basis word
      Partition p(word.size());
      for (std::size_t i = 0; i < word.size(); ++i) p[i] = static_cast<int>(-word[i]);
      auto [it, inserted] = out.try_emplace(std::move(p), coeff);
      if (!inserted) it->second += coeff;
      return;
    }
    const long a = word[inv], b = word[inv + 1];
    if (!leaf.heisenberg) {
      // [L_a, L_b] = (a-b) L_{a+b} + c/12 (a^3-a) delta_{a,-b}
      std::vector<long> merged;
      merged.reserve(word.size() - 1);
      merged.insert(merged.end(), word.begin(), word.begin() + static_cast<long>(inv));
      merged.push_back(a + b);
      merged.insert(merged.end(), word.begin() + static_cast<long>(inv) + 2, word.end());
      reduce_word(std::move(merged), coeff * Scalar(Rational(a - b)), leaf, out);
      if (a == -b) {
        std::vector<long> removed;
        removed.reserve(word.size() - 2);
        removed.insert(removed.end(), word.begin(), word.begin() + static_cast<long>(inv));
        removed.insert(removed.end(), word.begin() + static_cast<long>(inv) + 2, word.end());
        reduce_word(std::move(removed), coeff * leaf.c * Scalar(Rational(a * a * a - a, 12)),
                    leaf, out);
      }
    } else if (a == -b) {
      // [a_a, a_b] = a delta_{a,-b}
      std::vector<long> removed;
      removed.reserve(word.size() - 2);
      removed.insert(removed.end(), word.begin(), word.begin() + static_cast<long>(inv));
      removed.insert(removed.end(), word.begin() + static_cast<long>(inv) + 2, word.end());
      reduce_word(std::move(removed), coeff * Scalar(Rational(a)), leaf, out);
    }
    std::swap(word[inv], word[inv + 1]);
  }
}

}  // namespace

Model Model::build(const ModelSpec& spec) {
  if (spec.e_max < 0) throw std::invalid_argument("build_model: e_max must be >= 0");
  if (spec.kind == ModelSpec::Kind::Virasoro && !spec.c.is_real())
    throw std::invalid_argument("build_model: virasoro central charge must be a real rational");
  Model m;
  m.spec_ = spec;
  m.window_ = TruncationWindow(spec.e_max);
  flatten_leaves(spec, m.leaves_);
  m.state_ = std::make_unique<MutableState>();
  if (spec.kind == ModelSpec::Kind::Tensor) {
    if (spec.left->e_max != spec.e_max || spec.right->e_max != spec.e_max)
      throw std::invalid_argument("build_model: tensor window must equal the component windows");
    m.left_ = std::make_unique<Model>(build(*spec.left));
    m.right_ = std::make_unique<Model>(build(*spec.right));
  }
  m.build_bases();
  return m;
}

void Model::build_bases() {
  const int emax = window_.e_max;
  dims_.assign(static_cast<std::size_t>(emax) + 1, 0);
  if (!is_tensor()) {
    level_basis_.resize(static_cast<std::size_t>(emax) + 1);
    level_index_.resize(static_cast<std::size_t>(emax) + 1);
    for (int n = 0; n <= emax; ++n) {
      level_basis_[n] = partitions_with_min_part(n, leaves_[0].min_part());
      for (std::size_t i = 0; i < level_basis_[n].size(); ++i)
        level_index_[n].emplace(level_basis_[n][i], static_cast<int>(i));
      dims_[n] = static_cast<int>(level_basis_[n].size());
    }
    return;
  }
  tensor_decode_.resize(static_cast<std::size_t>(emax) + 1);
  tensor_offset_.resize(static_cast<std::size_t>(emax) + 1);
  for (int n = 0; n <= emax; ++n) {
    for (int ll = n; ll >= 0; --ll) {
      const int lr = n - ll;
      for (int il = 0; il < left_->dim(ll); ++il) {
        tensor_offset_[n].emplace(std::make_pair(ll, il),
                                  static_cast<int>(tensor_decode_[n].size()));
        for (int ir = 0; ir < right_->dim(lr); ++ir)
          tensor_decode_[n].push_back({ll, il, lr, ir});
      }
    }
    dims_[n] = static_cast<int>(tensor_decode_[n].size());
  }
}

int Model::dim(int level) const {
  if (level < 0 || level > window_.e_max) return 0;
  return dims_[static_cast<std::size_t>(level)];
}

int Model::window_dimension() const {
  int total = 0;
  for (const int d : dims_) total += d;
  return total;
}

Scalar Model::central_charge() const {
  Scalar total(0);
  for (const auto& l : leaves_) total += l.heisenberg ? Scalar(1) : l.c;
  return total;
}

std::vector<Partition> Model::basis_partitions(LevelIndex at) const {
  if (at.level < 0 || at.level > window_.e_max || at.index < 0 || at.index >= dim(at.level))
    throw std::out_of_range("basis_partitions: invalid basis index");
  if (!is_tensor()) return {level_basis_[at.level][static_cast<std::size_t>(at.index)]};
  const TensorDecode& d = tensor_decode_[at.level][static_cast<std::size_t>(at.index)];
  auto parts = left_->basis_partitions({d.left_level, d.left_index});
  auto rparts = right_->basis_partitions({d.right_level, d.right_index});
  parts.insert(parts.end(), rparts.begin(), rparts.end());
  return parts;
}

std::string Model::basis_label(LevelIndex at) const {
  const auto parts = basis_partitions(at);
  std::string out;
  for (std::size_t f = 0; f < parts.size(); ++f) {
    if (f) out += "x";
    out += "[";
    for (std::size_t i = 0; i < parts[f].size(); ++i) {
      if (i) out += ",";
      out += std::to_string(parts[f][i]);
    }
    out += "]";
  }
  return out;
}

int Model::index_of_leaf_partition(int level, const Partition& p) const {
  if (is_tensor())
    throw std::invalid_argument("index_of_leaf_partition: tensor model has composite states");
  const auto& idx = level_index_[static_cast<std::size_t>(level)];
  const auto it = idx.find(p);
  if (it == idx.end()) throw std::out_of_range("index_of_leaf_partition: not a basis partition");
  return it->second;
}

int Model::tensor_index(int left_level, int left_index, int total_level, int right_index) const {
  const auto& off = tensor_offset_[static_cast<std::size_t>(total_level)];
  const auto it = off.find({left_level, left_index});
  if (it == off.end()) throw std::logic_error("tensor_index: missing offset");
  return it->second + right_index;
}

GradedVector Model::apply_generator_mode_basis(int g, long k, LevelIndex at) const {
  if (g < 0 || g >= num_leaves()) throw std::invalid_argument("apply_generator_mode: bad leaf");
  const long target = at.level - k;
  if (target < 0) return {};
  if (target > window_.e_max)
    throw OutOfWindowError(static_cast<int>(target),
                           "apply_generator_mode(" + leaves_[g].symbol() + "_" +
                               std::to_string(k) + ")");
  const std::tuple<int, long, int, int> key{g, k, at.level, at.index};
  {
    std::lock_guard<std::mutex> lock(state_->mutex);
    const auto it = state_->mode_cache.find(key);
    if (it != state_->mode_cache.end()) return it->second;
  }
  GradedVector result = apply_uncached(g, k, at);
  std::lock_guard<std::mutex> lock(state_->mutex);
  return state_->mode_cache.emplace(key, std::move(result)).first->second;
}

GradedVector Model::apply_uncached(int g, long k, LevelIndex at) const {
  const int target = at.level - static_cast<int>(k);
  if (!is_tensor()) {
    const Partition& lambda = level_basis_[at.level][static_cast<std::size_t>(at.index)];
    std::vector<long> word;
    word.reserve(lambda.size() + 1);
    word.push_back(k);
    for (const int p : lambda) word.push_back(-p);
    std::map<Partition, Scalar> reduced;
    reduce_word(std::move(word), Scalar(1), leaves_[0], reduced);
    GradedVector out;
    for (const auto& [part, coeff] : reduced) {
      if (coeff.is_zero()) continue;
      out.add({target, index_of_leaf_partition(target, part)}, coeff);
    }
    return out;
  }
  const TensorDecode& d = tensor_decode_[at.level][static_cast<std::size_t>(at.index)];
  const int nl = left_->num_leaves();
  GradedVector out;
  if (g < nl) {
    const GradedVector w = left_->apply_generator_mode_basis(g, k, {d.left_level, d.left_index});
    for (const auto& [lat, coeff] : w.entries())
      out.add({target, tensor_index(lat.level, lat.index, target, d.right_index)}, coeff);
  } else {
    const GradedVector w =
        right_->apply_generator_mode_basis(g - nl, k, {d.right_level, d.right_index});
    for (const auto& [rat, coeff] : w.entries()) {
      const int ll = d.left_level;
      out.add({target, tensor_index(ll, d.left_index, target, rat.index)}, coeff);
    }
  }
  return out;
}

GradedVector Model::apply_generator_mode(int g, long k, const GradedVector& v) const {
  GradedVector out;
  for (const auto& [at, coeff] : v.entries()) {
    GradedVector w = apply_generator_mode_basis(g, k, at);
    w *= coeff;
    out += w;
  }
  return out;
}

GradedOperator Model::generator_matrix(int g, long k) const {
  GradedOperator op(static_cast<int>(-k), window_);
  for (int m = 0; m <= window_.e_max; ++m) {
    if (dim(m) == 0) continue;
    const long t = m - k;
    if (t < 0) continue;
    if (t > window_.e_max) {
      op.mark_out_of_window(m, static_cast<int>(t));
      continue;
    }
    ExactMatrix block(static_cast<std::size_t>(dim(static_cast<int>(t))),
                      static_cast<std::size_t>(dim(m)));
    for (int j = 0; j < dim(m); ++j) {
      const GradedVector col = apply_generator_mode_basis(g, k, {m, j});
      for (const auto& [at, coeff] : col.entries())
        block(static_cast<std::size_t>(at.index), static_cast<std::size_t>(j)) = coeff;
    }
    op.set_block(m, std::move(block));
  }
  return op;
}

std::optional<Model::Decomposition> Model::decompose(LevelIndex at) const {
  if (at.level == 0) return std::nullopt;
  if (!is_tensor()) {
    const Partition& lambda = level_basis_[at.level][static_cast<std::size_t>(at.index)];
    Decomposition d;
    d.leaf = 0;
    d.part = lambda[0];
    Partition rest(lambda.begin() + 1, lambda.end());
    d.rest = {at.level - d.part, index_of_leaf_partition(at.level - d.part, rest)};
    return d;
  }
  const TensorDecode& td = tensor_decode_[at.level][static_cast<std::size_t>(at.index)];
  if (td.left_level > 0) {
    const auto sub = left_->decompose({td.left_level, td.left_index});
    Decomposition d;
    d.leaf = sub->leaf;
    d.part = sub->part;
    const int rest_level = at.level - d.part;
    d.rest = {rest_level,
              tensor_index(sub->rest.level, sub->rest.index, rest_level, td.right_index)};
    return d;
  }
  const auto sub = right_->decompose({td.right_level, td.right_index});
  Decomposition d;
  d.leaf = left_->num_leaves() + sub->leaf;
  d.part = sub->part;
  const int rest_level = at.level - d.part;
  d.rest = {rest_level, tensor_index(0, 0, rest_level, sub->rest.index)};
  return d;
}

std::vector<ExactMatrix> Model::build_gram_blocks() const {
  std::vector<ExactMatrix> blocks;
  blocks.reserve(static_cast<std::size_t>(window_.e_max) + 1);
  ExactMatrix g0(1, 1);
  g0(0, 0) = Scalar(1);
  blocks.push_back(std::move(g0));
  for (int n = 1; n <= window_.e_max; ++n) {
    const int d = dim(n);
    ExactMatrix g(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      const auto dec = decompose({n, i});
      // <g_{-p} rest | v> = <rest | g_{+p} v>   (adjoint assignment g_k^+ = g_{-k})
      for (int j = 0; j < d; ++j) {
        const GradedVector w = apply_generator_mode_basis(dec->leaf, dec->part, {n, j});
        Scalar acc(0);
        for (const auto& [at, coeff] : w.entries())
          acc += blocks[static_cast<std::size_t>(at.level)](
                     static_cast<std::size_t>(dec->rest.index),
                     static_cast<std::size_t>(at.index)) *
                 coeff;
        g(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = acc;
      }
    }
    if (!g.is_hermitian()) throw std::logic_error("build_gram_blocks: non-Hermitian Gram block");
    blocks.push_back(std::move(g));
  }
  return blocks;
}

const GramForm& Model::gram() const {
  std::call_once(state_->gram_once,
                 [this] { state_->gram.emplace(window_, build_gram_blocks()); });
  return *state_->gram;
}

const Model& Model::left_factor() const {
  if (!left_) throw std::invalid_argument("left_factor: not a tensor model");
  return *left_;
}

const Model& Model::right_factor() const {
  if (!right_) throw std::invalid_argument("right_factor: not a tensor model");
  return *right_;
}

GradedOperator Model::tensor_lift(const GradedOperator& x, int side) const {
  if (!is_tensor()) throw std::invalid_argument("tensor_lift: not a tensor model");
  const Model& factor = side == 0 ? *left_ : *right_;
  if (!(x.window() == factor.window()))
    throw std::invalid_argument("tensor_lift: window mismatch");
  const int delta = x.shift();
  GradedOperator out(delta, window_);
  for (int m = 0; m <= window_.e_max; ++m) {
    if (dim(m) == 0) continue;
    const int t = m + delta;
    if (t < 0) continue;
    if (t > window_.e_max) {
      out.mark_out_of_window(m, t);
      continue;
    }
    ExactMatrix block(static_cast<std::size_t>(dim(t)), static_cast<std::size_t>(dim(m)));
    bool invalid = false;
    int required = 0;
    for (int j = 0; j < dim(m) && !invalid; ++j) {
      const TensorDecode& d = tensor_decode_[m][static_cast<std::size_t>(j)];
      const int src = side == 0 ? d.left_level : d.right_level;
      const int spectator_level = side == 0 ? d.right_level : d.left_level;
      if (const auto req = x.out_of_window_requirement(src)) {
        invalid = true;
        required = *req + spectator_level;
        continue;
      }
      const ExactMatrix* xb = x.block(src);
      if (xb == nullptr) continue;  // zero map on this factor level
      for (std::size_t r = 0; r < xb->rows(); ++r) {
        const Scalar& entry =
            (*xb)(r, static_cast<std::size_t>(side == 0 ? d.left_index : d.right_index));
        if (entry.is_zero()) continue;
        const int row = side == 0
                            ? tensor_index(src + delta, static_cast<int>(r), t, d.right_index)
                            : tensor_index(d.left_level, d.left_index, t, static_cast<int>(r));
        block(static_cast<std::size_t>(row), static_cast<std::size_t>(j)) = entry;
      }
    }
    if (invalid) out.mark_out_of_window(m, required);
    else out.set_block(m, std::move(block));
  }
  return out;
}

GradedVector Model::tensor_lift_vector(const GradedVector& u, int side) const {
  if (!is_tensor()) throw std::invalid_argument("tensor_lift_vector: not a tensor model");
  GradedVector out;
  for (const auto& [at, coeff] : u.entries()) {
    const int idx = side == 0 ? tensor_index(at.level, at.index, at.level, 0)
                              : tensor_index(0, 0, at.level, at.index);
    out.add({at.level, idx}, coeff);
  }
  return out;
}

}  // namespace voa
