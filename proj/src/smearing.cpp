#include "voa/smearing.hpp"

#include <algorithm>
#include <cmath>

#include "voa/norms.hpp"

namespace voa {

WindowLayout WindowLayout::of(const Model& m) {
  WindowLayout l;
  l.offsets.reserve(static_cast<std::size_t>(m.window().e_max) + 1);
  int acc = 0;
  for (int lvl = 0; lvl <= m.window().e_max; ++lvl) {
    l.offsets.push_back(acc);
    acc += m.dim(lvl);
  }
  l.dim = acc;
  return l;
}

namespace {

// Splits mode-matrix invalidity into the two meanings it can have here:
// targets beyond the window are dropped by the projection; failures at
// in-window targets mean the entries themselves are not computable.
bool mode_fully_computable(const GradedOperator& op) {
  for (const auto& [m, req] : op.out_of_window_blocks()) {
    const int target = m + op.shift();
    if (target >= 0 && target <= op.window().e_max) return false;
  }
  return true;
}

void embed_block(ComplexMatrix& into, const WindowLayout& layout, const GradedOperator& op,
                 const std::complex<double>& coeff) {
  for (const auto& [m, B] : op.blocks()) {
    const int t = m + op.shift();
    const int ro = layout.offset(t), co = layout.offset(m);
    for (std::size_t r = 0; r < B.rows(); ++r)
      for (std::size_t c = 0; c < B.cols(); ++c)
        into(static_cast<std::size_t>(ro) + r, static_cast<std::size_t>(co) + c) +=
            coeff * B(r, c).to_complex();
  }
}

void embed_block_exact(ExactMatrix& into, const WindowLayout& layout, const GradedOperator& op,
                       const Scalar& coeff) {
  for (const auto& [m, B] : op.blocks()) {
    const int t = m + op.shift();
    const int ro = layout.offset(t), co = layout.offset(m);
    for (std::size_t r = 0; r < B.rows(); ++r)
      for (std::size_t c = 0; c < B.cols(); ++c) {
        if (B(r, c).is_zero()) continue;
        into(static_cast<std::size_t>(ro) + r, static_cast<std::size_t>(co) + c) +=
            coeff * B(r, c);
      }
  }
}

}  // namespace

SmearedOperator smear(const FieldCalculus& calc, const GradedVector& a, const TestFunction& f,
                      long cutoff) {
  const Model& model = calc.model();
  SmearedOperator out;
  out.state = a;
  out.weight = calc.weight_of(a);
  out.cutoff = cutoff;
  out.window = model.window();
  out.layout = WindowLayout::of(model);
  const FourierTable table = fourier_coefficients(f, cutoff);
  out.exact = table.exact;

  // shifted mode a_n is the unshifted mode a_{(n + d - 1)}
  std::map<long, GradedOperator> mats;
  std::vector<long> missing;
  for (const auto& [n, cf] : table.float_coefficients) {
    if (cf == std::complex<double>(0.0)) continue;
    GradedOperator op = calc.mode_matrix(a, n + out.weight - 1);
    if (!mode_fully_computable(op)) {
      missing.push_back(n);
      continue;
    }
    mats.emplace(n, std::move(op));
  }
  if (!missing.empty()) {
    long achievable = cutoff;
    for (const long n : missing) achievable = std::min(achievable, std::abs(n) - 1);
    std::string msg = "smear: shifted modes not computable on this window for n in {";
    for (std::size_t i = 0; i < missing.size(); ++i)
      msg += (i ? "," : "") + std::to_string(missing[i]);
    msg += "}; achievable cutoff F = " + std::to_string(achievable);
    throw SmearError(msg, achievable);
  }

  const std::size_t D = static_cast<std::size_t>(out.layout.dim);
  out.float_matrix = ComplexMatrix(D, D);
  for (const auto& [n, op] : mats) embed_block(out.float_matrix, out.layout, op, table.value(n));
  if (out.exact) {
    out.exact_matrix = ExactMatrix(D, D);
    for (const auto& [n, op] : mats) {
      const auto it = table.exact_coefficients.find(n);
      if (it == table.exact_coefficients.end()) continue;
      embed_block_exact(out.exact_matrix, out.layout, op, it->second);
    }
  }
  return out;
}

EnergyBoundReport energy_bound_estimate(
    const ModelSpec& base_spec,
    const std::function<GradedVector(const FieldCalculus&)>& state_factory, int s, int k,
    long index_bound, const std::vector<int>& windows) {
  EnergyBoundReport report;
  report.s = s;
  report.k = k;
  report.index_bound = index_bound;
  for (const int e_max : windows) {
    const ModelSpec spec = base_spec.with_window(e_max);
    const Model model = Model::build(spec);
    const FieldCalculus calc(model);
    const GradedVector a = state_factory(calc);
    const int d = calc.weight_of(a);

    EnergyBoundWindowResult res;
    res.e_max = e_max;
    for (long n = -index_bound; n <= index_bound; ++n) {
      const GradedOperator op = calc.mode_matrix(a, n + d - 1);
      double best = 0.0;
      for (const auto& [m, B] : op.blocks()) {
        const double sigma = spectral_norm(to_complex(B));
        best = std::max(best, sigma / std::pow(m + 1.0, k));
      }
      for (const auto& [m, req] : op.out_of_window_blocks()) {
        const int target = m + op.shift();
        if (target >= 0 && target <= e_max) ++res.skipped_blocks;
      }
      EnergyBoundRow row;
      row.n = n;
      row.mode_norm = best;
      row.ratio = best / std::pow(std::abs(n) + 1.0, s);
      res.rows.push_back(row);
    }
    res.m_est = 0.0;
    for (const auto& row : res.rows) res.m_est = std::max(res.m_est, row.ratio);
    report.windows.push_back(std::move(res));
  }
  return report;
}

DecayReport commutator_decay(const FieldCalculus& calc, const GradedVector& a,
                             const GradedVector& b, const Arc& arc1, const Arc& arc2,
                             int sample_count, const std::vector<long>& cutoffs) {
  if (!arc1.disjoint(arc2))
    throw std::invalid_argument(
        "commutator_decay: arcs must be disjoint (the experiment is only meaningful for "
        "disjoint supports)");
  DecayReport report;
  report.arc1 = arc1.describe();
  report.arc2 = arc2.describe();
  report.sample_count = sample_count;
  const TestFunction f = TestFunction::bump(arc1, sample_count);
  const TestFunction g = TestFunction::bump(arc2, sample_count);
  for (const long F : cutoffs) {
    const SmearedOperator X = smear(calc, a, f, F);
    const SmearedOperator Y = smear(calc, b, g, F);
    const ComplexMatrix C = X.float_matrix * Y.float_matrix - Y.float_matrix * X.float_matrix;
    DecayRow row;
    row.cutoff = F;
    row.commutator_norm = spectral_norm(C);
    const FourierTable tf = fourier_coefficients(f, F);
    const FourierTable tg = fourier_coefficients(g, F);
    std::complex<double> pairing(0.0);
    for (long m = -F; m <= F; ++m)
      pairing += static_cast<double>(m) * tf.value(m) * tg.value(-m);
    row.pairing_scalar = pairing;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace voa
