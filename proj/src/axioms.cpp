#include "voa/axioms.hpp"

#include <algorithm>
#include <stdexcept>

namespace voa {

std::string to_string(GridOutcome o) {
  switch (o) {
    case GridOutcome::ExactZero: return "exact-zero";
    case GridOutcome::Nonzero: return "nonzero";
    case GridOutcome::OutOfWindow: return "out-of-window";
  }
  return "?";
}

AdjointModeFamily::AdjointModeFamily(const FieldCalculus& calc, const GramForm& gram,
                                     GradedVector state)
    : calc_(&calc), gram_(&gram), state_(std::move(state)) {}

const GradedOperator& AdjointModeFamily::adjoint_matrix(long n) const {
  std::lock_guard<std::mutex> lock(mutex_);
  const auto it = adj_.find(n);
  if (it != adj_.end()) return it->second;
  return adj_.emplace(n, gram_->adjoint(calc_->mode_matrix(state_, n))).first->second;
}

GradedVector AdjointModeFamily::apply(long index, const GradedVector& v) const {
  return adjoint_matrix(-index - 2).apply(v);
}

namespace {

struct GridScan {
  std::map<std::pair<long, long>, GridOutcome> grid;
  std::map<std::pair<long, long>, int> required;
  std::vector<LocalityWitness> witnesses;

  bool passed() const {
    for (const auto& [mn, o] : grid)
      if (o == GridOutcome::Nonzero) return false;
    return true;
  }
};

GridScan scan_order(const Model& model, const ModeFamily& a, const ModeFamily& b, long N,
                    long m_min, long m_max, long n_min, long n_max, int level_cap) {
  GridScan out;
  std::vector<Rational> binom(static_cast<std::size_t>(N) + 1);
  for (long j = 0; j <= N; ++j) binom[j] = binomial(N, j);

  for (long m = m_min; m <= m_max; ++m) {
    for (long n = n_min; n <= n_max; ++n) {
      bool nonzero = false;
      bool oow = false;
      int req = 0;
      for (int lvl = 0; lvl <= std::min(level_cap, model.window().e_max) && !nonzero; ++lvl) {
        for (int idx = 0; idx < model.dim(lvl) && !nonzero; ++idx) {
          const GradedVector v = GradedVector::unit({lvl, idx});
          GradedVector sum;
          try {
            for (long j = 0; j <= N; ++j) {
              const long p = m + N - j;
              const long q = n + j;
              GradedVector comm = a.apply(p, b.apply(q, v));
              comm -= b.apply(q, a.apply(p, v));
              Scalar cf{(j % 2) ? -binom[j] : binom[j]};
              comm *= cf;
              sum += comm;
            }
          } catch (const OutOfWindowError& e) {
            oow = true;
            req = std::max(req, e.required_e_max());
            continue;
          }
          if (!sum.is_zero()) {
            nonzero = true;
            out.witnesses.push_back({m, n, {lvl, idx}, sum});
          }
        }
      }
      const auto key = std::make_pair(m, n);
      if (nonzero) out.grid[key] = GridOutcome::Nonzero;
      else if (oow) {
        out.grid[key] = GridOutcome::OutOfWindow;
        out.required[key] = req;
      } else {
        out.grid[key] = GridOutcome::ExactZero;
      }
    }
  }
  return out;
}

}  // namespace

LocalityReport locality_test(const Model& model, const ModeFamily& a, const ModeFamily& b,
                             long N, long m_min, long m_max, long n_min, long n_max,
                             int level_cap) {
  if (N < 0) throw std::invalid_argument("locality_test: order must be >= 0");
  LocalityReport report;
  report.order = N;
  report.m_min = m_min;
  report.m_max = m_max;
  report.n_min = n_min;
  report.n_max = n_max;
  report.level_cap = level_cap;

  GridScan main = scan_order(model, a, b, N, m_min, m_max, n_min, n_max, level_cap);
  report.grid = std::move(main.grid);
  report.required_e_max = std::move(main.required);
  report.witnesses = std::move(main.witnesses);

  for (long order = 0; order <= N; ++order) {
    if (order == N) {
      if (report.passed()) report.minimal_passing_order = N;
      break;
    }
    const GridScan scan = scan_order(model, a, b, order, m_min, m_max, n_min, n_max, level_cap);
    if (scan.passed()) {
      report.minimal_passing_order = order;
      break;
    }
  }
  return report;
}

LocalityReport locality_test(const FieldCalculus& calc, const GradedVector& a,
                             const GradedVector& b, long N, long index_bound, int level_cap) {
  const StateModeFamily fa(calc, a);
  const StateModeFamily fb(calc, b);
  return locality_test(calc.model(), fa, fb, N, -index_bound, index_bound, -index_bound,
                       index_bound, level_cap);
}

BracketCheckReport virasoro_bracket_check(const FieldCalculus& calc, long index_bound,
                                          int level_cap) {
  BracketCheckReport report;
  const Model& model = calc.model();
  const Scalar c = calc.central_charge();
  for (long n = -index_bound; n <= index_bound; ++n) {
    for (long m = -index_bound; m <= index_bound; ++m) {
      for (int lvl = 0; lvl <= std::min(level_cap, model.window().e_max); ++lvl) {
        for (int idx = 0; idx < model.dim(lvl); ++idx) {
          const GradedVector v = GradedVector::unit({lvl, idx});
          try {
            GradedVector lhs = calc.apply_virasoro(n, calc.apply_virasoro(m, v));
            lhs -= calc.apply_virasoro(m, calc.apply_virasoro(n, v));
            GradedVector rhs = calc.apply_virasoro(n + m, v);
            rhs *= Scalar(Rational(n - m));
            if (n == -m) {
              GradedVector central = v;
              central *= c * Scalar(Rational(n * n * n - n, 12));
              rhs += central;
            }
            ++report.checked;
            if (!(lhs == rhs)) {
              report.passed = false;
              report.witnesses.push_back({n, m, {lvl, idx}, lhs, rhs});
            }
          } catch (const OutOfWindowError& e) {
            ++report.out_of_window;
            report.max_required_e_max = std::max(report.max_required_e_max, e.required_e_max());
          }
        }
      }
    }
  }
  return report;
}

VtgReport vacuum_translation_grading_check(
    const FieldCalculus& calc, const std::vector<std::pair<std::string, GradedVector>>& states,
    long n_min, long n_max, int level_cap) {
  VtgReport report;
  const Model& model = calc.model();
  const GradedVector vac = model.vacuum();

  auto fail = [&](const std::string& state, const std::string& check, long n, LevelIndex v) {
    report.passed = false;
    report.witnesses.push_back({state, check, n, v});
  };

  for (const auto& [name, a] : states) {
    const int d = calc.weight_of(a);
    // vacuum axiom: creation by a_{(-1)} and annihilation for n >= 0
    try {
      if (!(calc.apply_mode(a, -1, vac) == a)) fail(name, "a_(-1)Omega = a", -1, {0, 0});
      ++report.checked;
    } catch (const OutOfWindowError&) {
      ++report.out_of_window;
    }
    for (long n = 0; n <= n_max; ++n) {
      try {
        if (!calc.apply_mode(a, n, vac).is_zero()) fail(name, "a_(n)Omega = 0", n, {0, 0});
        ++report.checked;
      } catch (const OutOfWindowError&) {
        ++report.out_of_window;
      }
    }
    // translation and grading in mode form on window vectors
    for (long n = n_min; n <= n_max; ++n) {
      for (int lvl = 0; lvl <= std::min(level_cap, model.window().e_max); ++lvl) {
        for (int idx = 0; idx < model.dim(lvl); ++idx) {
          const GradedVector v = GradedVector::unit({lvl, idx});
          try {
            GradedVector lhs = calc.apply_virasoro(-1, calc.apply_mode(a, n, v));
            lhs -= calc.apply_mode(a, n, calc.apply_virasoro(-1, v));
            GradedVector rhs = calc.apply_mode(a, n - 1, v);
            rhs *= Scalar(Rational(-n));
            ++report.checked;
            if (!(lhs == rhs)) fail(name, "[L_-1, a_(n)] = -n a_(n-1)", n, {lvl, idx});
          } catch (const OutOfWindowError&) {
            ++report.out_of_window;
          }
          try {
            GradedVector lhs = calc.apply_virasoro(0, calc.apply_mode(a, n, v));
            lhs -= calc.apply_mode(a, n, calc.apply_virasoro(0, v));
            GradedVector rhs = calc.apply_mode(a, n, v);
            rhs *= Scalar(Rational(d - n - 1));
            ++report.checked;
            if (!(lhs == rhs)) fail(name, "[L_0, a_(n)] = (d-n-1) a_(n)", n, {lvl, idx});
          } catch (const OutOfWindowError&) {
            ++report.out_of_window;
          }
        }
      }
    }
  }

  // L_0 acts as level * id; Ker(L_0) is spanned by the vacuum
  report.kernel_l0_dimension = 0;
  for (int lvl = 0; lvl <= model.window().e_max; ++lvl) {
    for (int idx = 0; idx < model.dim(lvl); ++idx) {
      const GradedVector v = GradedVector::unit({lvl, idx});
      GradedVector lv = calc.apply_virasoro(0, v);
      GradedVector expect = v;
      expect *= Scalar(Rational(lvl));
      ++report.checked;
      if (!(lv == expect)) fail("L_0", "L_0 = level id", 0, {lvl, idx});
      if (lvl == 0) ++report.kernel_l0_dimension;
    }
  }
  if (report.kernel_l0_dimension != 1) {
    fail("L_0", "dim Ker(L_0) = 1", 0, {0, 0});
  }
  return report;
}

AdjointTable adjoint_modes(const FieldCalculus& calc, const GramForm& gram,
                           const GradedVector& a, long n_min, long n_max) {
  AdjointTable table;
  table.state = a;
  const Model& model = calc.model();
  table.relation_verified = true;
  for (long n = n_min; n <= n_max; ++n) {
    GradedOperator adj = gram.adjoint(calc.mode_matrix(a, n));
    // verify (a_(n)^+ b | c) = (b | a_(n) c) on all basis pairs where both
    // sides are computable in-window
    for (int lb = 0; lb <= model.window().e_max; ++lb) {
      for (int ib = 0; ib < model.dim(lb); ++ib) {
        const GradedVector b = GradedVector::unit({lb, ib});
        GradedVector adj_b;
        bool adj_ok = true;
        try {
          adj_b = adj.apply(b);
        } catch (const OutOfWindowError&) {
          adj_ok = false;
        }
        for (int lc = 0; lc <= model.window().e_max; ++lc) {
          for (int ic = 0; ic < model.dim(lc); ++ic) {
            const GradedVector cvec = GradedVector::unit({lc, ic});
            try {
              const GradedVector a_c = calc.apply_mode(a, n, cvec);
              if (!adj_ok) {
                ++table.relation_pairs_out_of_window;
                continue;
              }
              ++table.relation_pairs_checked;
              if (!(gram.pair(adj_b, cvec) == gram.pair(b, a_c)))
                table.relation_verified = false;
            } catch (const OutOfWindowError&) {
              ++table.relation_pairs_out_of_window;
            }
          }
        }
      }
    }
    table.adjoints.emplace(n, std::move(adj));
  }
  return table;
}

LocalityReport unitarity_test(const FieldCalculus& calc, const GramForm& gram,
                              const GradedVector& a, const GradedVector& b, long N,
                              long index_bound, int level_cap) {
  const AdjointModeFamily fa(calc, gram, a);
  const StateModeFamily fb(calc, b);
  return locality_test(calc.model(), fa, fb, N, -index_bound, index_bound, -index_bound,
                       index_bound, level_cap);
}

std::vector<GramScanEntry> gram_spectrum_scan(const ModelSpec& spec, int level_max,
                                              const std::vector<Scalar>& c_values) {
  std::vector<GramScanEntry> out;
  if (level_max > spec.e_max)
    throw std::invalid_argument("gram_spectrum_scan: level_max exceeds the window");
  if (c_values.empty()) {
    const Model model = Model::build(spec);
    const GramForm& gram = model.gram();
    for (int l = 0; l <= level_max; ++l) {
      GramScanEntry e;
      e.level = l;
      e.dimension = model.dim(l);
      if (model.dim(l) > 0) e.ldl = ldl_definiteness(gram.level(l));
      out.push_back(std::move(e));
    }
    return out;
  }
  if (spec.kind != ModelSpec::Kind::Virasoro)
    throw std::invalid_argument("gram_spectrum_scan: c sweep requires the Virasoro model");
  for (const Scalar& c : c_values) {
    ModelSpec s = spec;
    s.c = c;
    const Model model = Model::build(s);
    const GramForm& gram = model.gram();
    for (int l = 0; l <= level_max; ++l) {
      GramScanEntry e;
      e.c = c;
      e.level = l;
      e.dimension = model.dim(l);
      if (model.dim(l) > 0) e.ldl = ldl_definiteness(gram.level(l));
      out.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace voa
