#include "voa/runner.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <nlohmann/json.hpp>
#include <sstream>

#include "voa/axioms.hpp"
#include "voa/norms.hpp"
#include "voa/smearing.hpp"
#include "voa/star_algebra.hpp"

namespace voa {

using nlohmann::json;

std::string format_double17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string format_complex17(const std::complex<double>& z) {
  return format_double17(z.real()) + (z.imag() < 0 ? "" : "+") + format_double17(z.imag()) + "i";
}

GradedVector resolve_state(const FieldCalculus& calc, const StateRef& ref) {
  const Model& model = calc.model();
  if (ref.is_word) {
    if (model.is_tensor())
      throw ConfigError("state", "explicit words address pure models only");
    const int level = partition_level(ref.word);
    if (level > model.window().e_max)
      throw ConfigError("state", "word level exceeds the window");
    return GradedVector::unit({level, model.index_of_leaf_partition(level, ref.word)});
  }
  if (ref.name == "vacuum") return model.vacuum();
  if (ref.name == "nu") return calc.conformal_vector();
  if (ref.name == "alpha") {
    if (model.spec().kind != ModelSpec::Kind::Heisenberg)
      throw ConfigError("state", "'alpha' names the Heisenberg generator; model kind is " +
                                     model.spec().kind_name());
    return GradedVector::unit({1, 0});
  }
  throw ConfigError("state", "unknown state '" + ref.name + "'");
}

json vector_json(const Model& model, const GradedVector& v) {
  json out = json::array();
  for (const auto& [at, coeff] : v.entries()) {
    out.push_back({{"level", at.level},
                   {"index", at.index},
                   {"state", model.basis_label(at)},
                   {"coefficient", format_scalar(coeff)}});
  }
  return out;
}

json locality_json(const Model& model, const LocalityReport& rep) {
  json out;
  out["order"] = rep.order;
  out["index_range"] = {{"m_min", rep.m_min},
                        {"m_max", rep.m_max},
                        {"n_min", rep.n_min},
                        {"n_max", rep.n_max}};
  out["level_cap"] = rep.level_cap;
  long zero = 0, nonzero = 0, oow = 0;
  json flagged = json::array();
  for (const auto& [mn, o] : rep.grid) {
    if (o == GridOutcome::ExactZero) ++zero;
    else if (o == GridOutcome::Nonzero) ++nonzero;
    else ++oow;
    if (o != GridOutcome::ExactZero) {
      json e = {{"m", mn.first}, {"n", mn.second}, {"outcome", to_string(o)}};
      const auto it = rep.required_e_max.find(mn);
      if (it != rep.required_e_max.end()) e["required_e_max"] = it->second;
      flagged.push_back(std::move(e));
    }
  }
  out["grid_points"] = {{"exact_zero", zero}, {"nonzero", nonzero}, {"out_of_window", oow}};
  out["flagged_points"] = std::move(flagged);
  out["passed"] = rep.passed();
  if (rep.minimal_passing_order) out["minimal_passing_order"] = *rep.minimal_passing_order;
  json wit = json::array();
  for (std::size_t i = 0; i < rep.witnesses.size() && i < 5; ++i) {
    const auto& w = rep.witnesses[i];
    wit.push_back({{"m", w.m},
                   {"n", w.n},
                   {"vector", model.basis_label(w.vector)},
                   {"residual", vector_json(model, w.residual)}});
  }
  out["witnesses"] = std::move(wit);
  out["witness_count"] = rep.witnesses.size();
  return out;
}

SuiteResult suite_axioms(const RunConfig& cfg, const FieldCalculus& calc) {
  const AxiomsConfig& ax = *cfg.axioms;
  const Model& model = calc.model();
  SuiteResult res;
  res.name = "axioms";
  bool ok = true;

  json loc = json::array();
  for (const auto& job : ax.locality) {
    const GradedVector a = resolve_state(calc, job.a);
    const GradedVector b = resolve_state(calc, job.b);
    const LocalityReport rep =
        locality_test(calc, a, b, job.order, ax.locality_index_bound, ax.locality_level_cap);
    json e = locality_json(model, rep);
    e["a"] = job.a.describe();
    e["b"] = job.b.describe();
    ok = ok && rep.passed();
    loc.push_back(std::move(e));
  }
  res.payload["locality"] = std::move(loc);

  const BracketCheckReport br =
      virasoro_bracket_check(calc, ax.bracket_index_bound, ax.bracket_level_cap);
  json brj = {{"passed", br.passed},
              {"checked", br.checked},
              {"out_of_window", br.out_of_window},
              {"index_bound", ax.bracket_index_bound},
              {"level_cap", ax.bracket_level_cap},
              {"central_charge", format_scalar(calc.central_charge())}};
  json brw = json::array();
  for (std::size_t i = 0; i < br.witnesses.size() && i < 5; ++i) {
    const auto& w = br.witnesses[i];
    brw.push_back({{"n", w.n},
                   {"m", w.m},
                   {"vector", model.basis_label(w.vector)},
                   {"lhs", vector_json(model, w.lhs)},
                   {"rhs", vector_json(model, w.rhs)}});
  }
  brj["witnesses"] = std::move(brw);
  res.payload["virasoro_bracket"] = std::move(brj);
  ok = ok && br.passed;

  std::vector<std::pair<std::string, GradedVector>> states;
  for (const auto& ref : ax.vtg_states) states.emplace_back(ref.describe(), resolve_state(calc, ref));
  for (int lvl = 0; lvl <= std::min(ax.vtg_max_state_level, model.window().e_max); ++lvl)
    for (int idx = 0; idx < model.dim(lvl); ++idx)
      states.emplace_back(model.basis_label({lvl, idx}), GradedVector::unit({lvl, idx}));
  const VtgReport vtg = vacuum_translation_grading_check(calc, states, ax.vtg_index_min,
                                                         ax.vtg_index_max, ax.vtg_level_cap);
  json vtgj = {{"passed", vtg.passed},
               {"checked", vtg.checked},
               {"out_of_window", vtg.out_of_window},
               {"states", states.size()},
               {"kernel_L0_dimension", vtg.kernel_l0_dimension}};
  json vtgw = json::array();
  for (std::size_t i = 0; i < vtg.witnesses.size() && i < 5; ++i) {
    const auto& w = vtg.witnesses[i];
    vtgw.push_back(
        {{"state", w.state}, {"check", w.check}, {"n", w.n}, {"vector", model.basis_label(w.vector)}});
  }
  vtgj["witnesses"] = std::move(vtgw);
  res.payload["vacuum_translation_grading"] = std::move(vtgj);
  ok = ok && vtg.passed;

  res.status = ok ? "pass" : "fail";
  return res;
}

json ldl_json(const Model& model, int level, const LdlResult& ldl) {
  json e;
  e["classification"] = to_string(ldl.classification);
  e["inertia"] = {{"positive", ldl.inertia.positive},
                  {"zero", ldl.inertia.zero},
                  {"negative", ldl.inertia.negative}};
  if (!ldl.kernel.empty()) {
    json kernels = json::array();
    for (const auto& vec : ldl.kernel) {
      json kv = json::array();
      for (std::size_t i = 0; i < vec.size(); ++i) {
        if (vec[i].is_zero()) continue;
        kv.push_back({{"state", model.basis_label({level, static_cast<int>(i)})},
                      {"coefficient", format_scalar(vec[i])}});
      }
      kernels.push_back(std::move(kv));
    }
    e["kernel_vectors"] = std::move(kernels);
  }
  return e;
}

SuiteResult suite_unitarity(const RunConfig& cfg, const FieldCalculus& calc) {
  const UnitarityConfig& un = *cfg.unitarity;
  const Model& model = calc.model();
  SuiteResult res;
  res.name = "unitarity";
  bool ok = true;

  const int lmax = un.gram_level_max < 0 ? model.window().e_max : un.gram_level_max;
  json scan = json::array();
  if (un.c_sweep.empty()) {
    for (int l = 0; l <= lmax; ++l) {
      if (model.dim(l) == 0) continue;
      const LdlResult ldl = ldl_definiteness(model.gram().level(l));
      json e = ldl_json(model, l, ldl);
      e["level"] = l;
      e["dimension"] = model.dim(l);
      scan.push_back(std::move(e));
    }
  } else {
    const auto entries = gram_spectrum_scan(cfg.model, lmax, un.c_sweep);
    for (const auto& entry : entries) {
      if (entry.dimension == 0) continue;
      json e = ldl_json(model, entry.level, entry.ldl);
      e["level"] = entry.level;
      e["dimension"] = entry.dimension;
      if (entry.c) e["c"] = format_scalar(*entry.c);
      scan.push_back(std::move(e));
    }
  }
  res.payload["gram_scan"] = std::move(scan);

  json adj = json::array();
  for (const auto& ref : un.adjoint_states) {
    const GradedVector a = resolve_state(calc, ref);
    const AdjointTable table =
        adjoint_modes(calc, model.gram(), a, -un.adjoint_index_bound, un.adjoint_index_bound);
    adj.push_back({{"state", ref.describe()},
                   {"index_bound", un.adjoint_index_bound},
                   {"relation_verified", table.relation_verified},
                   {"pairs_checked", table.relation_pairs_checked},
                   {"pairs_out_of_window", table.relation_pairs_out_of_window}});
    ok = ok && table.relation_verified;
  }
  res.payload["adjoint_modes"] = std::move(adj);

  json pairs = json::array();
  for (const auto& job : un.pairs) {
    const GradedVector a = resolve_state(calc, job.a);
    const GradedVector b = resolve_state(calc, job.b);
    const LocalityReport rep =
        unitarity_test(calc, model.gram(), a, b, job.order, un.index_bound, un.level_cap);
    json e = locality_json(model, rep);
    e["a"] = job.a.describe();
    e["b"] = job.b.describe();
    ok = ok && rep.passed();
    pairs.push_back(std::move(e));
  }
  res.payload["unitarity_locality"] = std::move(pairs);

  res.status = ok ? "pass" : "fail";
  return res;
}

SuiteResult suite_energy_bounds(const RunConfig& cfg, const FieldCalculus& calc) {
  const EnergyBoundsConfig& eb = *cfg.energy_bounds;
  SuiteResult res;
  res.name = "energy-bounds";
  res.status = "info";

  // capture by name so every window rebuild resolves the state on its own model
  const StateRef ref = eb.state;
  const EnergyBoundReport rep = energy_bound_estimate(
      cfg.model, [&ref](const FieldCalculus& c) { return resolve_state(c, ref); }, eb.s, eb.k,
      eb.index_bound, eb.windows);
  (void)calc;

  json windows = json::array();
  std::ostringstream csv;
  csv << "e_max,n,mode_norm,ratio\n";
  for (const auto& w : rep.windows) {
    json rows = json::array();
    for (const auto& r : w.rows) {
      rows.push_back({{"n", r.n},
                      {"mode_norm", format_double17(r.mode_norm)},
                      {"ratio", format_double17(r.ratio)}});
      csv << w.e_max << "," << r.n << "," << format_double17(r.mode_norm) << ","
          << format_double17(r.ratio) << "\n";
    }
    windows.push_back({{"e_max", w.e_max},
                       {"M_est", format_double17(w.m_est)},
                       {"skipped_blocks", w.skipped_blocks},
                       {"rows", std::move(rows)}});
  }
  res.payload = {{"s", rep.s},
                 {"k", rep.k},
                 {"index_bound", rep.index_bound},
                 {"state", eb.state.describe()},
                 {"windows", std::move(windows)},
                 {"note", "each report states its window; M_est is non-decreasing under window growth"}};
  res.csv_files.emplace_back("energy_bounds.csv", csv.str());
  return res;
}

SuiteResult suite_smearing(const RunConfig& cfg, const FieldCalculus& calc) {
  const SmearingConfig& sm = *cfg.smearing;
  const Model& model = calc.model();
  SuiteResult res;
  res.name = "smearing";
  bool ok = true;
  bool any_exact_check = false;

  if (sm.identities) {
    any_exact_check = true;
    json idj = json::array();
    const WindowLayout layout = WindowLayout::of(model);
    auto embed = [&](const GradedOperator& op) {
      ExactMatrix full(static_cast<std::size_t>(layout.dim), static_cast<std::size_t>(layout.dim));
      for (const auto& [m, B] : op.blocks()) {
        const int t = m + op.shift();
        for (std::size_t r = 0; r < B.rows(); ++r)
          for (std::size_t c = 0; c < B.cols(); ++c)
            full(static_cast<std::size_t>(layout.offset(t)) + r,
                 static_cast<std::size_t>(layout.offset(m)) + c) = B(r, c);
      }
      return full;
    };

    // single Fourier mode f_k = 1 smears to the shifted mode a_k
    const GradedVector nu = calc.conformal_vector();
    struct IdCase {
      std::string name;
      GradedVector state;
      long k;
    };
    std::vector<IdCase> cases;
    if (model.spec().kind == ModelSpec::Kind::Heisenberg) {
      cases.push_back({"alpha_k, k=2", GradedVector::unit({1, 0}), 2});
      cases.push_back({"alpha_k, k=-1", GradedVector::unit({1, 0}), -1});
    }
    cases.push_back({"nu_k, k=1", nu, 1});
    for (const auto& c : cases) {
      TestFunction f = TestFunction::trig_poly({{c.k, Scalar(1)}});
      const SmearedOperator sop = smear(calc, c.state, f, std::abs(c.k) + 1);
      const int d = calc.weight_of(c.state);
      const ExactMatrix expect = embed(calc.mode_matrix(c.state, c.k + d - 1));
      const bool match = sop.exact_matrix == expect;
      ok = ok && match;
      idj.push_back({{"case", "single mode " + c.name}, {"exact_match", match}});
    }
    // f = 1 on nu gives L_0
    {
      const SmearedOperator sop = smear(calc, nu, TestFunction::constant(Scalar(1)), 4);
      const ExactMatrix expect = embed(calc.mode_matrix(nu, 1));
      const bool match = sop.exact_matrix == expect;
      ok = ok && match;
      idj.push_back({{"case", "f=1 on nu reproduces L_0"}, {"exact_match", match}});
    }
    // zero state smears to the zero matrix
    {
      const SmearedOperator sop = smear(calc, GradedVector(), TestFunction::constant(Scalar(1)), 4);
      const bool match = sop.exact_matrix.is_zero();
      ok = ok && match;
      idj.push_back({{"case", "zero state"}, {"exact_match", match}});
    }
    res.payload["identities"] = std::move(idj);
  }

  if (sm.decay) {
    const DecayConfig& dc = *sm.decay;
    const Arc arc1(dc.arc1_start, dc.arc1_end);
    const Arc arc2(dc.arc2_start, dc.arc2_end);
    const DecayReport rep = commutator_decay(calc, resolve_state(calc, dc.a),
                                             resolve_state(calc, dc.b), arc1, arc2, dc.samples,
                                             dc.cutoffs);
    json rows = json::array();
    std::ostringstream csv;
    csv << "F,e_max,norm\n";
    for (const auto& r : rep.rows) {
      rows.push_back({{"F", r.cutoff},
                      {"commutator_norm", format_double17(r.commutator_norm)},
                      {"pairing_scalar", format_complex17(r.pairing_scalar)},
                      {"pairing_abs", format_double17(std::abs(r.pairing_scalar))}});
      csv << r.cutoff << "," << model.window().e_max << ","
          << format_double17(r.commutator_norm) << "\n";
    }
    res.payload["decay"] = {{"arc1", rep.arc1},
                            {"arc2", rep.arc2},
                            {"samples", rep.sample_count},
                            {"product_semantics", rep.product_semantics},
                            {"rows", std::move(rows)}};
    res.csv_files.emplace_back("decay.csv", csv.str());
  }

  res.status = any_exact_check ? (ok ? "pass" : "fail") : "info";
  return res;
}

SuiteResult suite_net(const RunConfig& cfg, const FieldCalculus& calc) {
  const NetConfig& nc = *cfg.net;
  SuiteResult res;
  res.name = "net";
  res.status = "info";

  std::vector<GradedVector> states;
  for (const auto& ref : nc.states) states.push_back(resolve_state(calc, ref));
  std::vector<Arc> arcs;
  for (const auto& [s, e] : nc.arcs) arcs.emplace_back(s, e);

  const NetReport rep =
      net_report(calc, states, arcs, nc.samples, nc.cutoff, nc.stabilization_limit);
  json iso = json::array();
  for (const auto& e : rep.isotony)
    iso.push_back({{"inner", e.inner},
                   {"outer", e.outer},
                   {"contained", e.contained},
                   {"residual", format_double17(e.residual)}});
  json locj = json::array();
  std::ostringstream csv;
  csv << "arc_i,arc_j,max_commutator_norm\n";
  for (const auto& e : rep.locality) {
    locj.push_back({{"first", e.first},
                    {"second", e.second},
                    {"max_commutator_norm", format_double17(e.max_commutator_norm)}});
    csv << e.first << "," << e.second << "," << format_double17(e.max_commutator_norm) << "\n";
  }
  res.payload = {{"arcs", rep.arcs},
                 {"algebra_dimensions", rep.algebra_dimensions},
                 {"isotony", std::move(iso)},
                 {"locality", std::move(locj)},
                 {"cyclic_span_dimension", rep.cyclic_span_dimension},
                 {"window_dimension", rep.window_dimension},
                 {"union_commutant_dimension", rep.union_commutant_dimension},
                 {"double_commutant_ok", rep.double_commutant_ok},
                 {"product_semantics", rep.product_semantics},
                 {"cutoff", nc.cutoff},
                 {"samples", nc.samples}};
  res.csv_files.emplace_back("net_locality.csv", csv.str());
  return res;
}

json model_json(const ModelSpec& spec) {
  json j;
  j["kind"] = spec.kind_name();
  j["e_max"] = spec.e_max;
  if (spec.kind == ModelSpec::Kind::Virasoro) j["c"] = format_scalar(spec.c);
  if (spec.kind == ModelSpec::Kind::Tensor) {
    j["left"] = model_json(*spec.left);
    j["right"] = model_json(*spec.right);
  }
  return j;
}

}  // namespace

RunOutcome run_suites(const RunConfig& cfg, int threads) {
  RunOutcome out;
  const Model model = Model::build(cfg.model);
  const FieldCalculus calc(model);

  using SuiteFn = SuiteResult (*)(const RunConfig&, const FieldCalculus&);
  std::vector<std::pair<std::string, SuiteFn>> plan;
  for (const auto& name : cfg.suites) {
    if (name == "axioms") plan.emplace_back(name, &suite_axioms);
    else if (name == "unitarity") plan.emplace_back(name, &suite_unitarity);
    else if (name == "energy-bounds") plan.emplace_back(name, &suite_energy_bounds);
    else if (name == "smearing") plan.emplace_back(name, &suite_smearing);
    else if (name == "net") plan.emplace_back(name, &suite_net);
  }

  auto timed = [&cfg, &calc](SuiteFn fn) {
    const auto start = std::chrono::steady_clock::now();
    SuiteResult r = fn(cfg, calc);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  };

  if (threads == 1 || plan.size() <= 1) {
    for (const auto& [name, fn] : plan) out.suites.push_back(timed(fn));
  } else {
    std::vector<std::future<SuiteResult>> futures;
    futures.reserve(plan.size());
    for (const auto& [name, fn] : plan)
      futures.push_back(std::async(std::launch::async, timed, fn));
    for (auto& f : futures) out.suites.push_back(f.get());
  }

  out.report["report_version"] = 1;
  out.report["config"] = {{"model", model_json(cfg.model)},
                          {"suites", cfg.suites},
                          {"e_max_cap", cfg.e_max_cap}};
  out.report["window"] = {{"e_max", model.window().e_max},
                          {"dimension", model.window_dimension()}};
  out.report["central_charge"] = format_scalar(model.central_charge());
  json suites = json::object();
  bool any_fail = false;
  for (const auto& s : out.suites) {
    json e = s.payload;
    e["status"] = s.status;
    suites[s.name] = std::move(e);
    if (s.status == "fail") any_fail = true;
  }
  out.report["suites"] = std::move(suites);
  out.report["overall"] = any_fail ? "fail" : "pass";
  out.exit_code = any_fail ? 1 : 0;

  json timings = json::object();
  for (const auto& s : out.suites) timings[s.name] = s.seconds;
  out.run_log["timings_seconds"] = std::move(timings);
  out.run_log["threads"] = threads;
  return out;
}

void write_outputs(const RunOutcome& outcome, const RunConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  if (cfg.write_json) {
    std::ofstream f(fs::path(cfg.out_dir) / "report.json");
    f << outcome.report.dump(2) << "\n";
  }
  if (cfg.write_csv) {
    for (const auto& s : outcome.suites)
      for (const auto& [name, content] : s.csv_files) {
        std::ofstream f(fs::path(cfg.out_dir) / name);
        f << content;
      }
  }
  std::ofstream log(fs::path(cfg.out_dir) / "run_log.json");
  log << outcome.run_log.dump(2) << "\n";
}

}  // namespace voa
