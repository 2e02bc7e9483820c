#include "voa/config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <set>

namespace voa {

using nlohmann::json;

std::string StateRef::describe() const {
  if (!is_word) return name;
  std::string out = "word[";
  for (std::size_t i = 0; i < word.size(); ++i) out += (i ? "," : "") + std::to_string(word[i]);
  return out + "]";
}

namespace {

const json& require(const json& j, const std::string& key, const std::string& path) {
  const auto it = j.find(key);
  if (it == j.end()) throw ConfigError(path + key, "missing");
  return *it;
}

long as_long(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<long>();
}

Rational as_rational(const json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(path, "expected a rational as \"p/q\" or an integer");
}

StateRef as_state(const json& j, const std::string& path) {
  StateRef s;
  if (j.is_string()) {
    s.name = j.get<std::string>();
    static const std::set<std::string> known{"vacuum", "alpha", "nu"};
    if (!known.count(s.name))
      throw ConfigError(path, "unknown state '" + s.name + "' (use vacuum, alpha, nu or {\"word\": [...]})");
    return s;
  }
  if (j.is_object() && j.contains("word")) {
    const json& w = j.at("word");
    if (!w.is_array()) throw ConfigError(path + ".word", "expected an array of parts");
    s.is_word = true;
    for (const auto& p : w) {
      const long part = as_long(p, path + ".word");
      if (part < 1) throw ConfigError(path + ".word", "parts must be positive");
      s.word.push_back(static_cast<int>(part));
    }
    for (std::size_t i = 1; i < s.word.size(); ++i)
      if (s.word[i] > s.word[i - 1])
        throw ConfigError(path + ".word", "parts must be weakly decreasing");
    return s;
  }
  throw ConfigError(path, "expected a state name or {\"word\": [...]}");
}

std::vector<LocalityJob> as_jobs(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of {a, b, N}");
  std::vector<LocalityJob> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    LocalityJob job;
    job.a = as_state(require(j[i], "a", p + "."), p + ".a");
    job.b = as_state(require(j[i], "b", p + "."), p + ".b");
    job.order = as_long(require(j[i], "N", p + "."), p + ".N");
    if (job.order < 0) throw ConfigError(p + ".N", "order must be >= 0");
    out.push_back(std::move(job));
  }
  return out;
}

ModelSpec parse_model(const json& j, const std::string& path) {
  const std::string kind = require(j, "kind", path).get<std::string>();
  const int e_max = static_cast<int>(as_long(require(j, "e_max", path), path + "e_max"));
  if (e_max < 0) throw ConfigError(path + "e_max", "must be >= 0");
  if (kind == "heisenberg") return ModelSpec::heisenberg(e_max);
  if (kind == "virasoro") {
    const Rational c = as_rational(require(j, "c", path), path + "c");
    return ModelSpec::virasoro(Scalar(c), e_max);
  }
  if (kind == "tensor") {
    ModelSpec left = parse_model(require(j, "left", path), path + "left.");
    ModelSpec right = parse_model(require(j, "right", path), path + "right.");
    if (left.e_max != e_max || right.e_max != e_max)
      throw ConfigError(path + "e_max", "tensor window must equal the component windows");
    return ModelSpec::tensor(std::move(left), std::move(right));
  }
  throw ConfigError(path + "kind", "unknown model kind '" + kind +
                                       "' (heisenberg | virasoro | tensor)");
}

std::pair<Rational, Rational> parse_arc(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2)
    throw ConfigError(path, "expected [start, end] as rational multiples of pi");
  return {as_rational(j[0], path + "[0]"), as_rational(j[1], path + "[1]")};
}

}  // namespace

RunConfig RunConfig::parse(const json& j) {
  RunConfig cfg;
  cfg.model = parse_model(require(j, "model", ""), "model.");
  if (j.contains("e_max_cap")) {
    cfg.e_max_cap = static_cast<int>(as_long(j.at("e_max_cap"), "e_max_cap"));
    if (cfg.e_max_cap < 0) throw ConfigError("e_max_cap", "must be >= 0");
  }
  if (cfg.model.e_max > cfg.e_max_cap)
    throw ConfigError("model.e_max", "exceeds the hard cap of " + std::to_string(cfg.e_max_cap) +
                                         " (runs are desk-scale; raise e_max_cap deliberately)");

  const json& suites = require(j, "suites", "");
  if (!suites.is_array()) throw ConfigError("suites", "expected an array of suite names");
  static const std::set<std::string> known{"axioms", "unitarity", "energy-bounds", "smearing",
                                           "net"};
  for (const auto& s : suites) {
    const std::string name = s.get<std::string>();
    if (!known.count(name)) throw ConfigError("suites", "unknown suite '" + name + "'");
    cfg.suites.push_back(name);
  }

  if (j.contains("axioms")) {
    const json& a = j.at("axioms");
    AxiomsConfig ax;
    if (a.contains("locality")) ax.locality = as_jobs(a.at("locality"), "axioms.locality");
    if (a.contains("locality_index_bound"))
      ax.locality_index_bound = as_long(a.at("locality_index_bound"), "axioms.locality_index_bound");
    if (a.contains("locality_level_cap"))
      ax.locality_level_cap =
          static_cast<int>(as_long(a.at("locality_level_cap"), "axioms.locality_level_cap"));
    if (a.contains("bracket_index_bound"))
      ax.bracket_index_bound = as_long(a.at("bracket_index_bound"), "axioms.bracket_index_bound");
    if (a.contains("bracket_level_cap"))
      ax.bracket_level_cap =
          static_cast<int>(as_long(a.at("bracket_level_cap"), "axioms.bracket_level_cap"));
    if (a.contains("vtg_states")) {
      const json& st = a.at("vtg_states");
      if (!st.is_array()) throw ConfigError("axioms.vtg_states", "expected an array");
      for (std::size_t i = 0; i < st.size(); ++i)
        ax.vtg_states.push_back(as_state(st[i], "axioms.vtg_states[" + std::to_string(i) + "]"));
    }
    if (a.contains("vtg_max_state_level"))
      ax.vtg_max_state_level =
          static_cast<int>(as_long(a.at("vtg_max_state_level"), "axioms.vtg_max_state_level"));
    if (a.contains("vtg_index_min"))
      ax.vtg_index_min = as_long(a.at("vtg_index_min"), "axioms.vtg_index_min");
    if (a.contains("vtg_index_max"))
      ax.vtg_index_max = as_long(a.at("vtg_index_max"), "axioms.vtg_index_max");
    if (a.contains("vtg_level_cap"))
      ax.vtg_level_cap = static_cast<int>(as_long(a.at("vtg_level_cap"), "axioms.vtg_level_cap"));
    cfg.axioms = std::move(ax);
  }

  if (j.contains("unitarity")) {
    const json& u = j.at("unitarity");
    UnitarityConfig un;
    if (u.contains("gram_level_max"))
      un.gram_level_max =
          static_cast<int>(as_long(u.at("gram_level_max"), "unitarity.gram_level_max"));
    if (u.contains("c_sweep")) {
      const json& cs = u.at("c_sweep");
      if (!cs.is_array()) throw ConfigError("unitarity.c_sweep", "expected an array");
      for (std::size_t i = 0; i < cs.size(); ++i)
        un.c_sweep.push_back(
            Scalar(as_rational(cs[i], "unitarity.c_sweep[" + std::to_string(i) + "]")));
    }
    if (u.contains("adjoint_states")) {
      const json& st = u.at("adjoint_states");
      if (!st.is_array()) throw ConfigError("unitarity.adjoint_states", "expected an array");
      for (std::size_t i = 0; i < st.size(); ++i)
        un.adjoint_states.push_back(
            as_state(st[i], "unitarity.adjoint_states[" + std::to_string(i) + "]"));
    }
    if (u.contains("adjoint_index_bound"))
      un.adjoint_index_bound =
          as_long(u.at("adjoint_index_bound"), "unitarity.adjoint_index_bound");
    if (u.contains("pairs")) un.pairs = as_jobs(u.at("pairs"), "unitarity.pairs");
    if (u.contains("index_bound")) un.index_bound = as_long(u.at("index_bound"), "unitarity.index_bound");
    if (u.contains("level_cap"))
      un.level_cap = static_cast<int>(as_long(u.at("level_cap"), "unitarity.level_cap"));
    cfg.unitarity = std::move(un);
  }

  if (j.contains("energy_bounds")) {
    const json& e = j.at("energy_bounds");
    EnergyBoundsConfig eb;
    eb.state = as_state(require(e, "state", "energy_bounds."), "energy_bounds.state");
    eb.s = static_cast<int>(as_long(require(e, "s", "energy_bounds."), "energy_bounds.s"));
    eb.k = static_cast<int>(as_long(require(e, "k", "energy_bounds."), "energy_bounds.k"));
    if (e.contains("index_bound"))
      eb.index_bound = as_long(e.at("index_bound"), "energy_bounds.index_bound");
    const json& w = require(e, "windows", "energy_bounds.");
    if (!w.is_array() || w.empty())
      throw ConfigError("energy_bounds.windows", "expected a non-empty array of e_max values");
    for (std::size_t i = 0; i < w.size(); ++i)
      eb.windows.push_back(
          static_cast<int>(as_long(w[i], "energy_bounds.windows[" + std::to_string(i) + "]")));
    cfg.energy_bounds = std::move(eb);
  }

  if (j.contains("smearing")) {
    const json& sm = j.at("smearing");
    SmearingConfig s;
    if (sm.contains("identities")) {
      if (!sm.at("identities").is_boolean())
        throw ConfigError("smearing.identities", "expected a boolean");
      s.identities = sm.at("identities").get<bool>();
    }
    if (sm.contains("decay")) {
      const json& d = sm.at("decay");
      DecayConfig dec;
      dec.a = as_state(require(d, "a", "smearing.decay."), "smearing.decay.a");
      dec.b = as_state(require(d, "b", "smearing.decay."), "smearing.decay.b");
      const auto a1 = parse_arc(require(d, "arc1", "smearing.decay."), "smearing.decay.arc1");
      const auto a2 = parse_arc(require(d, "arc2", "smearing.decay."), "smearing.decay.arc2");
      dec.arc1_start = a1.first;
      dec.arc1_end = a1.second;
      dec.arc2_start = a2.first;
      dec.arc2_end = a2.second;
      if (d.contains("samples"))
        dec.samples = static_cast<int>(as_long(d.at("samples"), "smearing.decay.samples"));
      const json& cl = require(d, "cutoffs", "smearing.decay.");
      if (!cl.is_array() || cl.empty())
        throw ConfigError("smearing.decay.cutoffs", "expected a non-empty array");
      for (std::size_t i = 0; i < cl.size(); ++i)
        dec.cutoffs.push_back(as_long(cl[i], "smearing.decay.cutoffs[" + std::to_string(i) + "]"));
      s.decay = std::move(dec);
    }
    cfg.smearing = std::move(s);
  }

  if (j.contains("net")) {
    const json& n = j.at("net");
    NetConfig net;
    const json& st = require(n, "states", "net.");
    if (!st.is_array() || st.empty()) throw ConfigError("net.states", "expected a non-empty array");
    for (std::size_t i = 0; i < st.size(); ++i)
      net.states.push_back(as_state(st[i], "net.states[" + std::to_string(i) + "]"));
    const json& arcs = require(n, "arcs", "net.");
    if (!arcs.is_array() || arcs.empty()) throw ConfigError("net.arcs", "expected a non-empty array");
    for (std::size_t i = 0; i < arcs.size(); ++i)
      net.arcs.push_back(parse_arc(arcs[i], "net.arcs[" + std::to_string(i) + "]"));
    if (n.contains("samples"))
      net.samples = static_cast<int>(as_long(n.at("samples"), "net.samples"));
    if (n.contains("cutoff")) net.cutoff = as_long(n.at("cutoff"), "net.cutoff");
    if (n.contains("stabilization_limit"))
      net.stabilization_limit =
          static_cast<int>(as_long(n.at("stabilization_limit"), "net.stabilization_limit"));
    cfg.net = std::move(net);
  }

  if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
  if (j.contains("formats")) {
    const json& f = j.at("formats");
    if (!f.is_array()) throw ConfigError("formats", "expected an array");
    cfg.write_json = false;
    cfg.write_csv = false;
    for (const auto& v : f) {
      const std::string fmt = v.get<std::string>();
      if (fmt == "json") cfg.write_json = true;
      else if (fmt == "csv") cfg.write_csv = true;
      else throw ConfigError("formats", "unknown format '" + fmt + "' (json | csv)");
    }
  }

  // every named suite must carry its parameters
  for (const auto& s : cfg.suites) {
    if (s == "axioms" && !cfg.axioms) throw ConfigError("axioms", "missing (suite requested)");
    if (s == "unitarity" && !cfg.unitarity)
      throw ConfigError("unitarity", "missing (suite requested)");
    if (s == "energy-bounds" && !cfg.energy_bounds)
      throw ConfigError("energy_bounds", "missing (suite requested)");
    if (s == "smearing" && !cfg.smearing)
      throw ConfigError("smearing", "missing (suite requested)");
    if (s == "net" && !cfg.net) throw ConfigError("net", "missing (suite requested)");
  }
  return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("(file)", "cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("(file)", std::string("JSON parse error: ") + e.what());
  }
  return parse(j);
}

nlohmann::json list_models() {
  json out = json::array();
  out.push_back({{"kind", "heisenberg"},
                 {"parameters", {{"e_max", "non-negative integer"}}},
                 {"generators", {"alpha"}},
                 {"central_charge", "1"}});
  out.push_back({{"kind", "virasoro"},
                 {"parameters", {{"c", "rational string \"p/q\""}, {"e_max", "non-negative integer"}}},
                 {"generators", {"L"}},
                 {"central_charge", "c"}});
  out.push_back({{"kind", "tensor"},
                 {"parameters",
                  {{"left", "model spec"}, {"right", "model spec"}, {"e_max", "shared window"}}},
                 {"generators", {"lifted factor generators"}},
                 {"central_charge", "sum of factors"}});
  return out;
}

}  // namespace voa
