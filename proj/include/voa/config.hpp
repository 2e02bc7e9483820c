#ifndef VOA_CONFIG_HPP
#define VOA_CONFIG_HPP

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "voa/model.hpp"

namespace voa {

// Parse/validation failure with a config-field path, e.g. "model.c".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : std::runtime_error("config field '" + field + "': " + message), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// named state ("vacuum" | "alpha" | "nu") or an explicit leaf basis word
struct StateRef {
  std::string name;
  Partition word;
  bool is_word = false;

  std::string describe() const;
};

struct LocalityJob {
  StateRef a, b;
  long order = 2;
};

struct AxiomsConfig {
  std::vector<LocalityJob> locality;
  long locality_index_bound = 4;
  int locality_level_cap = 4;
  long bracket_index_bound = 3;
  int bracket_level_cap = 4;
  std::vector<StateRef> vtg_states;
  int vtg_max_state_level = -1;  // >= 0: also check every basis state up to this level
  long vtg_index_min = -3;
  long vtg_index_max = 3;
  int vtg_level_cap = 3;
};

struct UnitarityConfig {
  int gram_level_max = -1;  // default: window
  std::vector<Scalar> c_sweep;
  std::vector<StateRef> adjoint_states;
  long adjoint_index_bound = 2;
  std::vector<LocalityJob> pairs;
  long index_bound = 4;
  int level_cap = 4;
};

struct EnergyBoundsConfig {
  StateRef state;
  int s = 1;
  int k = 1;
  long index_bound = 8;
  std::vector<int> windows;
};

struct DecayConfig {
  StateRef a, b;
  Rational arc1_start{0}, arc1_end{0};
  Rational arc2_start{0}, arc2_end{0};
  int samples = 1024;
  std::vector<long> cutoffs;
};

struct SmearingConfig {
  bool identities = true;
  std::optional<DecayConfig> decay;
};

struct NetConfig {
  std::vector<StateRef> states;
  std::vector<std::pair<Rational, Rational>> arcs;
  int samples = 1024;
  long cutoff = 16;
  int stabilization_limit = 8;
};

struct RunConfig {
  ModelSpec model;
  std::vector<std::string> suites;  // axioms | unitarity | energy-bounds | smearing | net
  std::optional<AxiomsConfig> axioms;
  std::optional<UnitarityConfig> unitarity;
  std::optional<EnergyBoundsConfig> energy_bounds;
  std::optional<SmearingConfig> smearing;
  std::optional<NetConfig> net;
  std::string out_dir = "out";
  bool write_json = true;
  bool write_csv = true;
  int e_max_cap = 16;

  static RunConfig parse_file(const std::string& path);
  static RunConfig parse(const nlohmann::json& j);
};

// machine-readable listing of supported model kinds and their parameters
nlohmann::json list_models();

}  // namespace voa

#endif
