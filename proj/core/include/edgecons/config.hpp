#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "edgecons/certificate.hpp"
#include "edgecons/digraph.hpp"
#include "edgecons/drift.hpp"
#include "edgecons/quantizer.hpp"
#include "edgecons/simulate.hpp"

namespace edgecons {

/// Flat `[section]` / `key = value` document (a TOML subset: numbers,
/// quoted strings, bare words and single-line `[a, b, c]` arrays).
class KeyValueDocument {
 public:
  struct Entry {
    std::string value;
    std::size_t line = 0;
    bool quoted = false;
  };

  static KeyValueDocument parse(const std::string& text, const std::string& source);

  const std::string& source() const noexcept { return source_; }
  bool contains(const std::string& key) const { return entries_.count(key) != 0; }
  const Entry* find(const std::string& key) const;
  std::vector<std::string> keys() const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::optional<double> get_optional_double(const std::string& key) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;

 private:
  [[noreturn]] void fail(const std::string& key, const std::string& message) const;

  std::string source_;
  std::map<std::string, Entry> entries_;  ///< keyed "section.key"
};

struct SeededUniformInit {
  double lower = -2.0;
  double upper = 2.0;
  std::uint64_t seed = 1;
};

struct ExplicitInit {
  Vector positions;
  Vector velocities;
};

using InitSpec = std::variant<SeededUniformInit, ExplicitInit>;

struct ScenarioConfig {
  ScenarioConfig(std::string source_name, Digraph g)
      : source(std::move(source_name)), graph(std::move(g)) {}

  std::string source;
  Digraph graph;
  std::size_t state_dim = 3;
  double sigma = 1.64;
  LipschitzBounds lipschitz;
  QuantizerSpec quantizer = QuantizerSpec::none();
  Drift drift = Drift::zero();
  InitSpec init = SeededUniformInit{};
  SimulationControls controls;
  std::optional<double> target_radius;  ///< for the convergence-time report
};

/// Parses and validates a scenario. Relative graph paths resolve against
/// base_dir. Violations throw Error(Config) naming the offending field.
ScenarioConfig parse_config(const std::string& text, const std::string& source,
                            const std::filesystem::path& base_dir);
ScenarioConfig load_config(const std::filesystem::path& path);

struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> dt;
  std::optional<double> horizon;
};

void apply_overrides(ScenarioConfig& cfg, const ConfigOverrides& overrides);

InitialState make_initial_state(const ScenarioConfig& cfg);

}  // namespace edgecons
