#include "edgecons/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "edgecons/errors.hpp"

namespace edgecons {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Drops a trailing `#` comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_quotes = !in_quotes;
    if (line[i] == '#' && !in_quotes) return line.substr(0, i);
  }
  return line;
}

bool parse_number(const std::string& token, double& out) {
  const std::string t = trim(token);
  if (t.empty()) return false;
  const char* first = t.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size() && std::isfinite(out);
}

}  // namespace

KeyValueDocument KeyValueDocument::parse(const std::string& text, const std::string& source) {
  KeyValueDocument doc;
  doc.source_ = source;
  std::istringstream in(text);
  std::string section;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);

    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw Error(ErrorCode::Config, where + ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::Config, where + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw Error(ErrorCode::Config, where + ": empty key or value");
    }
    Entry entry{value, line_no, false};
    if (value.front() == '"') {
      if (value.size() < 2 || value.back() != '"') {
        throw Error(ErrorCode::Config, where + ": unterminated string");
      }
      entry.value = value.substr(1, value.size() - 2);
      entry.quoted = true;
    }
    const std::string full = section.empty() ? key : section + "." + key;
    if (!doc.entries_.emplace(full, entry).second) {
      throw Error(ErrorCode::Config, where + ": duplicate key '" + full + "'");
    }
  }
  return doc;
}

const KeyValueDocument::Entry* KeyValueDocument::find(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> KeyValueDocument::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) out.push_back(k);
  return out;
}

void KeyValueDocument::fail(const std::string& key, const std::string& message) const {
  const Entry* e = find(key);
  const std::string where = e ? source_ + ":" + std::to_string(e->line) : source_;
  throw Error(ErrorCode::Config, where + ": " + key + ": " + message);
}

std::string KeyValueDocument::get_string(const std::string& key, const std::string& fallback) const {
  const Entry* e = find(key);
  return e ? e->value : fallback;
}

double KeyValueDocument::get_double(const std::string& key, double fallback) const {
  return get_optional_double(key).value_or(fallback);
}

std::optional<double> KeyValueDocument::get_optional_double(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) return std::nullopt;
  double v = 0.0;
  if (e->quoted || !parse_number(e->value, v)) fail(key, "expected a number, got '" + e->value + "'");
  return v;
}

std::uint64_t KeyValueDocument::get_uint(const std::string& key, std::uint64_t fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  std::uint64_t v = 0;
  const std::string& s = e->value;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (e->quoted || ec != std::errc() || ptr != s.data() + s.size()) {
    fail(key, "expected a nonnegative integer, got '" + s + "'");
  }
  return v;
}

std::vector<double> KeyValueDocument::get_doubles(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) return {};
  const std::string& s = e->value;
  if (e->quoted || s.size() < 2 || s.front() != '[' || s.back() != ']') {
    fail(key, "expected an array '[a, b, ...]'");
  }
  std::vector<double> out;
  std::istringstream items(s.substr(1, s.size() - 2));
  for (std::string item; std::getline(items, item, ',');) {
    if (trim(item).empty()) continue;
    double v = 0.0;
    if (!parse_number(item, v)) fail(key, "malformed array element '" + trim(item) + "'");
    out.push_back(v);
  }
  return out;
}

namespace {

const std::vector<std::string> kKnownKeys = {
    "state_dim",        "graph.file",        "graph.edges",        "gains.sigma",
    "lipschitz.xi1",    "lipschitz.xi2",     "quantizer.family",   "quantizer.delta_u",
    "drift.kind",       "drift.zeta",        "drift.tau",          "drift.chi",
    "drift.a",          "drift.b",           "init.kind",          "init.lower",
    "init.upper",       "init.seed",         "init.positions",     "init.velocities",
    "simulation.horizon", "simulation.dt",   "simulation.sample_every", "certify.radius",
};

Digraph load_graph(const KeyValueDocument& doc, const std::filesystem::path& base_dir) {
  const auto* file = doc.find("graph.file");
  const auto* inline_edges = doc.find("graph.edges");
  if ((file == nullptr) == (inline_edges == nullptr)) {
    throw Error(ErrorCode::Config,
                doc.source() + ": graph: exactly one of graph.file or graph.edges is required");
  }
  if (file) {
    std::filesystem::path p(file->value);
    if (p.is_relative()) p = base_dir / p;
    return load_edge_list(p);
  }
  std::string text = inline_edges->value;
  std::replace(text.begin(), text.end(), ';', '\n');
  return parse_edge_list(text, doc.source() + ":" + std::to_string(inline_edges->line) +
                                   ": graph.edges");
}

}  // namespace

ScenarioConfig parse_config(const std::string& text, const std::string& source,
                            const std::filesystem::path& base_dir) {
  const KeyValueDocument doc = KeyValueDocument::parse(text, source);
  for (const auto& key : doc.keys()) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
      throw Error(ErrorCode::Config, source + ":" + std::to_string(doc.find(key)->line) +
                                         ": unknown key '" + key + "'");
    }
  }
  auto invalid = [&](const std::string& field, const std::string& message) {
    const auto* e = doc.find(field);
    const std::string where = e ? source + ":" + std::to_string(e->line) : source;
    return Error(ErrorCode::Config, where + ": " + field + ": " + message);
  };

  ScenarioConfig cfg(source, load_graph(doc, base_dir));

  const std::uint64_t dim = doc.get_uint("state_dim", 3);
  if (dim == 0) throw invalid("state_dim", "must be >= 1");
  cfg.state_dim = static_cast<std::size_t>(dim);

  cfg.sigma = doc.get_double("gains.sigma", cfg.sigma);
  if (!(cfg.sigma > 0.0)) throw invalid("gains.sigma", "must be > 0");

  const double xi1 = doc.get_double("lipschitz.xi1", 0.0);
  const double xi2 = doc.get_double("lipschitz.xi2", 0.0);
  if (xi1 < 0.0) throw invalid("lipschitz.xi1", "must be >= 0");
  if (xi2 < 0.0) throw invalid("lipschitz.xi2", "must be >= 0");
  cfg.lipschitz = LipschitzBounds(xi1, xi2);

  const std::string family = doc.get_string("quantizer.family", "none");
  const auto delta = doc.get_optional_double("quantizer.delta_u");
  if (family == "none") {
    cfg.quantizer = QuantizerSpec::none();
  } else if (family == "uniform" || family == "logarithmic") {
    if (!delta) throw invalid("quantizer.delta_u", "required for the " + family + " family");
    if (!(*delta > 0.0)) throw invalid("quantizer.delta_u", "must be > 0");
    if (family == "logarithmic" && *delta > kMaxLogInterval) {
      throw invalid("quantizer.delta_u", "logarithmic family requires delta_u <= 0.9");
    }
    cfg.quantizer = family == "uniform" ? QuantizerSpec::uniform(*delta)
                                        : QuantizerSpec::logarithmic(*delta);
  } else {
    throw invalid("quantizer.family", "expected none, uniform or logarithmic");
  }

  const std::string drift = doc.get_string("drift.kind", "zero");
  if (drift == "zero") {
    cfg.drift = Drift::zero();
  } else if (drift == "chua") {
    ChuaParams p;
    p.zeta = doc.get_double("drift.zeta", p.zeta);
    p.tau = doc.get_double("drift.tau", p.tau);
    p.chi = doc.get_double("drift.chi", p.chi);
    p.a = doc.get_double("drift.a", p.a);
    p.b = doc.get_double("drift.b", p.b);
    if (!(p.zeta > 0.0)) throw invalid("drift.zeta", "must be > 0");
    if (!(p.tau > 0.0)) throw invalid("drift.tau", "must be > 0");
    if (!(p.chi > 0.0)) throw invalid("drift.chi", "must be > 0");
    if (cfg.state_dim != 3) throw invalid("state_dim", "chua drift requires state_dim = 3");
    cfg.drift = Drift::chua(p);
  } else {
    throw invalid("drift.kind", "expected zero or chua");
  }

  const std::string init = doc.get_string("init.kind", "seeded_uniform");
  const auto agent_values = static_cast<std::size_t>(cfg.graph.num_nodes() * cfg.state_dim);
  if (init == "seeded_uniform") {
    SeededUniformInit s;
    s.lower = doc.get_double("init.lower", s.lower);
    s.upper = doc.get_double("init.upper", s.upper);
    s.seed = doc.get_uint("init.seed", s.seed);
    if (!(s.upper >= s.lower)) throw invalid("init.upper", "must be >= init.lower");
    cfg.init = s;
  } else if (init == "explicit") {
    const auto x = doc.get_doubles("init.positions");
    const auto v = doc.get_doubles("init.velocities");
    if (x.size() != agent_values) {
      throw invalid("init.positions", "expected " + std::to_string(agent_values) + " values");
    }
    if (v.size() != agent_values) {
      throw invalid("init.velocities", "expected " + std::to_string(agent_values) + " values");
    }
    cfg.init = ExplicitInit{Eigen::Map<const Vector>(x.data(), static_cast<Eigen::Index>(x.size())),
                            Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()))};
  } else {
    throw invalid("init.kind", "expected seeded_uniform or explicit");
  }

  cfg.controls.horizon = doc.get_double("simulation.horizon", cfg.controls.horizon);
  cfg.controls.dt = doc.get_double("simulation.dt", cfg.controls.dt);
  cfg.controls.sample_every =
      static_cast<std::size_t>(doc.get_uint("simulation.sample_every", cfg.controls.sample_every));
  if (!(cfg.controls.dt > 0.0)) throw invalid("simulation.dt", "must be > 0");
  if (!(cfg.controls.horizon >= cfg.controls.dt)) {
    throw invalid("simulation.horizon", "must be >= simulation.dt");
  }
  if (cfg.controls.sample_every == 0) throw invalid("simulation.sample_every", "must be >= 1");

  cfg.target_radius = doc.get_optional_double("certify.radius");
  if (cfg.target_radius && !(*cfg.target_radius > 0.0)) {
    throw invalid("certify.radius", "must be > 0");
  }
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string(), path.parent_path());
}

void apply_overrides(ScenarioConfig& cfg, const ConfigOverrides& overrides) {
  if (overrides.seed) {
    if (auto* s = std::get_if<SeededUniformInit>(&cfg.init)) {
      s->seed = *overrides.seed;
    } else {
      throw Error(ErrorCode::Config, "--seed requires init.kind = seeded_uniform");
    }
  }
  if (overrides.dt) {
    if (!(*overrides.dt > 0.0)) throw Error(ErrorCode::Config, "--dt must be > 0");
    cfg.controls.dt = *overrides.dt;
  }
  if (overrides.horizon) cfg.controls.horizon = *overrides.horizon;
  if (!(cfg.controls.horizon >= cfg.controls.dt)) {
    throw Error(ErrorCode::Config, "--horizon must be >= dt");
  }
}

InitialState make_initial_state(const ScenarioConfig& cfg) {
  if (const auto* s = std::get_if<SeededUniformInit>(&cfg.init)) {
    return seeded_uniform_init(cfg.graph.num_nodes(), cfg.state_dim, s->lower, s->upper, s->seed);
  }
  const auto& e = std::get<ExplicitInit>(cfg.init);
  return {e.positions, e.velocities};
}

}  // namespace edgecons
