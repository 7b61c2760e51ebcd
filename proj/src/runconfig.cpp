#include "waringlab/runconfig.hpp"

#include <cstdio>
#include <fstream>
#include <set>

#include "json.hpp"
#include "waringlab/common.hpp"

namespace wlab {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed, const char* where) {
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key))
      throw ConfigError(std::string("config: unknown key '") + key + "' in " + where +
                        " (schema 1)");
}

void read_growth(const json& j, const char* where, double* c, double* gamma) {
  reject_unknown(j, {"family", "c", "gamma"}, where);
  const std::string family = j.value("family", "log");
  *c = j.value("c", 1.0);
  if (family == "log") {
    *gamma = 1.0;
  } else if (family == "powlog") {
    *gamma = j.value("gamma", 1.0);
    if (*gamma <= 0.0 || *gamma > 1.0)
      throw ConfigError("config: powlog gamma must lie in (0,1]");
  } else {
    throw ConfigError(std::string("config: unknown growth family '") + family + "'");
  }
}

json growth_json(double c, double gamma) {
  json j;
  if (gamma == 1.0) {
    j["family"] = "log";
    j["c"] = c;
  } else {
    j["family"] = "powlog";
    j["c"] = c;
    j["gamma"] = gamma;
  }
  return j;
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(j,
                 {"schema", "k", "s", "eta", "psi", "phi", "delta", "seed", "x_max",
                  "interval", "workers"},
                 "top level");
  RunConfig c;
  c.schema = j.value("schema", 0);
  if (c.schema != 1)
    throw ConfigError("config: unsupported schema version " + std::to_string(c.schema));
  c.k = j.value("k", 2);
  c.s = j.value("s", 9);
  c.eta = j.value("eta", 0.5);
  if (j.contains("psi")) read_growth(j.at("psi"), "psi", &c.psi_c, &c.psi_gamma);
  if (j.contains("phi")) read_growth(j.at("phi"), "phi", &c.phi_c, &c.phi_gamma);
  c.delta = j.value("delta", 0.25);
  c.seed = j.value("seed", std::uint64_t(0));
  c.x_max = j.value("x_max", std::uint64_t(1000000));
  c.workers = j.value("workers", 1);
  if (j.contains("interval")) {
    const auto& iv = j.at("interval");
    reject_unknown(iv, {"kind", "N", "C", "c"}, "interval");
    c.interval = iv.value("kind", "short");
    if (c.interval != "short" && c.interval != "dyadic")
      throw ConfigError("config: interval.kind must be 'short' or 'dyadic'");
    c.big_n = iv.value("N", std::uint64_t(1000000));
    c.big_c = iv.value("C", 1.0);
    c.small_c = iv.value("c", 1.0);
  }
  if (c.k < 2 || c.s < 2 || c.eta <= 0.0 || c.eta > 1.0 || c.delta <= 0.0 || c.delta >= 1.0)
    throw ConfigError("config: parameter out of range");
  return c;
}

std::string RunConfig::to_json_text() const {
  json j;
  j["schema"] = schema;
  j["k"] = k;
  j["s"] = s;
  j["eta"] = eta;
  j["psi"] = growth_json(psi_c, psi_gamma);
  j["phi"] = growth_json(phi_c, phi_gamma);
  j["delta"] = delta;
  j["seed"] = seed;
  j["x_max"] = x_max;
  j["interval"] = {{"kind", interval}, {"N", big_n}, {"C", big_c}, {"c", small_c}};
  j["workers"] = workers;
  return j.dump(2);
}

ExperimentConfig RunConfig::to_experiment() const {
  ExperimentConfig e;
  e.params.k = k;
  e.params.s = s;
  e.params.eta = eta;
  e.params.psi = GrowthFn{psi_c, psi_gamma, {}};
  e.params.phi = GrowthFn{phi_c, phi_gamma, {}};
  e.params.x_max = x_max;
  e.seed = seed;
  e.interval = interval == "dyadic" ? IntervalKind::kDyadic : IntervalKind::kShort;
  e.big_n = big_n;
  e.delta = delta;
  e.big_c = big_c;
  e.small_c = small_c;
  e.workers = workers;
  return e;
}

RunConfig preset_config(const std::string& name) {
  RunConfig c;
  if (name == "k2s9-short") {
    c.k = 2;
    c.s = 9;
    c.big_n = 1000000;
    c.x_max = 2000000;
    c.interval = "short";
  } else if (name == "k2s9-dyadic") {
    c.k = 2;
    c.s = 9;
    c.big_n = 100000;
    c.x_max = 200000;
    c.interval = "dyadic";
  } else if (name == "k3s13-short") {
    c.k = 3;
    c.s = 13;
    c.big_n = 1000000;
    c.x_max = 2000000;
    c.interval = "short";
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  return c;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open " + tmp + " for writing");
    out << content;
    if (!out) throw ConfigError("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw ConfigError("rename failed for " + path);
}

}  // namespace wlab
