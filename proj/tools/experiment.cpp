// SPDX-License-Identifier: Apache-2.0
#include "experiment.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "ssct/baselines.hpp"
#include "ssct/errors.hpp"

namespace ssct::app {

using nlohmann::json;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

void ExperimentConfig::set_snr_m_db(double db) {
  snr_m_db = db;
  snr_m = db_to_linear(db);
}

void ExperimentConfig::set_snr_o_db(double db) {
  snr_o_db = db;
  snr_o = db_to_linear(db);
}

int ExperimentConfig::m_ed_min() const {
  return m_ed ? *m_ed : ed_min_samples(snr_m, alpha_target, beta_target);
}

SsctConfig ExperimentConfig::detector() const {
  SsctConfig cfg;
  cfg.b_bar = b_bar;
  cfg.a_bar = a_bar ? *a_bar : -b_bar;
  cfg.gamma_bar = gamma_bar;
  cfg.delta_bar = delta_bar ? *delta_bar : 2.0 + snr_m;
  cfg.M = M ? *M : m_ed_min();
  cfg.snr_m = snr_m;
  cfg.noise_power = noise_power;
  cfg.validate();
  return cfg;
}

SignalModel ExperimentConfig::model() const { return SignalModel::for_modulation(modulation, snr_o); }

EvalOptions ExperimentConfig::eval_options() const {
  EvalOptions o;
  o.precision = precision;
  o.exact_max_m = exact ? exact_max_m : 0;
  o.grid = grid_spec;
  o.priors = priors;
  o.m_ed_min = m_ed_min();
  o.trials = trials;
  o.seed = seed;
  return o;
}

namespace {

[[noreturn]] void schema_error(const std::string& msg) {
  throw ConfigError("config schema: " + msg);
}

void check_keys(const json& obj, const std::string& where, std::set<std::string> allowed) {
  if (!obj.is_object()) schema_error(where + " must be an object");
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.count(k)) schema_error("unknown key '" + k + "' in " + where);
  }
}

double number(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number()) schema_error(where + "." + key + " must be a number");
  return v.get<double>();
}

template <class Int>
Int integer(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || (std::is_unsigned_v<Int> && v.get<std::int64_t>() < 0)) {
    schema_error(where + "." + key + " must be a nonnegative integer");
  }
  return v.get<Int>();
}

bool boolean(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_boolean()) schema_error(where + "." + key + " must be true or false");
  return v.get<bool>();
}

std::string text(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_string()) schema_error(where + "." + key + " must be a string");
  return v.get<std::string>();
}

}  // namespace

ExperimentConfig parse_experiment(const json& j) {
  check_keys(j, "config",
             {"name", "snr_m_db", "snr_o_db", "modulation", "detector", "targets", "m_ed",
              "evaluation", "priors"});
  ExperimentConfig c;
  if (j.contains("name")) c.name = text(j, "name", "config");
  if (!j.contains("snr_m_db")) schema_error("snr_m_db is required");
  c.set_snr_m_db(number(j, "snr_m_db", "config"));
  c.set_snr_o_db(j.contains("snr_o_db") ? number(j, "snr_o_db", "config") : c.snr_m_db);
  if (j.contains("modulation")) {
    try {
      c.modulation = modulation_from_string(text(j, "modulation", "config"));
    } catch (const std::exception& e) {
      schema_error(e.what());
    }
  }
  if (j.contains("m_ed")) c.m_ed = integer<int>(j, "m_ed", "config");

  if (!j.contains("detector")) schema_error("detector section is required");
  const json& d = j.at("detector");
  check_keys(d, "detector", {"a_bar", "b_bar", "gamma_bar", "delta_bar", "M", "noise_power"});
  if (!d.contains("b_bar") || !d.contains("gamma_bar")) {
    schema_error("detector.b_bar and detector.gamma_bar are required");
  }
  c.b_bar = number(d, "b_bar", "detector");
  c.gamma_bar = number(d, "gamma_bar", "detector");
  if (d.contains("a_bar")) c.a_bar = number(d, "a_bar", "detector");
  if (d.contains("delta_bar")) c.delta_bar = number(d, "delta_bar", "detector");
  if (d.contains("M")) c.M = integer<int>(d, "M", "detector");
  if (d.contains("noise_power")) c.noise_power = number(d, "noise_power", "detector");

  if (j.contains("targets")) {
    const json& t = j.at("targets");
    check_keys(t, "targets", {"alpha", "beta"});
    if (t.contains("alpha")) c.alpha_target = number(t, "alpha", "targets");
    if (t.contains("beta")) c.beta_target = number(t, "beta", "targets");
  }
  if (!(c.alpha_target > 0.0 && c.alpha_target < 0.5 && c.beta_target > 0.0 &&
        c.beta_target < 0.5)) {
    schema_error("targets must lie in (0, 0.5)");
  }

  if (j.contains("evaluation")) {
    const json& e = j.at("evaluation");
    const std::string w = "evaluation";
    check_keys(e, w,
               {"exact", "grid", "montecarlo", "trials", "seed", "grid_points", "quadrature",
                "grid_tolerance", "exact_max_m", "precision"});
    if (e.contains("exact")) c.exact = boolean(e, "exact", w);
    if (e.contains("grid")) c.grid = boolean(e, "grid", w);
    if (e.contains("montecarlo")) c.montecarlo = boolean(e, "montecarlo", w);
    if (e.contains("trials")) c.trials = integer<std::int64_t>(e, "trials", w);
    if (e.contains("seed")) c.seed = integer<std::uint64_t>(e, "seed", w);
    if (e.contains("grid_points")) c.grid_spec.points = integer<int>(e, "grid_points", w);
    if (e.contains("grid_tolerance")) c.grid_spec.tolerance = number(e, "grid_tolerance", w);
    if (e.contains("exact_max_m")) c.exact_max_m = integer<int>(e, "exact_max_m", w);
    try {
      if (e.contains("quadrature")) {
        c.grid_spec.quadrature = quadrature_from_string(text(e, "quadrature", w));
      }
      if (e.contains("precision")) c.precision = precision_from_string(text(e, "precision", w));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& ex) {
      schema_error(ex.what());
    }
  }
  if (c.trials < 10'000) schema_error("evaluation.trials must be at least 10000");
  c.grid_spec.validate();

  if (j.contains("priors")) {
    const json& p = j.at("priors");
    check_keys(p, "priors", {"h0", "h1"});
    if (p.contains("h0")) c.priors.h0 = number(p, "h0", "priors");
    c.priors.h1 = p.contains("h1") ? number(p, "h1", "priors") : 1.0 - c.priors.h0;
  }
  c.priors.validate();
  c.detector();  // full invariant check
  return c;
}

ExperimentConfig load_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  ExperimentConfig c = parse_experiment(j);
  if (c.name.empty()) c.name = path;
  return c;
}

}  // namespace ssct::app
