// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "ssct/baselines.hpp"
#include "ssct/errors.hpp"
#include "ssct/montecarlo.hpp"

namespace ssct::app {

void RunOptions::apply(ExperimentConfig& c) const {
  if (seed) c.seed = *seed;
  if (trials) {
    if (*trials < 10'000) throw ConfigError("--trials must be at least 10000");
    c.trials = *trials;
  }
  if (precision) c.precision = *precision;
}

namespace {

Estimate from_ci(const EstimateCI& e) {
  return {e.point, 3.0 * e.std_err, Method::montecarlo};
}

SimResult simulate(const ExperimentConfig& c, Hypothesis h) {
  SimSpec spec;
  spec.trials = c.trials;
  spec.seed = c.seed;
  spec.hypothesis = h;
  spec.model = c.model();
  spec.cfg = c.detector();
  return estimate(spec);
}

H0Summary h0_from_sim(const SimResult& s) {
  H0Summary h0;
  h0.alpha = from_ci(s.error_rate);
  h0.asn = from_ci(s.asn);
  h0.t_p = from_ci(s.t_p);
  return h0;
}

H1Summary h1_from_sim(const SimResult& s) {
  H1Summary h1;
  h1.beta = from_ci(s.error_rate);
  h1.asn = from_ci(s.asn);
  h1.t_p = from_ci(s.t_p);
  return h1;
}

bool simulated(const H0Summary& h0) { return h0.alpha.method == Method::montecarlo; }

Estimate efficiency_estimate(const Estimate& asn, int m_ed) {
  return {efficiency(asn.value, m_ed), asn.tol / m_ed, asn.method};
}

Estimate exact_value(double v) { return {v, 0.0, Method::exact}; }

std::vector<std::string> config_cells(double v) { return {fmt(v), "0", "config"}; }

std::string db_label(double db) {
  std::ostringstream os;
  os << db << " dB";
  return os.str();
}

// metric | <label> value | <label> tol | <label> method | ...
Table wide_table(const std::vector<std::string>& labels) {
  Table t;
  t.header.push_back("metric");
  for (const auto& l : labels) {
    t.header.push_back(l + " value");
    t.header.push_back(l + " tol");
    t.header.push_back(l + " method");
  }
  return t;
}

void add_metric(Table& t, const std::string& metric,
                const std::vector<std::vector<std::string>>& per_column) {
  std::vector<std::string> row{metric};
  for (const auto& c : per_column) row.insert(row.end(), c.begin(), c.end());
  t.add_row(std::move(row));
}

ExperimentConfig scenario(const std::string& name, double snr_db, double gamma_bar,
                          double b_bar, double delta_bar, int M, double target) {
  ExperimentConfig c;
  c.name = name;
  c.set_snr_m_db(snr_db);
  c.set_snr_o_db(snr_db);
  c.gamma_bar = gamma_bar;
  c.b_bar = b_bar;
  c.delta_bar = delta_bar;
  c.M = M;
  c.m_ed = M;
  c.alpha_target = target;
  c.beta_target = target;
  c.montecarlo = true;
  return c;
}

std::vector<ExperimentConfig> design_columns() {
  return {scenario("0 dB", 0.0, -8.5, 27.0, 3.0, 40, 0.01),
          scenario("-5 dB", -5.0, -5.69, 35.32, 2.316, 140, 0.05),
          scenario("-10 dB", -10.0, -4.0, 69.30, 2.100, 730, 0.10),
          scenario("-15 dB", -15.0, -1.897, 158.47, 2.032, 4450, 0.15)};
}

Table table1(const std::vector<ExperimentConfig>& cols) {
  std::vector<std::string> labels;
  for (const auto& c : cols) labels.push_back(c.name);
  Table t = wide_table(labels);
  std::vector<std::vector<std::string>> gam, bb, dd, mm, a_mc, a_num, a_ed, b_mc, b_num, b_ed,
      n_mc, n_num, m_ed, eta;
  for (const auto& c : cols) {
    const SsctConfig cfg = c.detector();
    const PerformanceReport num = numerical_report(c);
    const H0Summary s0{num.alpha, num.asn_h0, num.t_p_h0, num.backend};
    const PerformanceReport mc =
        montecarlo_report(c, simulated(s0) ? std::optional<H0Summary>(s0) : std::nullopt);
    const auto ed = EnergyDetectorConfig::for_targets(c.m_ed_min(), c.alpha_target, c.snr_m);
    const ErrorPair ep = ed_error_probs_exact(ed, c.snr_o);
    gam.push_back(config_cells(cfg.gamma_bar));
    bb.push_back(config_cells(cfg.b_bar));
    dd.push_back(config_cells(cfg.delta_bar));
    mm.push_back(config_cells(cfg.M));
    a_mc.push_back(cells(mc.alpha));
    a_num.push_back(cells(num.alpha));
    a_ed.push_back(cells(exact_value(ep.alpha)));
    b_mc.push_back(cells(mc.beta));
    b_num.push_back(cells(num.beta));
    b_ed.push_back(cells(exact_value(ep.beta)));
    n_mc.push_back(cells(mc.asn_mixed));
    n_num.push_back(cells(num.asn_mixed));
    m_ed.push_back(config_cells(c.m_ed_min()));
    eta.push_back(cells(efficiency_estimate(mc.asn_mixed, c.m_ed_min())));
  }
  add_metric(t, "gamma_bar", gam);
  add_metric(t, "b_bar", bb);
  add_metric(t, "delta_bar", dd);
  add_metric(t, "M", mm);
  add_metric(t, "alpha_ssct (Monte Carlo)", a_mc);
  add_metric(t, "alpha_ssct (Numerical)", a_num);
  add_metric(t, "alpha_ed (Energy Detect.)", a_ed);
  add_metric(t, "beta_ssct (Monte Carlo)", b_mc);
  add_metric(t, "beta_ssct (Numerical)", b_num);
  add_metric(t, "beta_ed (Energy Detect.)", b_ed);
  add_metric(t, "ASN (Monte Carlo)", n_mc);
  add_metric(t, "ASN (Numerical)", n_num);
  add_metric(t, "M (Energy Detect.)", m_ed);
  add_metric(t, "Efficiency", eta);
  return t;
}

Table table2(const std::vector<ExperimentConfig>& cols) {
  std::vector<std::string> labels;
  for (const auto& c : cols) labels.push_back(c.name);
  Table t = wide_table(labels);
  std::vector<std::vector<std::string>> bq_mc, bq_num, bq_ed, bx_mc, bx_num, bx_ed, nq_mc, nq_num,
      nx_mc, nx_num;
  for (const auto& base : cols) {
    ExperimentConfig q = base;
    q.modulation = Modulation::qpsk;
    ExperimentConfig x = base;
    x.modulation = Modulation::qam64;
    const H0Summary h0 = evaluate_h0(q.detector(), q.eval_options());
    const std::optional<H0Summary> h0_sim =
        simulated(h0) ? std::optional<H0Summary>(h0) : std::nullopt;
    const PerformanceReport q_num = numerical_report(q, h0);
    const PerformanceReport x_num = numerical_report(x, h0);
    const PerformanceReport q_mc = montecarlo_report(q, h0_sim);
    const PerformanceReport x_mc = montecarlo_report(x, h0_sim);
    const auto ed = EnergyDetectorConfig::for_targets(q.m_ed_min(), q.alpha_target, q.snr_m);
    SimSpec spec;
    spec.trials = x.trials;
    spec.seed = x.seed;
    spec.hypothesis = Hypothesis::h1;
    spec.model = x.model();
    spec.cfg = x.detector();
    const SimResult x_ed = estimate_energy_detector(ed, spec);
    bq_mc.push_back(cells(q_mc.beta));
    bq_num.push_back(cells(q_num.beta));
    bq_ed.push_back(cells(exact_value(ed_error_probs_exact(ed, q.snr_o).beta)));
    bx_mc.push_back(cells(x_mc.beta));
    bx_num.push_back(cells(x_num.beta));
    bx_ed.push_back(cells(from_ci(x_ed.error_rate)));
    nq_mc.push_back(cells(q_mc.asn_mixed));
    nq_num.push_back(cells(q_num.asn_mixed));
    nx_mc.push_back(cells(x_mc.asn_mixed));
    nx_num.push_back(cells(x_num.asn_mixed));
  }
  add_metric(t, "beta_ssct (QPSK, Monte Carlo)", bq_mc);
  add_metric(t, "beta_ssct (QPSK, Numerical)", bq_num);
  add_metric(t, "beta_ed (QPSK, Energy Detect.)", bq_ed);
  add_metric(t, "beta_ssct (64-QAM, Monte Carlo)", bx_mc);
  add_metric(t, "beta_ssct (64-QAM, Numerical)", bx_num);
  add_metric(t, "beta_ed (64-QAM, Energy Detect.)", bx_ed);
  add_metric(t, "ASN (QPSK, Monte Carlo)", nq_mc);
  add_metric(t, "ASN (QPSK, Numerical)", nq_num);
  add_metric(t, "ASN (64-QAM, Monte Carlo)", nx_mc);
  add_metric(t, "ASN (64-QAM, Numerical)", nx_num);
  return t;
}

Table table3(const std::vector<ExperimentConfig>& cols) {
  std::vector<std::string> labels;
  for (const auto& c : cols) labels.push_back(c.name);
  Table t = wide_table(labels);
  // H0 does not depend on the operating SNR: one computation serves every column.
  const H0Summary h0 = evaluate_h0(cols.front().detector(), cols.front().eval_options());
  const H0Summary h0_sim = simulated(h0) ? h0 : h0_from_sim(simulate(cols.front(), Hypothesis::h0));
  std::vector<std::vector<std::string>> alpha, b_mc, b_num, b_ed, n_mc, n_num, n1_num, m_ed, eta;
  for (const auto& c : cols) {
    const PerformanceReport num = numerical_report(c, h0);
    const PerformanceReport mc = montecarlo_report(c, h0_sim);
    const auto ed = EnergyDetectorConfig::for_targets(c.m_ed_min(), c.alpha_target, c.snr_m);
    alpha.push_back(cells(num.alpha));
    b_mc.push_back(cells(mc.beta));
    b_num.push_back(cells(num.beta));
    b_ed.push_back(cells(exact_value(ed_error_probs_exact(ed, c.snr_o).beta)));
    n_mc.push_back(cells(mc.asn_mixed));
    n_num.push_back(cells(num.asn_mixed));
    n1_num.push_back(cells(num.asn_h1));
    m_ed.push_back(config_cells(c.m_ed_min()));
    eta.push_back(cells(efficiency_estimate(mc.asn_mixed, c.m_ed_min())));
  }
  add_metric(t, "alpha_ssct", alpha);
  add_metric(t, "beta_ssct (Monte Carlo)", b_mc);
  add_metric(t, "beta_ssct (Numerical)", b_num);
  add_metric(t, "beta_ed (Energy Detect.)", b_ed);
  add_metric(t, "ASN (Monte Carlo)", n_mc);
  add_metric(t, "ASN (Numerical)", n_num);
  add_metric(t, "ASN under H1 (Numerical)", n1_num);
  add_metric(t, "M (Energy Detect.)", m_ed);
  add_metric(t, "Efficiency", eta);
  return t;
}

Table table4(const std::vector<ExperimentConfig>& rows) {
  Table t;
  t.header = {"scenario", "M", "a_bar", "b_bar", "gamma_bar"};
  for (const char* m : {"alpha", "beta", "ASN", "T_p", "Efficiency"}) {
    t.header.push_back(std::string(m) + " value");
    t.header.push_back(std::string(m) + " tol");
    t.header.push_back(std::string(m) + " method");
  }
  auto add = [&](std::vector<std::string> head, const PerformanceReport& r, int m_ed) {
    for (const Estimate& e : {r.alpha, r.beta, r.asn_mixed, r.t_p, efficiency_estimate(r.asn_mixed, m_ed)}) {
      const auto c = cells(e);
      head.insert(head.end(), c.begin(), c.end());
    }
    t.add_row(std::move(head));
  };
  for (const auto& c : rows) {
    const SsctConfig cfg = c.detector();
    add({c.name, fmt(static_cast<long long>(cfg.M)), fmt(cfg.a_bar), fmt(cfg.b_bar),
         fmt(cfg.gamma_bar)},
        montecarlo_report(c), c.m_ed_min());
  }

  // Non-truncated SPRT reference with the same targets and known lambda.
  const ExperimentConfig& ref = rows.front();
  const SprtConfig sprt = SprtConfig::wald(0.055, 0.046, 2.0 * ref.snr_m, ref.noise_power);
  SimSpec spec;
  spec.trials = ref.trials;
  spec.seed = ref.seed;
  spec.model = ref.model();
  spec.cfg = ref.detector();
  spec.hypothesis = Hypothesis::h0;
  const SimResult s0 = estimate_sprt(sprt, spec);
  spec.hypothesis = Hypothesis::h1;
  const SimResult s1 = estimate_sprt(sprt, spec);
  H0Summary h0 = h0_from_sim(s0);
  H1Summary h1 = h1_from_sim(s1);
  h0.t_p = h1.t_p = Estimate{0.0, 0.0, Method::montecarlo};
  EvalOptions opts = ref.eval_options();
  add({"SPRT (non-truncated)", "-", "-", "-", "-"}, combine(h0, h1, opts), ref.m_ed_min());
  opts.priors = {0.0, 1.0};
  add({"SPRT (non-truncated), under H1", "-", "-", "-", "-"}, combine(h0, h1, opts),
      ref.m_ed_min());
  return t;
}

}  // namespace

PerformanceReport numerical_report(const ExperimentConfig& c, const std::optional<H0Summary>& h0) {
  const SsctConfig cfg = c.detector();
  const EvalOptions opts = c.eval_options();
  const H0Summary s0 = h0 ? *h0 : evaluate_h0(cfg, opts);
  const H1Summary s1 =
      c.grid ? evaluate_h1(cfg, c.model(), opts) : h1_from_sim(simulate(c, Hypothesis::h1));
  return combine(s0, s1, opts);
}

PerformanceReport montecarlo_report(const ExperimentConfig& c, const std::optional<H0Summary>& h0) {
  const H0Summary s0 = h0 ? *h0 : h0_from_sim(simulate(c, Hypothesis::h0));
  const H1Summary s1 = h1_from_sim(simulate(c, Hypothesis::h1));
  return combine(s0, s1, c.eval_options());
}

Table cmd_evaluate(const ExperimentConfig& c) {
  Table t;
  t.header = {"metric", "value", "tol", "method"};
  auto add = [&](const std::string& metric, const PerformanceReport& r) {
    const std::pair<const char*, Estimate> rows[] = {
        {"alpha", r.alpha},       {"beta", r.beta},     {"asn_h0", r.asn_h0},
        {"asn_h1", r.asn_h1},     {"asn", r.asn_mixed}, {"t_p_h0", r.t_p_h0},
        {"t_p_h1", r.t_p_h1},     {"t_p", r.t_p},
        {"efficiency", efficiency_estimate(r.asn_mixed, r.m_ed_min)}};
    for (const auto& [name, e] : rows) {
      std::vector<std::string> row{metric + name};
      const auto v = cells(e);
      row.insert(row.end(), v.begin(), v.end());
      t.add_row(std::move(row));
    }
  };
  std::optional<H0Summary> h0;
  if (c.exact || c.grid) {
    const PerformanceReport num = numerical_report(c);
    add("", num);
    const H0Summary s0{num.alpha, num.asn_h0, num.t_p_h0, num.backend};
    if (simulated(s0)) h0 = s0;
  }
  if (c.montecarlo) add(c.exact || c.grid ? "mc_" : "", montecarlo_report(c, h0));
  const SsctConfig cfg = c.detector();
  t.add_row({"M", fmt(static_cast<long long>(cfg.M)), "0", "config"});
  t.add_row({"m_ed_min", fmt(static_cast<long long>(c.m_ed_min())), "0", "config"});
  return t;
}

std::vector<ExperimentConfig> table_scenarios(int which) {
  switch (which) {
    case 1:
    case 2:
      return design_columns();
    case 3: {
      std::vector<ExperimentConfig> cols;
      for (double db : {-12.0, -13.0, -14.0, -15.0}) {
        ExperimentConfig c = design_columns().back();
        c.set_snr_o_db(db);
        c.name = "SNR_o " + db_label(db);
        cols.push_back(c);
      }
      return cols;
    }
    case 4: {
      std::vector<ExperimentConfig> rows;
      const struct { int M; double a, b, g; } table[] = {
          {140, -35.32, 35.32, -5.69}, {160, -28.95, 23.16, -5.50}, {180, -27.33, 21.54, -6.00},
          {200, -26.40, 20.85, -6.32}, {500, -25.48, 19.69, -6.32}, {1000, -25.42, 19.63, -6.32}};
      for (const auto& r : table) {
        ExperimentConfig c = scenario("M=" + std::to_string(r.M), -5.0, r.g, r.b, 2.316, r.M, 0.05);
        c.a_bar = r.a;
        c.m_ed = 140;
        c.alpha_target = 0.055;
        c.beta_target = 0.046;
        rows.push_back(c);
      }
      return rows;
    }
    default:
      throw ConfigError("table must be 1, 2, 3 or 4 (got " + std::to_string(which) + ")");
  }
}

Table cmd_table(int which, const RunOptions& run) {
  std::vector<ExperimentConfig> sc = table_scenarios(which);
  for (auto& c : sc) run.apply(c);
  switch (which) {
    case 1: return table1(sc);
    case 2: return table2(sc);
    case 3: return table3(sc);
    default: return table4(sc);
  }
}

std::vector<double> parse_range(const std::string& text) {
  auto bad = [&](const std::string& why) -> std::vector<double> {
    throw ConfigError("invalid range '" + text + "': " + why);
  };
  auto parse_num = [&](const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) bad("'" + s + "' is not a number");
    return v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) return bad("expected start:step:stop");
    const double start = parse_num(parts[0]), step = parse_num(parts[1]), stop = parse_num(parts[2]);
    if (step == 0.0 || (stop - start) / step < 0.0) return bad("step does not reach stop");
    const long long n = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (n > 100000) return bad("too many points");
    for (long long i = 0; i < n; ++i) out.push_back(start + static_cast<double>(i) * step);
  } else {
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) {
      if (!p.empty()) out.push_back(parse_num(p));
    }
  }
  if (out.empty()) return bad("no values");
  return out;
}

Table cmd_sweep(const std::string& param, const std::vector<double>& values,
                const ExperimentConfig& base) {
  if (param != "snr_o_db" && param != "b_bar" && param != "gamma_bar" && param != "M") {
    throw ConfigError("sweep parameter must be snr_o_db, b_bar, gamma_bar or M (got '" + param + "')");
  }
  if (values.empty()) throw ConfigError("sweep range is empty");
  Table t;
  t.header = {param};
  for (const char* m : {"alpha", "beta", "asn_h0", "asn_h1", "asn", "t_p", "efficiency"}) {
    t.header.push_back(std::string(m) + " value");
    t.header.push_back(std::string(m) + " tol");
    t.header.push_back(std::string(m) + " method");
  }
  std::optional<H0Summary> h0;
  if (param == "snr_o_db") h0 = evaluate_h0(base.detector(), base.eval_options());
  for (double v : values) {
    ExperimentConfig c = base;
    if (param == "snr_o_db") {
      c.set_snr_o_db(v);
    } else if (param == "b_bar") {
      c.b_bar = v;
    } else if (param == "gamma_bar") {
      c.gamma_bar = v;
    } else {
      if (v != std::floor(v) || v < 2 || v > 1e7) throw ConfigError("M values must be integers >= 2");
      c.M = static_cast<int>(v);
    }
    c.detector();
    const PerformanceReport r = c.grid || c.exact ? numerical_report(c, h0) : montecarlo_report(c, h0);
    std::vector<std::string> row{fmt(v)};
    for (const Estimate& e : {r.alpha, r.beta, r.asn_h0, r.asn_h1, r.asn_mixed, r.t_p,
                              efficiency_estimate(r.asn_mixed, c.m_ed_min())}) {
      const auto cl = cells(e);
      row.insert(row.end(), cl.begin(), cl.end());
    }
    t.add_row(std::move(row));
  }
  return t;
}

}  // namespace ssct::app
