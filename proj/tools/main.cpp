// SPDX-License-Identifier: Apache-2.0
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "ssct/errors.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInstability = 3;

void emit(const ssct::app::Table& t, const std::string& out, const std::string& markdown) {
  if (out.empty() || out == "-") {
    ssct::app::write_csv(std::cout, t);
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw ssct::ConfigError("cannot write '" + out + "'");
    ssct::app::write_csv(f, t);
  }
  if (!markdown.empty()) {
    std::ofstream f(markdown);
    if (!f) throw ssct::ConfigError("cannot write '" + markdown + "'");
    ssct::app::write_markdown(f, t);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential shifted chi-square test: performance evaluation and comparison tables"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out, markdown, precision;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
  app.add_option("--out", out, "CSV output path (default stdout)");
  app.add_option("--markdown", markdown, "also write a markdown table here");
  app.add_option("--seed", seed, "Monte Carlo seed");
  app.add_option("--trials", trials, "Monte Carlo trials per hypothesis (>= 10000)");
  app.add_option("--precision", precision, "exact backend")
      ->check(CLI::IsMember({"native", "extended", "auto"}));

  std::string config;
  auto* evaluate = app.add_subcommand("evaluate", "evaluate one config");
  evaluate->add_option("--config", config, "JSON experiment config")->required();

  int which = 0;
  auto* table = app.add_subcommand("table", "reproduce comparison table 1, 2, 3 or 4");
  table->add_option("which", which, "table number")->required();

  std::string param, range;
  auto* sweep = app.add_subcommand("sweep", "evaluate a config over a parameter range");
  sweep->add_option("param", param, "snr_o_db, b_bar, gamma_bar or M")->required();
  sweep->add_option("range", range, "v1,v2,... or start:step:stop")->required();
  sweep->add_option("--config", config, "JSON experiment config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    ssct::app::RunOptions run;
    run.seed = seed;
    run.trials = trials;
    if (!precision.empty()) run.precision = ssct::precision_from_string(precision);

    ssct::app::Table result;
    if (*evaluate) {
      auto c = ssct::app::load_experiment(config);
      run.apply(c);
      result = ssct::app::cmd_evaluate(c);
    } else if (*table) {
      result = ssct::app::cmd_table(which, run);
    } else {
      auto c = ssct::app::load_experiment(config);
      run.apply(c);
      result = ssct::app::cmd_sweep(param, ssct::app::parse_range(range), c);
    }
    emit(result, out, markdown);
  } catch (const ssct::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ssct::InstabilityError& e) {
    std::cerr << "numerical instability: " << e.what() << '\n';
    return kExitInstability;
  } catch (const ssct::RefinementError& e) {
    std::cerr << "numerical instability: " << e.what() << '\n';
    return kExitInstability;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
