// Command-line front end: run, sweep, cost and anova subcommands.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "vccsim/config.hpp"
#include "vccsim/report.hpp"
#include "vccsim/stats.hpp"
#include "vccsim/sweep.hpp"

namespace {

using namespace vccsim;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to `path`, or stdout when the path is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  out << text;
  if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", path));
}

Config load_config(const std::string& path) {
  if (path.empty()) return Config{};
  try {
    return parse_config(read_file(path));
  } catch (const ConfigError& e) {
    throw std::runtime_error(fmt::format("{}: {}", path, e.what()));
  }
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const auto v = parse_number(std::string_view(text).substr(pos, comma - pos));
    if (!v) throw std::runtime_error(fmt::format("{}: '{}' is not a number", what, text.substr(pos, comma - pos)));
    out.push_back(*v);
    pos = comma + 1;
  }
  return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (double v : parse_list(text, "--seed-list")) {
    if (!(v >= 0.0) || v != static_cast<double>(static_cast<std::uint64_t>(v)))
      throw std::runtime_error(fmt::format("--seed-list: {} is not a non-negative integer", v));
    seeds.push_back(static_cast<std::uint64_t>(v));
  }
  return seeds;
}

struct Common {
  std::string config;
  std::string out;
  std::string strategy;
  bool quiet = false;
};

void apply_strategy(Config& cfg, const std::string& name) {
  if (name.empty()) return;
  const auto s = parse_strategy_name(name);
  if (!s) throw std::runtime_error(fmt::format("--strategy: unknown strategy '{}'", name));
  cfg.strategy = *s;
}

int cmd_run(const Common& c, const std::string& records_path, std::optional<std::uint64_t> seed) {
  Config cfg = load_config(c.config);
  apply_strategy(cfg, c.strategy);
  RunConfig rc = cfg.run_config();
  if (seed) rc.seed = *seed;
  validate(rc);
  const auto records = run(rc);
  const Aggregates agg = summarize(records);
  if (!records_path.empty()) emit(records_path, records_csv(records));
  emit(c.out, summary_csv(agg));
  if (!c.quiet) std::cerr << summary_text(agg, rc);
  return 0;
}

int cmd_sweep(const Common& c, const std::string& axis, const std::string& values, const std::string& seeds,
              unsigned threads) {
  Config cfg = load_config(c.config);
  apply_strategy(cfg, c.strategy);
  if (!axis.empty()) {
    const auto a = parse_axis_name(axis);
    if (!a) throw std::runtime_error(fmt::format("--axis: unknown axis '{}'", axis));
    if (!cfg.sweep) cfg.sweep = SweepSpec{};
    cfg.sweep->axis = *a;
  }
  if (!values.empty()) {
    if (!cfg.sweep) throw std::runtime_error("--values needs an axis (--axis or sweep.axis)");
    cfg.sweep->values = parse_list(values, "--values");
  }
  SweepSpec spec = cfg.sweep_spec();
  if (!seeds.empty()) spec.seeds = parse_seeds(seeds);

  if (spec.axis == SweepAxis::kBeta) {
    emit(c.out, cost_sweep_csv(run_cost_sweep(spec, cfg.cost)));
    return 0;
  }
  const RunConfig base = cfg.run_config();
  const SweepResult result = run_sweep(spec, base, threads);
  emit(c.out, sweep_csv(result));
  if (!c.quiet)
    std::cerr << fmt::format("{} points x {} seeds over '{}'\n", spec.values.size(), spec.seeds.size(),
                             axis_name(spec.axis));
  return 0;
}

int cmd_cost(const Common& c, const std::string& totals_path, const std::string& betas, const std::string& years,
             const std::string& scales) {
  Config cfg = load_config(c.config);
  if (!betas.empty()) cfg.report.betas = parse_list(betas, "--betas");
  if (!years.empty()) cfg.report.years = parse_list(years, "--years");
  if (!scales.empty()) cfg.report.scales = parse_list(scales, "--scales");
  validate(cfg.cost);
  const CostReport report = cost_report(cfg.cost, cfg.report.betas, cfg.report.years, cfg.report.scales);
  emit(c.out, report.breakdown_csv);
  if (!totals_path.empty()) emit(totals_path, report.totals_csv);
  if (!c.quiet) {
    std::cerr << report.text;
    std::cerr << fmt::format("VCC bonus at these parameters: {:.4e} $/request\n", vcc_bonus(cfg.cost));
  }
  return 0;
}

int cmd_anova(const Common& c, const std::string& input) {
  const std::string text = input == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {}) : read_file(input);
  const auto rows = parse_csv(text);
  const std::string factor = rows.empty() || rows.front().empty() || rows.front()[0].empty()
                                 ? std::string("group")
                                 : rows.front()[0];
  std::vector<std::string> names;
  const auto groups = read_groups_csv(text, &names);
  const AnovaResult r = anova_oneway(groups);
  emit(c.out, anova_csv(r, fmt::format("C({})", factor)));
  if (!c.quiet) std::cerr << fmt::format("{} groups, {} observations\n", groups.size(), r.df_factor + r.df_resid + 1);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-tier task offloading simulator and cost analyzer"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&common](CLI::App* sub, bool with_strategy) {
    sub->add_option("-c,--config", common.config, "key = value configuration file");
    sub->add_option("-o,--out", common.out, "CSV output path (default: stdout)");
    sub->add_flag("-q,--quiet", common.quiet, "suppress the human-readable summary on stderr");
    if (with_strategy) sub->add_option("-s,--strategy", common.strategy, "ec_first or vcc_first (overrides config)");
  };

  auto* run_cmd = app.add_subcommand("run", "single simulation run");
  add_common(run_cmd, true);
  std::string records_path;
  std::optional<std::uint64_t> seed;
  run_cmd->add_option("--records", records_path, "write per-task records CSV to this path");
  run_cmd->add_option("--seed", seed, "override the configured seed");

  auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep over replication seeds");
  add_common(sweep_cmd, true);
  std::string axis, values, seed_list;
  unsigned threads = 0;
  sweep_cmd->add_option("--axis", axis, "users, workload, vehicles, vehicle_capacity_fraction, speed or beta");
  sweep_cmd->add_option("--values", values, "comma-separated axis values (fractions such as 1/128 allowed)");
  sweep_cmd->add_option("--seed-list", seed_list, "comma-separated replication seeds");
  sweep_cmd->add_option("-j,--threads", threads, "worker threads (0 = hardware concurrency)");

  auto* cost_cmd = app.add_subcommand("cost", "cost distribution tables and EC/VCC totals");
  add_common(cost_cmd, false);
  std::string totals_path, betas, years, scales;
  cost_cmd->add_option("--totals", totals_path, "write EC/VCC totals CSV to this path");
  cost_cmd->add_option("--betas", betas, "comma-separated beta values");
  cost_cmd->add_option("--years", years, "comma-separated investment durations");
  cost_cmd->add_option("--scales", scales, "comma-separated request scales");

  auto* anova_cmd = app.add_subcommand("anova", "one-way ANOVA over a group,value CSV");
  anova_cmd->add_option("-o,--out", common.out, "CSV output path (default: stdout)");
  anova_cmd->add_flag("-q,--quiet", common.quiet, "suppress the summary on stderr");
  std::string input;
  anova_cmd->add_option("input", input, "CSV with a header row and group,value rows ('-' for stdin)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(common, records_path, seed);
    if (*sweep_cmd) return cmd_sweep(common, axis, values, seed_list, threads);
    if (*cost_cmd) return cmd_cost(common, totals_path, betas, years, scales);
    if (*anova_cmd) return cmd_anova(common, input);
  } catch (const std::exception& e) {
    std::cerr << "vccsim: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
