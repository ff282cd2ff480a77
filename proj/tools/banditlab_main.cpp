// Command-line laboratory for best-arm identification under reward
// corruption: run single experiments, sweeps, closed-form analyses, the
// built-in reproduction studies, and SVG plots of results CSVs.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "banditlab/adversaries.hpp"
#include "banditlab/agents.hpp"
#include "banditlab/analysis.hpp"
#include "banditlab/errors.hpp"
#include "banditlab/harness.hpp"
#include "banditlab/svg.hpp"

namespace fs = std::filesystem;
using namespace banditlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::vector<double> means;
  std::optional<int> num_arms;
  std::optional<double> w_star, w_prime, u, lambda, budget;
  std::optional<long long> horizon;
  std::optional<int> trials, threads;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> algorithm, adversary, cps_rule;
};

void add_override_flags(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "experiment config file (key = value lines)");
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--means", opts.means, "explicit arm means");
  cmd->add_option("--L", opts.num_arms, "two-group instance size");
  cmd->add_option("--w-star", opts.w_star, "two-group best mean");
  cmd->add_option("--w-prime", opts.w_prime, "two-group low mean");
  cmd->add_option("--algorithm", opts.algorithm, "pss | sh | up");
  cmd->add_option("--u", opts.u, "shrink rate for pss");
  cmd->add_option("--adversary", opts.adversary,
                  "noop | coupling | sh-schedule | one-to-zero | zero-to-one");
  cmd->add_option("--lambda", opts.lambda, "attack slack parameter");
  cmd->add_option("--T", opts.horizon, "horizon");
  cmd->add_option("--C", opts.budget, "corruption budget");
  cmd->add_option("--cps-rule", opts.cps_rule,
                  "theorem-3.1 | theorem-4.3 | theorem-4.4-I | theorem-4.4-II");
  cmd->add_option("--trials", opts.trials, "Monte Carlo trials");
  cmd->add_option("--seed", opts.seed, "master seed");
  cmd->add_option("--threads", opts.threads, "worker threads (0 = hardware)");
}

ExperimentConfig build_config(const CommonOptions& opts) {
  ExperimentConfig config;
  if (!opts.config_path.empty()) config = load_config(opts.config_path);
  if (!opts.means.empty()) {
    config.instance = InstanceSpec{};
    config.instance.means = opts.means;
  }
  if (opts.num_arms) config.instance.num_arms = *opts.num_arms;
  if (opts.w_star) config.instance.w_star = *opts.w_star;
  if (opts.w_prime) config.instance.w_prime = *opts.w_prime;
  if (opts.algorithm) config.algorithm = *opts.algorithm;
  if (opts.u) config.u = *opts.u;
  if (opts.adversary) config.adversary = *opts.adversary;
  if (opts.lambda) config.lambda = *opts.lambda;
  if (opts.horizon) config.horizon = *opts.horizon;
  if (opts.budget) {
    config.budget = *opts.budget;
    config.cps_rule.clear();
  }
  if (opts.cps_rule) {
    config.cps_rule = *opts.cps_rule;
    config.budget.reset();
  }
  if (opts.trials) config.trials = *opts.trials;
  if (opts.seed) config.master_seed = *opts.seed;
  if (opts.threads) config.threads = *opts.threads;
  return config;
}

std::string describe(const ExperimentSummary& s) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line),
                "%-6s vs %-12s L=%-4d T=%-6lld lambda=%-5g C=%-8.4g  success=%.3f  ci=[%.3f, %.3f]",
                s.algorithm.c_str(), s.adversary.c_str(), s.num_arms,
                static_cast<long long>(s.horizon), s.lambda, s.budget, s.success_rate, s.ci_low,
                s.ci_high);
  out << line;
  return out.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw BanditError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw BanditError("write to '" + path.string() + "' failed");
}

// ---------------------------------------------------------------------------
// run / sweep

int cmd_run(const CommonOptions& opts, bool per_trial_csv, bool step_trace) {
  const ExperimentConfig config = build_config(opts);
  fs::create_directories(opts.out_dir);
  std::vector<ExperimentSummary> summaries;
  if (config.has_sweep()) {
    summaries = run_sweep(config);
  } else {
    summaries.push_back(run_experiment(config));
  }
  const fs::path csv_path = fs::path(opts.out_dir) / "results.csv";
  write_csv(summaries, csv_path.string());
  if (per_trial_csv && !config.has_sweep()) {
    const BanditInstance instance = config.instance.build();
    write_text(fs::path(opts.out_dir) / "trials.csv", trials_to_csv(summaries[0], instance));
  }
  if (step_trace && !config.has_sweep()) {
    // Per-step trace of trial 0, in the fixed t,pulled,observed,... schema.
    const BanditInstance instance = config.instance.build();
    const auto agent = make_agent(config.algorithm, instance.num_arms(), config.horizon,
                                  config.u);
    const auto adversary =
        make_adversary(config.adversary, instance, config.horizon, config.lambda);
    std::vector<RoundRecord> trace;
    run_trial(instance, *agent, *adversary, config.horizon, resolve_budget(config, instance),
              derive_trial_seeds(config.master_seed, 0), &trace);
    write_text(fs::path(opts.out_dir) / "trace.csv", trace_to_csv(trace));
  }
  for (const ExperimentSummary& s : summaries) std::cout << describe(s) << '\n';
  std::cout << "wrote " << csv_path.string() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// analyze

int cmd_analyze(const CommonOptions& opts, const std::string& csv_out) {
  BanditInstance instance;
  if (!opts.means.empty()) {
    instance = make_instance(opts.means);
  } else if (opts.num_arms && opts.w_star && opts.w_prime) {
    instance = two_group_instance(*opts.num_arms, *opts.w_star, *opts.w_prime);
  } else {
    throw ConfigError("analyze needs --means or all of --L/--w-star/--w-prime");
  }
  const double u = opts.u.value_or(2.0);
  const long long horizon = opts.horizon.value_or(0);
  const double budget = opts.budget.value_or(0.0);
  if (horizon <= 0) throw ConfigError("analyze needs --T > 0");

  const Guarantee g = pss_guarantee(instance, horizon, u, budget);
  const CpsRegime regime = cps_regime(instance, u, budget, horizon);
  std::printf("instance: L=%d best_arm=%d gap_2=%g gap_L=%g\n", instance.num_arms(),
              instance.best_arm, instance.min_positive_gap(), instance.max_gap());
  char label[32];
  std::snprintf(label, sizeof(label), "H2~(u=%g)", u);
  std::printf("%-12s= %.6g\n", "H2", g.h2);
  std::printf("%-12s= %.6g\n", label, g.h2_tilde);
  std::printf("%-12s= %.6g\n", "epsilon_C", g.epsilon_c);
  std::printf("%-12s= %.6g\n", "delta bound", g.delta_bound);
  std::printf("%-12s= %.6g   regime = %s\n", "CPS", regime.cps,
              regime_name(regime.classification).c_str());
  std::printf("  thresholds: identify < %.6g, vacuous >= %.6g, extreme >= %.6g\n",
              regime.low_threshold, regime.vacuous_threshold, regime.extreme_threshold);
  std::printf("%-8s %-14s %-14s\n", "algo", "epsilon_C", "delta");
  const std::vector<ComparisonRow> rows = comparison_table(instance, horizon, budget, u);
  for (const ComparisonRow& row : rows) {
    std::printf("%-8s %-14.6g %-14.6g\n", row.algorithm.c_str(), row.epsilon_c, row.delta);
  }
  if (!csv_out.empty()) {
    std::ostringstream csv;
    csv << "algorithm,epsilon_c,delta\n";
    for (const ComparisonRow& row : rows) {
      char line[128];
      std::snprintf(line, sizeof(line), "%s,%.12g,%.12g\n", row.algorithm.c_str(),
                    row.epsilon_c, row.delta);
      csv << line;
    }
    write_text(csv_out, csv.str());
    std::cout << "wrote " << csv_out << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// plot

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<int>(i);
    }
    throw ConfigError("results CSV is missing required column '" + name + "'");
  }
};

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open CSV '" + path + "'");
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.push_back("");
    if (first) {
      table.header = fields;
      first = false;
    } else {
      table.rows.push_back(fields);
    }
  }
  return table;
}

int cmd_plot(const std::string& csv_path, const std::string& out_svg) {
  const CsvTable table = read_csv(csv_path);
  const int col_alg = table.column("algorithm");
  const int col_rate = table.column("success_rate");
  const int col_lo = table.column("ci_low");
  const int col_hi = table.column("ci_high");
  // Swept axis: the first of T, L, lambda with more than one distinct value.
  const std::vector<std::pair<std::string, int>> axis_candidates = {
      {"T", table.column("T")}, {"L", table.column("L")}, {"lambda", table.column("lambda")}};
  std::string axis_name = "T";
  int axis_col = axis_candidates[0].second;
  for (const auto& [name, col] : axis_candidates) {
    std::set<std::string> distinct;
    for (const auto& row : table.rows) distinct.insert(row[col]);
    if (distinct.size() > 1) {
      axis_name = name;
      axis_col = col;
      break;
    }
  }

  std::map<std::string, PlotSeries> by_algorithm;
  std::vector<std::string> order;
  for (const auto& row : table.rows) {
    const std::string& alg = row[col_alg];
    if (!by_algorithm.count(alg)) {
      by_algorithm[alg].label = alg;
      order.push_back(alg);
    }
    PlotSeries& series = by_algorithm[alg];
    series.x.push_back(std::stod(row[axis_col]));
    series.y.push_back(std::stod(row[col_rate]));
    series.ci_low.push_back(std::stod(row[col_lo]));
    series.ci_high.push_back(std::stod(row[col_hi]));
  }
  std::vector<PlotSeries> series;
  series.reserve(order.size());
  for (const std::string& alg : order) series.push_back(by_algorithm[alg]);

  const std::string svg = render_line_chart("success rate vs " + axis_name, axis_name,
                                            "success rate", series);
  write_text(out_svg, svg);
  std::cout << "wrote " << out_svg << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// reproduce

struct TableRow {
  double lambda, w_star, w_prime;
  double paper_pss, paper_sh, paper_up;  // percent, 100-trial study
};

const std::vector<TableRow>& table_a1_rows() {
  static const std::vector<TableRow> rows = {
      {0.5, 0.4, 0.2, 76, 42, 12}, {0.5, 0.5, 0.2, 91, 64, 13}, {0.5, 0.5, 0.3, 74, 51, 19},
      {0.9, 0.4, 0.2, 72, 45, 9},  {0.9, 0.5, 0.2, 83, 64, 7},  {0.9, 0.5, 0.3, 60, 40, 12},
  };
  return rows;
}

ExperimentConfig study_config(const std::string& algorithm, int num_arms, double w_star,
                              double w_prime, double lambda, long long horizon, int trials,
                              int threads) {
  ExperimentConfig config;
  config.instance.num_arms = num_arms;
  config.instance.w_star = w_star;
  config.instance.w_prime = w_prime;
  config.algorithm = algorithm;
  config.u = 2.0;
  config.adversary = "sh-schedule";
  config.cps_rule = "theorem-4.3";
  config.horizon = horizon;
  config.trials = trials;
  config.threads = threads;
  return config;
}

std::string config_to_file_text(const ExperimentConfig& config) {
  std::string text = canonical_config_text(config);
  if (config.threads != 0) text += "threads = " + std::to_string(config.threads) + "\n";
  return text;
}

int reproduce_table_a1(const fs::path& out_dir, int trials, std::uint64_t seed, int threads) {
  fs::create_directories(out_dir);
  const std::vector<std::string> algorithms = {"pss", "sh", "up"};
  std::vector<ExperimentSummary> summaries;
  std::uint64_t cell = 0;
  for (const TableRow& row : table_a1_rows()) {
    for (const std::string& alg : algorithms) {
      ExperimentConfig config =
          study_config(alg, 32, row.w_star, row.w_prime, row.lambda, 2000, trials, threads);
      config.lambda = row.lambda;
      config.master_seed = derive_seed(seed, cell, StreamRole::kSweepCell);
      char name[128];
      std::snprintf(name, sizeof(name), "cell_%02llu_%s_lam%g_ws%g_wp%g.config",
                    static_cast<unsigned long long>(cell), alg.c_str(), row.lambda, row.w_star,
                    row.w_prime);
      write_text(out_dir / name, config_to_file_text(config));
      summaries.push_back(run_experiment(config));
      ++cell;
    }
  }
  write_csv(summaries, (out_dir / "results.csv").string());

  std::printf("reference values come from a 100-trial study; measured values use %d trials\n",
              trials);
  std::printf("%-6s %-6s %-7s | %-17s %-17s %-17s\n", "lambda", "w*", "w'", "pss(2) ref/meas",
              "sh ref/meas", "up ref/meas");
  for (std::size_t r = 0; r < table_a1_rows().size(); ++r) {
    const TableRow& row = table_a1_rows()[r];
    const double pss = summaries[3 * r + 0].success_rate * 100.0;
    const double sh = summaries[3 * r + 1].success_rate * 100.0;
    const double up = summaries[3 * r + 2].success_rate * 100.0;
    std::printf("%-6g %-6g %-7g | %5.0f / %-9.1f %5.0f / %-9.1f %5.0f / %-9.1f\n", row.lambda,
                row.w_star, row.w_prime, row.paper_pss, pss, row.paper_sh, sh, row.paper_up, up);
  }
  return kExitOk;
}

int reproduce_fig4(const fs::path& out_dir, int trials, std::uint64_t seed, int threads) {
  fs::create_directories(out_dir);
  const std::vector<std::string> algorithms = {"pss", "sh", "up"};

  // Panels (a)/(b): the three instances at lambda = 0.5 and 0.9; x is the
  // instance index in the Table A.1 row order.
  std::uint64_t cell = 0;
  for (double lambda : {0.5, 0.9}) {
    std::vector<ExperimentSummary> summaries;
    std::vector<PlotSeries> series(algorithms.size());
    const std::vector<std::pair<double, double>> instances = {{0.4, 0.2}, {0.5, 0.2}, {0.5, 0.3}};
    for (std::size_t inst = 0; inst < instances.size(); ++inst) {
      for (std::size_t a = 0; a < algorithms.size(); ++a) {
        ExperimentConfig config = study_config(algorithms[a], 32, instances[inst].first,
                                               instances[inst].second, lambda, 2000, trials,
                                               threads);
        config.lambda = lambda;
        config.master_seed = derive_seed(seed, cell++, StreamRole::kSweepCell);
        const ExperimentSummary summary = run_experiment(config);
        series[a].label = algorithms[a];
        series[a].x.push_back(static_cast<double>(inst + 1));
        series[a].y.push_back(summary.success_rate);
        series[a].ci_low.push_back(summary.ci_low);
        series[a].ci_high.push_back(summary.ci_high);
        summaries.push_back(summary);
      }
    }
    const std::string tag = lambda == 0.5 ? "a" : "b";
    write_csv(summaries, (out_dir / ("fig4" + tag + ".csv")).string());
    write_text(out_dir / ("fig4" + tag + ".svg"),
               render_line_chart("instances (w*,w') at lambda=" + std::to_string(lambda),
                                 "instance", "success rate", series));
    std::cout << "panel " << tag << " done\n";
  }

  // Panel (c): effect of L at T = 2000, and panel (d): effect of T at L = 32.
  for (const bool sweep_L : {true, false}) {
    std::vector<ExperimentSummary> all;
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      ExperimentConfig config = study_config(algorithms[a], 32, 0.4, 0.2, 0.5, 2000, trials,
                                             threads);
      config.lambda = 0.5;
      if (sweep_L) {
        config.sweep_num_arms = {8, 16, 32, 64, 128};
      } else {
        config.sweep_horizon = {500, 1000, 2000, 5000, 10000};
      }
      config.master_seed = derive_seed(seed, cell++, StreamRole::kSweepCell);
      const std::string tag = sweep_L ? "c" : "d";
      write_text(out_dir / ("fig4" + tag + "_" + algorithms[a] + ".config"),
                 config_to_file_text(config));
      std::vector<ExperimentSummary> summaries = run_sweep(config);
      all.insert(all.end(), summaries.begin(), summaries.end());
    }
    const std::string tag = sweep_L ? "c" : "d";
    const fs::path csv_path = out_dir / ("fig4" + tag + ".csv");
    write_csv(all, csv_path.string());
    cmd_plot(csv_path.string(), (out_dir / ("fig4" + tag + ".svg")).string());
    std::cout << "panel " << tag << " done\n";
  }
  return kExitOk;
}

int reproduce_fig_a1(const fs::path& out_dir, int trials, std::uint64_t seed, int threads) {
  fs::create_directories(out_dir);
  const std::vector<std::string> algorithms = {"pss", "sh", "up"};
  const std::vector<std::pair<int, double>> panels = {{32, 9.0}, {64, 19.0}, {128, 39.0}};
  std::uint64_t cell = 0;
  for (const auto& [num_arms, lambda] : panels) {
    std::vector<ExperimentSummary> all;
    for (const std::string& alg : algorithms) {
      ExperimentConfig config =
          study_config(alg, num_arms, 0.4, 0.2, lambda, 2000, trials, threads);
      config.lambda = lambda;
      config.sweep_horizon = {2000, 5000, 10000, 20000};
      config.master_seed = derive_seed(seed, cell++, StreamRole::kSweepCell);
      write_text(out_dir / ("figa1_L" + std::to_string(num_arms) + "_" + alg + ".config"),
                 config_to_file_text(config));
      std::vector<ExperimentSummary> summaries = run_sweep(config);
      all.insert(all.end(), summaries.begin(), summaries.end());
    }
    const std::string stem = "figa1_L" + std::to_string(num_arms);
    const fs::path csv_path = out_dir / (stem + ".csv");
    write_csv(all, csv_path.string());
    cmd_plot(csv_path.string(), (out_dir / (stem + ".svg")).string());

    double sh_max = 0.0, pss_min_advantage = 1.0;
    for (std::size_t i = 0; i < 4; ++i) {
      const double pss_rate = all[i].success_rate;       // pss block first
      const double sh_rate = all[4 + i].success_rate;    // then sh
      sh_max = std::max(sh_max, sh_rate);
      pss_min_advantage = std::min(pss_min_advantage, pss_rate - sh_rate);
    }
    std::printf("panel L=%d lambda=%g: SH max success %.3f, min(PSS-SH) gap %+.3f\n", num_arms,
                lambda, sh_max, pss_min_advantage);
  }
  return kExitOk;
}

int cmd_reproduce(const std::string& name, const std::string& out_dir, int trials,
                  std::uint64_t seed, int threads) {
  const fs::path base = fs::path(out_dir) / name;
  if (name == "table-a1") return reproduce_table_a1(base, trials, seed, threads);
  if (name == "fig-4") return reproduce_fig4(base, trials, seed, threads);
  if (name == "fig-a1") return reproduce_fig_a1(base, trials, seed, threads);
  throw ConfigError("unknown study '" + name + "' (expected table-a1, fig-4, or fig-a1)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"banditlab: best-arm identification under adversarial reward corruption"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  bool per_trial = false;
  CLI::App* run_cmd = app.add_subcommand("run", "run one experiment (or a sweep config)");
  add_override_flags(run_cmd, run_opts);
  run_cmd->add_flag("--per-trial", per_trial, "also write per-trial results CSV");
  bool step_trace = false;
  run_cmd->add_flag("--trace", step_trace, "also write a per-step trace of trial 0");

  CommonOptions sweep_opts;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run the Cartesian product of sweep axes");
  add_override_flags(sweep_cmd, sweep_opts);

  CommonOptions analyze_opts;
  std::string analyze_csv;
  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "closed-form hardness, guarantees, and comparison table");
  add_override_flags(analyze_cmd, analyze_opts);
  analyze_cmd->add_option("--csv", analyze_csv, "also write the comparison table as CSV");

  std::string repro_name;
  std::string repro_out = "out";
  int repro_trials = 1000;
  std::uint64_t repro_seed = 1;
  int repro_threads = 0;
  CLI::App* repro_cmd = app.add_subcommand("reproduce", "run a built-in study");
  repro_cmd->add_option("name", repro_name, "table-a1 | fig-4 | fig-a1")->required();
  repro_cmd->add_option("--out", repro_out, "output directory");
  repro_cmd->add_option("--trials", repro_trials, "trials per cell (reference study used 100)");
  repro_cmd->add_option("--seed", repro_seed, "master seed");
  repro_cmd->add_option("--threads", repro_threads, "worker threads (0 = hardware)");

  std::string plot_csv, plot_out = "plot.svg";
  CLI::App* plot_cmd = app.add_subcommand("plot", "render a results CSV as an SVG line chart");
  plot_cmd->add_option("--csv", plot_csv, "results CSV path")->required();
  plot_cmd->add_option("--out", plot_out, "output SVG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_opts, per_trial, step_trace);
    if (sweep_cmd->parsed()) return cmd_run(sweep_opts, false, false);
    if (analyze_cmd->parsed()) return cmd_analyze(analyze_opts, analyze_csv);
    if (repro_cmd->parsed()) {
      return cmd_reproduce(repro_name, repro_out, repro_trials, repro_seed, repro_threads);
    }
    if (plot_cmd->parsed()) return cmd_plot(plot_csv, plot_out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
