#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "banditlab/core.hpp"
#include "banditlab/engine.hpp"

namespace banditlab {

/// Instance description: either explicit means or two-group parameters.
struct InstanceSpec {
  std::vector<double> means;
  int num_arms = 0;
  double w_star = 0.0;
  double w_prime = 0.0;

  bool is_explicit() const { return !means.empty(); }
  BanditInstance build() const;
};

struct ExperimentConfig {
  InstanceSpec instance;
  std::string algorithm = "pss";
  double u = 2.0;
  std::string adversary = "noop";
  double lambda = 0.0;
  long long horizon = 0;
  std::optional<double> budget;  // exactly one of budget / cps_rule
  std::string cps_rule;          // theorem-3.1 | theorem-4.3 | theorem-4.4-I | theorem-4.4-II
  int trials = 1;
  std::uint64_t master_seed = 0;
  int threads = 0;  // 0 = hardware concurrency

  // Sweep axes; empty means the quantity is fixed at its scalar value above.
  std::vector<long long> sweep_horizon;
  std::vector<int> sweep_num_arms;
  std::vector<double> sweep_lambda;
  std::vector<double> sweep_w_star;
  std::vector<double> sweep_w_prime;

  bool has_sweep() const {
    return !(sweep_horizon.empty() && sweep_num_arms.empty() && sweep_lambda.empty() &&
             sweep_w_star.empty() && sweep_w_prime.empty());
  }
};

/// Aggregate of one experiment cell. Rerunning with the same configuration
/// and master seed reproduces it exactly, at any parallelism level.
struct ExperimentSummary {
  std::string algorithm;
  std::string adversary;
  int num_arms = 0;
  long long horizon = 0;
  double u = 0.0;
  double lambda = 0.0;
  double budget = 0.0;
  int trials = 0;
  int successes = 0;
  double success_rate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double mean_gap = 0.0;
  double mean_budget_spent = 0.0;
  std::uint64_t master_seed = 0;
  std::string config_hash;
  std::vector<TrialResult> per_trial;  // ordered by trial index
};

/// 95% Wilson score interval for `successes` out of `trials`.
struct Interval {
  double low = 0.0;
  double high = 0.0;
};
Interval wilson_interval(int successes, int trials);

/// Budget implied by the configuration: the explicit value, or the named
/// rule evaluated on the instance at hand.
double resolve_budget(const ExperimentConfig& config, const BanditInstance& instance);

/// Runs config.trials independent trials with per-trial seeds derived from
/// (master_seed, trial index, role) and aggregates them in trial order.
ExperimentSummary run_experiment(const ExperimentConfig& config);

/// Cartesian product of the sweep axes (each sorted ascending), one
/// run_experiment per cell with an independently derived master seed.
std::vector<ExperimentSummary> run_sweep(const ExperimentConfig& config);

/// Results CSV with the fixed schema
/// algorithm,adversary,L,T,u,lambda,C,trials,successes,success_rate,
/// ci_low,ci_high,mean_gap,mean_budget_spent,master_seed,config_hash.
std::string summaries_to_csv(const std::vector<ExperimentSummary>& summaries);
void write_csv(const std::vector<ExperimentSummary>& summaries, const std::string& path);

/// Per-trial CSV: trial_id,seed,output_arm,best_arm,success,gap,budget_spent.
std::string trials_to_csv(const ExperimentSummary& summary, const BanditInstance& instance);

/// Parses the flat key=value config format ('#' comments, comma lists for
/// sweep axes). Throws ConfigError naming the offending key.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Canonical serialization (sorted keys) used for hashing and provenance.
std::string canonical_config_text(const ExperimentConfig& config);
std::string config_hash(const ExperimentConfig& config);

}  // namespace banditlab
