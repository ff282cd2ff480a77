#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "banditlab/core.hpp"
#include "banditlab/rng.hpp"

namespace banditlab {

/// Everything the adversary is allowed to condition on when proposing the
/// step-t corruption vector: raw rewards up to and including t, its own past
/// corruptions and the agent's past pulls up to t-1, and the remaining
/// budget. The agent's step-t choice is not part of this view by design.
struct AdversaryView {
  long long t = 0;                       // current step, 1-based
  int num_arms = 0;
  std::span<const double> raw_now;       // W_t(.)
  std::span<const double> raw_history;   // row-major (t x L), includes raw_now
  std::span<const double> corruption_history;  // row-major ((t-1) x L)
  std::span<const int> pull_history;     // i_1 .. i_{t-1}, -1 for idle steps
  double remaining_budget = 0.0;

  std::span<const double> raw_at(long long step) const {
    return raw_history.subspan(static_cast<std::size_t>(step - 1) * num_arms, num_arms);
  }
  std::span<const double> corruption_at(long long step) const {
    return corruption_history.subspan(static_cast<std::size_t>(step - 1) * num_arms, num_arms);
  }
};

/// Corruption strategy. Must fill `corruption` (length L, pre-zeroed) with
/// values in [-1,1] keeping every raw+corruption in [0,1], and must keep its
/// cumulative max-norm cost within the ledger's budget on its own: the
/// engine treats an overdraft as a programming error.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual void corrupt(const AdversaryView& view, std::span<double> corruption, Rng& rng) = 0;
};

/// A best-arm-identification algorithm. The engine calls select for every
/// step t = 1..T in order, reveals the pulled arm's corrupted reward through
/// observe, and asks for the recommendation once the horizon is consumed.
/// Agents see nothing else: no raw rewards, no unpulled arms' values.
class Agent {
 public:
  virtual ~Agent() = default;
  /// Arm to pull at step t, or nullopt to stay idle this step.
  virtual std::optional<ArmId> select(long long t, Rng& rng) = 0;
  virtual void observe(long long t, ArmId arm, double corrupted_reward) = 0;
  virtual ArmId recommend(Rng& rng) = 0;
  /// Realized per-arm pull counts, flattened phase by phase (diagnostic).
  virtual std::vector<long long> phase_pull_counts() const { return {}; }
};

/// Budget bookkeeping for one trial: spent accumulates max_i |c_t(i)|.
struct CorruptionLedger {
  double budget = 0.0;
  double spent = 0.0;
  std::vector<double> per_step_costs;

  double remaining() const { return budget - spent; }
};

/// One protocol step, recorded when tracing is enabled.
struct RoundRecord {
  long long t = 0;
  std::vector<double> raw;
  std::vector<double> corruption;
  std::vector<double> corrupted;
  std::optional<ArmId> pulled;
  std::optional<double> observed;
};

struct TrialResult {
  ArmId output = -1;
  bool success = false;
  double gap_of_output = 0.0;
  double budget_spent = 0.0;
  long long steps_used = 0;  // steps with an actual pull
  std::vector<long long> phase_pulls;
};

struct TrialSeeds {
  std::uint64_t environment = 0;
  std::uint64_t agent = 0;
  std::uint64_t adversary = 0;
};

inline TrialSeeds derive_trial_seeds(std::uint64_t master_seed, std::uint64_t trial_index) {
  return TrialSeeds{derive_seed(master_seed, trial_index, StreamRole::kEnvironment),
                    derive_seed(master_seed, trial_index, StreamRole::kAgent),
                    derive_seed(master_seed, trial_index, StreamRole::kAdversary)};
}

/// Runs the per-step protocol for T steps: draw raw rewards from the
/// environment stream, let the adversary corrupt them (debiting the ledger
/// by the max-norm of its proposal), then let the agent pull and observe
/// only the pulled arm's corrupted value. Identical inputs and seeds yield a
/// bit-identical TrialResult.
///
/// Throws BudgetExceeded if the adversary overdraws the ledger and
/// RangeViolation if any corrupted reward leaves [0,1] or |c| > 1.
TrialResult run_trial(const BanditInstance& instance, Agent& agent, Adversary& adversary,
                      long long horizon, double budget, const TrialSeeds& seeds,
                      std::vector<RoundRecord>* trace = nullptr);

/// True iff two results agree on every recorded field.
bool replay_check(const TrialResult& a, const TrialResult& b);

/// Per-step trace as CSV with the fixed schema
/// t,pulled,observed,per_step_cost,spent. Idle steps leave pulled/observed
/// empty.
std::string trace_to_csv(const std::vector<RoundRecord>& trace);

}  // namespace banditlab
