#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "banditlab/core.hpp"
#include "banditlab/engine.hpp"

namespace banditlab {

/// Probabilistic sequential shrinking with rate u: in each of M equal-length
/// phases, pull an arm uniformly at random from the active set; at the phase
/// end keep the ceil(L/u^m) arms with the highest phase estimate
/// S_m(i) / n_m, where n_m = N/|A_{m-1}| is the expected (possibly
/// fractional) pull count. Ties are broken uniformly at random. Steps beyond
/// N*M are idle.
class PssAgent : public Agent {
 public:
  PssAgent(int num_arms, long long horizon, double shrink_rate);

  std::optional<ArmId> select(long long t, Rng& rng) override;
  void observe(long long t, ArmId arm, double corrupted_reward) override;
  ArmId recommend(Rng& rng) override;
  std::vector<long long> phase_pull_counts() const override { return phase_pulls_; }

  const PhaseSchedule& schedule() const { return schedule_; }
  const std::vector<ArmId>& active_set() const { return active_; }
  double phase_sum(ArmId arm) const { return sums_[arm]; }

  /// Called at every phase end with the phase index, the arms that were
  /// active, their estimates w_hat, and their realized pull counts. Used by
  /// the statistical diagnostics and tests.
  using PhaseEndObserver =
      std::function<void(int phase, const std::vector<ArmId>& active,
                         const std::vector<double>& w_hat, const std::vector<long long>& pulls)>;
  void set_phase_end_observer(PhaseEndObserver observer) { observer_ = std::move(observer); }

  /// Finalizes the current phase: computes estimates, shrinks the active
  /// set, resets phase sums. Exposed for targeted tests.
  void end_phase(Rng& rng);

 private:
  void advance_to_phase(int phase, Rng& rng);

  PhaseSchedule schedule_;
  std::vector<ArmId> active_;           // ascending
  std::vector<double> sums_;            // indexed by arm id
  std::vector<long long> pulls_;        // this phase, indexed by arm id
  std::vector<long long> phase_pulls_;  // per finished phase, per arm (L entries each)
  int finalized_phases_ = 0;
  PhaseEndObserver observer_;
};

/// Successive halving: M = ceil(log2 L) phases; in phase m each active arm
/// is pulled exactly tau_m = floor(T/(M*|A_{m-1}|)) times by round-robin
/// over the active set in ascending arm order, then the phase idles out.
/// Survivors are the top ceil(|A|/2) by empirical mean over realized pulls;
/// ties uniform at random. The pull sequence itself is deterministic.
class ShAgent : public Agent {
 public:
  ShAgent(int num_arms, long long horizon);

  std::optional<ArmId> select(long long t, Rng& rng) override;
  void observe(long long t, ArmId arm, double corrupted_reward) override;
  ArmId recommend(Rng& rng) override;
  std::vector<long long> phase_pull_counts() const override { return phase_pulls_; }

  const PhaseSchedule& schedule() const { return schedule_; }
  const std::vector<ArmId>& active_set() const { return active_; }

  void end_phase(Rng& rng);

 private:
  void advance_to_phase(int phase, Rng& rng);

  PhaseSchedule schedule_;
  std::vector<ArmId> active_;
  std::vector<double> sums_;
  std::vector<long long> pulls_;        // this phase, indexed by arm id
  std::vector<long long> phase_pulls_;  // per finished phase, per arm (L entries each)
  int finalized_phases_ = 0;
};

/// Uniform pull: arm 0 for floor(T/L) steps, then arm 1, and so on;
/// steps beyond L*floor(T/L) are idle. Recommends the empirical argmax,
/// ties uniform at random.
class UpAgent : public Agent {
 public:
  UpAgent(int num_arms, long long horizon);

  std::optional<ArmId> select(long long t, Rng& rng) override;
  void observe(long long t, ArmId arm, double corrupted_reward) override;
  ArmId recommend(Rng& rng) override;
  std::vector<long long> phase_pull_counts() const override;

 private:
  int num_arms_;
  long long pulls_per_arm_;
  std::vector<double> sums_;
  std::vector<long long> counts_;
};

/// Keep the `keep` arms with the highest scores; ties broken uniformly at
/// random with `rng`. Returns the surviving arms in ascending order.
std::vector<ArmId> top_k_random_ties(const std::vector<ArmId>& arms,
                                     const std::vector<double>& scores, int keep, Rng& rng);

/// Agent factory: name is one of "pss", "sh", "up"; `u` applies to pss only.
std::unique_ptr<Agent> make_agent(const std::string& name, int num_arms, long long horizon,
                                  double shrink_rate);

}  // namespace banditlab
