#pragma once

#include <cstdint>
#include <vector>

namespace banditlab {

using ArmId = int;

/// A stochastic bandit problem: per-arm Bernoulli means in [0,1] with a
/// unique best arm. Arms are identified by their position in `means`; no
/// sorted ordering is imposed on callers. Immutable after construction.
struct BanditInstance {
  std::vector<double> means;
  ArmId best_arm = 0;
  std::vector<double> gaps;  // gaps[i] = means[best_arm] - means[i]

  int num_arms() const { return static_cast<int>(means.size()); }

  /// Largest optimality gap (the worst arm's gap).
  double max_gap() const;
  /// Smallest positive gap, i.e. best-vs-second-best.
  double min_positive_gap() const;
};

/// Build an instance from explicit means.
/// Throws TooFewArms, OutOfRange, or NonUniqueBest.
BanditInstance make_instance(std::vector<double> means);

/// The two-group experiment family: one arm at w_star, one at
/// w_star - (w_star - w_prime)/3, and L-2 arms at w_prime, in that order.
/// Throws InvalidInstance unless 0 < w_prime < w_star <= 1 and L >= 3.
BanditInstance two_group_instance(int num_arms, double w_star, double w_prime);

/// Phase layout shared by the sequential-shrinking agents. For an
/// elimination rate u over L arms: M phases of N = floor(T/M) steps each,
/// active-set sizes |A_m| = ceil(L / u^m) ending at a singleton. The final
/// T - N*M steps of the horizon belong to no phase and are idle.
struct PhaseSchedule {
  int num_arms = 0;
  long long horizon = 0;
  double shrink_rate = 0.0;           // u
  int num_phases = 0;                 // M
  long long phase_len = 0;            // N
  std::vector<int> active_sizes;      // |A_0| .. |A_M|
  std::vector<long long> sh_pull_counts;  // per-phase per-arm pulls; SH only

  /// Probability q_m = 1/|A_{m-1}| of pulling a given active arm, phase in [1,M].
  double pull_probability(int phase) const;
  /// Expected pulls per active arm n_m = N/|A_{m-1}|, kept exact (possibly
  /// fractional); this is the divisor of the phase estimator.
  double expected_pulls(int phase) const;
  /// First and last step (1-based, inclusive) of a phase.
  long long phase_begin(int phase) const { return (phase - 1) * phase_len + 1; }
  long long phase_end(int phase) const { return phase * phase_len; }
};

/// Schedule for the probabilistic shrinking agent with rate u in (1, L].
/// Throws HorizonTooShort when floor(T/M) = 0, InvalidU for u out of range.
PhaseSchedule pss_schedule(int num_arms, long long horizon, double shrink_rate);

/// Schedule for the halving baseline: M = ceil(log2 L), per-phase per-arm
/// pull count floor(T / (M * |A_{m-1}|)). Throws HorizonTooShort when any
/// per-arm count is zero.
PhaseSchedule sh_schedule(int num_arms, long long horizon);

/// Smallest M >= 1 with u^M >= L, robust to floating-point boundary cases.
int ceil_log(int num_arms, double base);

}  // namespace banditlab
