#pragma once

#include <string>
#include <vector>

#include "banditlab/core.hpp"

namespace banditlab {

/// Instance hardness H2: max over suboptimal ranks i (2..L, by descending
/// mean) of i / gap_i^2.
double h2(const BanditInstance& instance);

/// Generalized hardness for shrink rate u in (1, L]:
/// max over suboptimal ranks i of min(u*i, L) / gap_i^2. Satisfies
/// H2 <= H2~ <= u*H2, is nondecreasing in u, tends to H2 as u -> 1+, and
/// equals L / gap_2^2 at u = L.
double h2_tilde(const BanditInstance& instance, double shrink_rate);

/// The (epsilon_C, delta)-PAC guarantee of the shrinking agent:
/// epsilon_c = 8*C*ceil(log_u L)/T and
/// delta_bound = min(1, 4*ceil(log_u L)*(L-1)*exp(-floor(T/ceil(log_u L)) /
/// (192*H2~))).
struct Guarantee {
  double epsilon_c = 0.0;
  double delta_bound = 0.0;
  double h2 = 0.0;
  double h2_tilde = 0.0;
};

Guarantee pss_guarantee(const BanditInstance& instance, long long horizon, double shrink_rate,
                        double budget);

enum class Regime { kBaiGuaranteed, kIntermediate, kVacuous };

/// Classification of the corruption-per-step C/T against the identification
/// thresholds: below gap_2/(8*ceil(log_u L)) the best arm is recovered with
/// exponentially small failure probability; at or above gap_L/(8*ceil(log_u L))
/// the gap guarantee says nothing. The extreme threshold gap_L/8 is the
/// u-independent version of the latter.
struct CpsRegime {
  double cps = 0.0;
  double low_threshold = 0.0;
  double vacuous_threshold = 0.0;
  double extreme_threshold = 0.0;
  Regime classification = Regime::kIntermediate;
};

CpsRegime cps_regime(const BanditInstance& instance, double shrink_rate, double budget,
                     long long horizon);

std::string regime_name(Regime regime);

/// One row of the algorithm-comparison table: the order of the gap bound
/// epsilon_C and of the failure probability delta, evaluated numerically.
struct ComparisonRow {
  std::string algorithm;
  double epsilon_c = 0.0;
  double delta = 0.0;
};

/// Rows for PSS(u), PSS(2), SH, PSS(L), and UP at the given arguments. The
/// epsilon_C entries are C*log_u L/T, C*log_2 L/T, C*L*log_2 L/T, C/T and
/// C*L/T respectively (real logarithms).
std::vector<ComparisonRow> comparison_table(const BanditInstance& instance, long long horizon,
                                            double budget, double shrink_rate);

/// Empirical rate of the phase-m concentration events for one (phase, arm)
/// cell, measured with the no-corruption adversary, against the analytic
/// bound 2*exp(-a^2 * n_m / 3) per tail.
struct EventRateRow {
  int phase = 0;
  ArmId arm = -1;
  long long times_active = 0;
  double expected_pulls = 0.0;  // n_m
  double upper_tail_rate = 0.0;  // freq of w_hat >= w + 2a
  double lower_tail_rate = 0.0;  // freq of w_hat <= w - 2a
  double bound = 0.0;
};

/// Runs `trials` seeded shrinking-phase simulations (no corruption) and
/// reports, per phase and arm, how often the phase estimate leaves
/// [w(i) - 2a, w(i) + 2a], next to the per-tail analytic bound.
std::vector<EventRateRow> lemma52_event_rate(const BanditInstance& instance, double shrink_rate,
                                             long long horizon, double a, int trials,
                                             std::uint64_t master_seed);

}  // namespace banditlab
