#include "banditlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "banditlab/adversaries.hpp"
#include "banditlab/agents.hpp"
#include "banditlab/errors.hpp"

namespace banditlab {

namespace {

// Gaps of the suboptimal arms ordered by descending mean, so that index j
// (0-based) corresponds to rank i = j + 2.
std::vector<double> ranked_gaps(const BanditInstance& instance) {
  std::vector<double> sorted = instance.means;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  if (sorted.size() >= 2 && sorted[0] == sorted[1]) {
    throw NonUniqueBest("hardness measures need a unique best arm");
  }
  std::vector<double> gaps;
  gaps.reserve(sorted.size() - 1);
  for (std::size_t j = 1; j < sorted.size(); ++j) gaps.push_back(sorted[0] - sorted[j]);
  return gaps;
}

}  // namespace

double h2(const BanditInstance& instance) {
  const std::vector<double> gaps = ranked_gaps(instance);
  double value = 0.0;
  for (std::size_t j = 0; j < gaps.size(); ++j) {
    const double rank = static_cast<double>(j + 2);
    value = std::max(value, rank / (gaps[j] * gaps[j]));
  }
  return value;
}

double h2_tilde(const BanditInstance& instance, double shrink_rate) {
  const int num_arms = instance.num_arms();
  if (!(shrink_rate > 1.0) || shrink_rate > num_arms) {
    throw InvalidU("shrink rate u must lie in (1, L]");
  }
  const std::vector<double> gaps = ranked_gaps(instance);
  double value = 0.0;
  for (std::size_t j = 0; j < gaps.size(); ++j) {
    const double rank = static_cast<double>(j + 2);
    const double numerator = std::min(shrink_rate * rank, static_cast<double>(num_arms));
    value = std::max(value, numerator / (gaps[j] * gaps[j]));
  }
  return value;
}

Guarantee pss_guarantee(const BanditInstance& instance, long long horizon, double shrink_rate,
                        double budget) {
  const int num_arms = instance.num_arms();
  const int phases = ceil_log(num_arms, shrink_rate);
  const long long phase_len = horizon / phases;
  if (phase_len == 0) throw HorizonTooShort("horizon too short for the phase count");

  Guarantee g;
  g.h2 = h2(instance);
  g.h2_tilde = h2_tilde(instance, shrink_rate);
  g.epsilon_c = 8.0 * budget * phases / static_cast<double>(horizon);
  const double exponent = -static_cast<double>(phase_len) / (192.0 * g.h2_tilde);
  g.delta_bound = std::min(1.0, 4.0 * phases * (num_arms - 1) * std::exp(exponent));
  return g;
}

CpsRegime cps_regime(const BanditInstance& instance, double shrink_rate, double budget,
                     long long horizon) {
  const int phases = ceil_log(instance.num_arms(), shrink_rate);
  CpsRegime regime;
  regime.cps = budget / static_cast<double>(horizon);
  regime.low_threshold = instance.min_positive_gap() / (8.0 * phases);
  regime.vacuous_threshold = instance.max_gap() / (8.0 * phases);
  regime.extreme_threshold = instance.max_gap() / 8.0;
  if (regime.cps < regime.low_threshold) {
    regime.classification = Regime::kBaiGuaranteed;
  } else if (regime.cps >= regime.vacuous_threshold) {
    regime.classification = Regime::kVacuous;
  } else {
    regime.classification = Regime::kIntermediate;
  }
  return regime;
}

std::string regime_name(Regime regime) {
  switch (regime) {
    case Regime::kBaiGuaranteed:
      return "BAI-guaranteed";
    case Regime::kIntermediate:
      return "intermediate";
    case Regime::kVacuous:
      return "vacuous";
  }
  return "unknown";
}

std::vector<ComparisonRow> comparison_table(const BanditInstance& instance, long long horizon,
                                            double budget, double shrink_rate) {
  const double num_arms = instance.num_arms();
  const double T = static_cast<double>(horizon);
  const double log_u = std::log(num_arms) / std::log(shrink_rate);
  const double log_2 = std::log2(num_arms);
  const double h2u = h2_tilde(instance, shrink_rate);
  const double h22 = h2_tilde(instance, 2.0);
  const double gap2 = instance.min_positive_gap();
  const double single_phase = num_arms / (gap2 * gap2);  // H2~ at u = L

  std::vector<ComparisonRow> rows;
  rows.push_back({"pss(u)", budget * log_u / T,
                  num_arms * log_u * std::exp(-T / (192.0 * h2u * log_u))});
  rows.push_back({"pss(2)", budget * log_2 / T,
                  num_arms * log_2 * std::exp(-T / (192.0 * h22 * log_2))});
  rows.push_back({"sh", budget * num_arms * log_2 / T,
                  num_arms * log_2 * std::exp(-T / (192.0 * h22 * log_2))});
  rows.push_back({"pss(L)", budget / T, num_arms * std::exp(-T / (192.0 * single_phase))});
  rows.push_back({"up", budget * num_arms / T,
                  num_arms * std::exp(-T / (192.0 * single_phase))});
  return rows;
}

std::vector<EventRateRow> lemma52_event_rate(const BanditInstance& instance, double shrink_rate,
                                             long long horizon, double a, int trials,
                                             std::uint64_t master_seed) {
  if (!(a > 0.0 && a < 1.0)) throw OutOfRange("event width a must lie in (0,1)");

  struct Cell {
    long long active = 0;
    long long upper = 0;
    long long lower = 0;
  };
  std::map<std::pair<int, ArmId>, Cell> cells;

  NoopAdversary noop;
  for (int trial = 0; trial < trials; ++trial) {
    PssAgent agent(instance.num_arms(), horizon, shrink_rate);
    agent.set_phase_end_observer([&](int phase, const std::vector<ArmId>& active,
                                     const std::vector<double>& w_hat,
                                     const std::vector<long long>&) {
      for (std::size_t j = 0; j < active.size(); ++j) {
        Cell& cell = cells[{phase, active[j]}];
        ++cell.active;
        const double mean = instance.means[active[j]];
        if (w_hat[j] >= mean + 2.0 * a) ++cell.upper;
        if (w_hat[j] <= mean - 2.0 * a) ++cell.lower;
      }
    });
    run_trial(instance, agent, noop, horizon, 0.0,
              derive_trial_seeds(master_seed, static_cast<std::uint64_t>(trial)));
  }

  const PhaseSchedule schedule = pss_schedule(instance.num_arms(), horizon, shrink_rate);
  std::vector<EventRateRow> rows;
  rows.reserve(cells.size());
  for (const auto& [key, cell] : cells) {
    EventRateRow row;
    row.phase = key.first;
    row.arm = key.second;
    row.times_active = cell.active;
    row.expected_pulls = schedule.expected_pulls(key.first);
    row.upper_tail_rate = static_cast<double>(cell.upper) / cell.active;
    row.lower_tail_rate = static_cast<double>(cell.lower) / cell.active;
    row.bound = 2.0 * std::exp(-a * a * row.expected_pulls / 3.0);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace banditlab
