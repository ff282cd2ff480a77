#include "banditlab/adversaries.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "banditlab/errors.hpp"

namespace banditlab {

namespace {

// Means sorted in descending order; rank 1 is the best arm.
std::vector<double> descending_means(const BanditInstance& instance) {
  std::vector<double> sorted = instance.means;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  return sorted;
}

}  // namespace

void NoopAdversary::corrupt(const AdversaryView&, std::span<double>, Rng&) {}

// ---------------------------------------------------------------------------
// Coupling attack

CouplingAttack::CouplingAttack(const BanditInstance& instance, long long horizon,
                               double lambda)
    : target_(instance.best_arm) {
  const std::vector<double> sorted = descending_means(instance);
  const double w1 = sorted[0];
  const double w2 = sorted[1];
  const double w3 = sorted.size() > 2 ? sorted[2] : 0.0;
  delta_ = w1 - w2;
  if (!(w2 - delta_ > w3)) {
    throw PreconditionViolated("coupling attack requires w(2) - delta > w(3)");
  }
  gate_ = 2.0 * delta_ / w1;
  if (!(gate_ >= 0.0 && gate_ <= 1.0)) {
    throw PreconditionViolated("coupling attack requires 2*delta/w(1) in [0,1]");
  }
  if (lambda < 0.0) throw PreconditionViolated("lambda must be nonnegative");
  designed_budget_ = theorem31_budget(delta_, horizon, lambda);
}

void CouplingAttack::corrupt(const AdversaryView& view, std::span<double> corruption,
                             Rng& rng) {
  // The gate is drawn every step, independent of the raw rewards.
  const bool gate = rng.bernoulli(gate_);
  if (view.remaining_budget >= 1.0 && view.raw_now[target_] == 1.0 && gate) {
    corruption[target_] = -1.0;
  }
}

// ---------------------------------------------------------------------------
// SH schedule attack

ShScheduleAttack::ShScheduleAttack(const BanditInstance& instance, long long horizon,
                                   double lambda)
    : target_(instance.best_arm), num_arms_(instance.num_arms()) {
  const std::vector<double> sorted = descending_means(instance);
  const double w1 = sorted[0];
  const double delta = w1 - sorted[1];
  if (!(delta > 0.0 && delta < 0.25)) {
    throw PreconditionViolated("schedule attack requires delta in (0, 1/4)");
  }
  if (lambda < 0.0) throw PreconditionViolated("lambda must be nonnegative");
  gate_ = 2.0 * delta / w1;
  if (gate_ > 1.0) throw PreconditionViolated("schedule attack requires 2*delta/w(1) <= 1");

  const PhaseSchedule sh = banditlab::sh_schedule(num_arms_, horizon);
  phase1_pull_window_ = sh.sh_pull_counts[0] * num_arms_;
  designed_budget_ = theorem43_budget(delta, num_arms_, horizon, lambda);
}

bool ShScheduleAttack::is_attack_step(long long t) const {
  // Phase 1 starts at t = 1; SH pulls arm `target_` whenever the phase
  // offset is congruent to the target's position in the ascending order,
  // which for the full ground set is the arm id itself.
  return t <= phase1_pull_window_ && (t - 1) % num_arms_ == target_;
}

void ShScheduleAttack::corrupt(const AdversaryView& view, std::span<double> corruption,
                               Rng& rng) {
  if (!is_attack_step(view.t)) return;
  if (view.remaining_budget < 1.0) return;
  if (view.raw_now[target_] != 1.0) return;
  if (rng.bernoulli(gate_)) corruption[target_] = -1.0;
}

// ---------------------------------------------------------------------------
// Strategies I and II

OneToZeroAttack::OneToZeroAttack(const BanditInstance&, long long, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw PreconditionViolated("strategy I requires lambda in (0,1)");
  }
}

void OneToZeroAttack::corrupt(const AdversaryView& view, std::span<double> corruption,
                              Rng&) {
  if (view.remaining_budget < 1.0) return;
  for (int i = 0; i < view.num_arms; ++i) {
    if (view.raw_now[i] == 1.0) corruption[i] = -1.0;
  }
}

ZeroToOneAttack::ZeroToOneAttack(const BanditInstance&, long long, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw PreconditionViolated("strategy II requires lambda in (0,1)");
  }
}

void ZeroToOneAttack::corrupt(const AdversaryView& view, std::span<double> corruption,
                              Rng&) {
  if (view.remaining_budget < 1.0) return;
  for (int i = 0; i < view.num_arms; ++i) {
    if (view.raw_now[i] == 0.0) corruption[i] = 1.0;
  }
}

// ---------------------------------------------------------------------------

double theorem31_budget(double delta, long long horizon, double lambda) {
  return 1.0 + (1.0 + lambda) * 2.0 * delta * static_cast<double>(horizon);
}

double theorem43_budget(double delta, int num_arms, long long horizon, double lambda) {
  return (1.0 + lambda) * 2.0 * delta * static_cast<double>(horizon) /
         (num_arms * std::log2(static_cast<double>(num_arms)));
}

double theorem44_one_to_zero_budget(double best_mean, int num_arms, long long horizon,
                                    double lambda) {
  return num_arms * (1.0 - (1.0 - lambda) * (1.0 - best_mean)) * static_cast<double>(horizon);
}

double theorem44_zero_to_one_budget(double worst_mean, int num_arms, long long horizon,
                                    double lambda) {
  return num_arms * (1.0 - (1.0 - lambda) * worst_mean) * static_cast<double>(horizon);
}

std::unique_ptr<Adversary> make_adversary(const std::string& name,
                                          const BanditInstance& instance, long long horizon,
                                          double lambda) {
  if (name == "noop") return std::make_unique<NoopAdversary>();
  if (name == "coupling") return std::make_unique<CouplingAttack>(instance, horizon, lambda);
  if (name == "sh-schedule") {
    return std::make_unique<ShScheduleAttack>(instance, horizon, lambda);
  }
  if (name == "one-to-zero") return std::make_unique<OneToZeroAttack>(instance, horizon, lambda);
  if (name == "zero-to-one") return std::make_unique<ZeroToOneAttack>(instance, horizon, lambda);
  throw ConfigError("unknown adversary '" + name +
                    "' (expected noop, coupling, sh-schedule, one-to-zero, or zero-to-one)");
}

}  // namespace banditlab
