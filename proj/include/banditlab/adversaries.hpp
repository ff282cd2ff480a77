#pragma once

#include <memory>
#include <string>

#include "banditlab/core.hpp"
#include "banditlab/engine.hpp"

namespace banditlab {

/// Never corrupts anything.
class NoopAdversary : public Adversary {
 public:
  void corrupt(const AdversaryView& view, std::span<double> corruption, Rng& rng) override;
};

/// Randomized attack on the best arm: while at least one unit of budget
/// remains, draw a gate G ~ Bern(2*delta/w(1)) each step and flip the best
/// arm's raw reward from 1 to 0 when the gate fires. While the budget lives,
/// the best arm's corrupted rewards are Bernoulli with mean
/// w(1) - 2*delta = w(2) - delta. Other arms are never touched.
class CouplingAttack : public Adversary {
 public:
  /// Requires w(2) - delta > w(3) (with w(3) read as 0 when L = 2) and
  /// 2*delta/w(1) <= 1; throws PreconditionViolated otherwise.
  CouplingAttack(const BanditInstance& instance, long long horizon, double lambda);

  void corrupt(const AdversaryView& view, std::span<double> corruption, Rng& rng) override;

  double delta() const { return delta_; }
  double gate_probability() const { return gate_; }
  /// The budget this attack is designed for: 1 + (1+lambda)*2*delta*T.
  double designed_budget() const { return designed_budget_; }

 private:
  ArmId target_;
  double delta_;
  double gate_;
  double designed_budget_;
};

/// Schedule-aware attack on the halving baseline: precomputes the steps at
/// which SH pulls the best arm during its first phase (possible because the
/// round-robin schedule is deterministic and published) and, only at those
/// steps while at least one unit of budget remains, flips a raw 1 of the
/// best arm to 0 with probability 2*delta/w(1). Zero elsewhere. Designed
/// for the budget (1+lambda)*2*delta*T/(L*log2 L).
class ShScheduleAttack : public Adversary {
 public:
  ShScheduleAttack(const BanditInstance& instance, long long horizon, double lambda);

  void corrupt(const AdversaryView& view, std::span<double> corruption, Rng& rng) override;

  bool is_attack_step(long long t) const;
  double designed_budget() const { return designed_budget_; }

 private:
  ArmId target_;
  int num_arms_;
  double gate_;
  long long phase1_pull_window_;  // L * tau_1 steps
  double designed_budget_;
};

/// Strategy I: while at least one unit of budget remains, shift every raw
/// reward of 1 to 0, across all arms. The agent's observation stream is
/// constantly zero while the attack lives.
class OneToZeroAttack : public Adversary {
 public:
  OneToZeroAttack(const BanditInstance& instance, long long horizon, double lambda);
  void corrupt(const AdversaryView& view, std::span<double> corruption, Rng& rng) override;
};

/// Strategy II: the mirror image, shifting raw zeros to 1.
class ZeroToOneAttack : public Adversary {
 public:
  ZeroToOneAttack(const BanditInstance& instance, long long horizon, double lambda);
  void corrupt(const AdversaryView& view, std::span<double> corruption, Rng& rng) override;
};

// Budgets the attack analyses are stated for. `delta` is the best-vs-second
// gap of the instance at hand.
double theorem31_budget(double delta, long long horizon, double lambda);
double theorem43_budget(double delta, int num_arms, long long horizon, double lambda);
/// Strategy I stays alive through the horizon w.h.p. when C is at least
/// L * (1 - (1-lambda)*(1-w(1))) * T (per-arm-and-step counting; a
/// conservative overestimate of the max-norm ledger cost).
double theorem44_one_to_zero_budget(double best_mean, int num_arms, long long horizon,
                                    double lambda);
double theorem44_zero_to_one_budget(double worst_mean, int num_arms, long long horizon,
                                    double lambda);

/// Adversary factory: name is one of "noop", "coupling", "sh-schedule",
/// "one-to-zero", "zero-to-one".
std::unique_ptr<Adversary> make_adversary(const std::string& name,
                                          const BanditInstance& instance, long long horizon,
                                          double lambda);

}  // namespace banditlab
