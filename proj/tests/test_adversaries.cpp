#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "banditlab/adversaries.hpp"
#include "banditlab/agents.hpp"
#include "banditlab/engine.hpp"
#include "banditlab/errors.hpp"

using namespace banditlab;

namespace {

// Pulls arm 0 forever; used to carry an adversary through the protocol.
class PinnedAgent : public Agent {
 public:
  std::optional<ArmId> select(long long, Rng&) override { return 0; }
  void observe(long long, ArmId, double) override {}
  ArmId recommend(Rng&) override { return 0; }
};

}  // namespace

TEST_CASE("noop adversary proposes the zero vector") {
  const BanditInstance inst = make_instance({0.9, 0.2});
  PinnedAgent agent;
  NoopAdversary noop;
  std::vector<RoundRecord> trace;
  const TrialResult result = run_trial(inst, agent, noop, 50, 3.0, TrialSeeds{1, 2, 3}, &trace);
  CHECK(result.budget_spent == 0.0);
  for (const RoundRecord& record : trace) {
    for (double c : record.corruption) CHECK(c == 0.0);
  }
}

TEST_CASE("theorem budget formulas match hand arithmetic") {
  const double delta = 0.2 / 3.0;  // two-group (0.4, 0.2)
  CHECK(theorem31_budget(delta, 2000, 0.5) == doctest::Approx(401.0));
  CHECK(theorem43_budget(delta, 32, 2000, 0.5) == doctest::Approx(2.5));
  CHECK(theorem44_one_to_zero_budget(0.4, 4, 100, 0.5) == doctest::Approx(280.0));
  CHECK(theorem44_zero_to_one_budget(0.2, 4, 100, 0.5) == doctest::Approx(360.0));
}

TEST_CASE("coupling attack: corrupted best-arm rewards look like the decoy arm") {
  // two-group(4, 0.4, 0.2): w2 - delta = 4/15 > w3 = 0.2 holds.
  const BanditInstance inst = two_group_instance(4, 0.4, 0.2);
  const long long horizon = 150000;
  const double lambda = 0.5;
  CouplingAttack attack(inst, horizon, lambda);
  const double budget = attack.designed_budget();

  PinnedAgent agent;
  std::vector<RoundRecord> trace;
  run_trial(inst, agent, attack, horizon, budget, TrialSeeds{11, 12, 13}, &trace);

  long long live_steps = 0, corrupted_ones = 0;
  double spent = 0.0;
  for (const RoundRecord& record : trace) {
    if (budget - spent >= 1.0) {
      ++live_steps;
      corrupted_ones += record.corrupted[inst.best_arm] == 1.0 ? 1 : 0;
    }
    double cost = 0.0;
    for (double c : record.corruption) cost = std::max(cost, std::abs(c));
    spent += cost;
  }
  REQUIRE(live_steps >= 100000);
  const double target = inst.means[1] - inst.gaps[1];  // w(2) - delta
  const double freq = corrupted_ones / static_cast<double>(live_steps);
  const double sigma = std::sqrt(target * (1.0 - target) / live_steps);
  CHECK(std::abs(freq - target) < 3.0 * sigma);
}

TEST_CASE("coupling attack never corrupts on a zero raw reward") {
  const BanditInstance inst = two_group_instance(4, 0.4, 0.2);
  CouplingAttack attack(inst, 2000, 0.5);
  PinnedAgent agent;
  std::vector<RoundRecord> trace;
  run_trial(inst, agent, attack, 2000, attack.designed_budget(), TrialSeeds{3, 4, 5}, &trace);
  for (const RoundRecord& record : trace) {
    if (record.raw[inst.best_arm] == 0.0) {
      for (double c : record.corruption) CHECK(c == 0.0);
    }
    // Non-target arms are never touched.
    for (int i = 0; i < inst.num_arms(); ++i) {
      if (i != inst.best_arm) CHECK(record.corrupted[i] == record.raw[i]);
    }
  }
}

TEST_CASE("coupling attack precondition and depletion bound") {
  // w(2) - delta < w3 fails the precondition on this instance.
  CHECK_THROWS_AS(CouplingAttack(make_instance({0.5, 0.4, 0.35}), 100, 0.5),
                  PreconditionViolated);

  // Depletion frequency stays below exp(-2 lambda^2 delta T / 3) plus slack;
  // lambda = 0.1 keeps the bound itself well away from both 0 and 1.
  const BanditInstance inst = two_group_instance(4, 0.7, 0.1);
  const double lambda = 0.1;
  const long long horizon = 2000;
  const double delta = inst.gaps[1];
  int depleted = 0;
  const int trials = 1000;
  double total_spend = 0.0;
  PinnedAgent agent;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    CouplingAttack attack(inst, horizon, lambda);
    std::vector<RoundRecord> trace;
    const TrialResult result = run_trial(inst, agent, attack, horizon,
                                         attack.designed_budget(),
                                         derive_trial_seeds(31, trial), &trace);
    total_spend += result.budget_spent;
    if (attack.designed_budget() - result.budget_spent < 1.0) ++depleted;
  }
  const double bound = std::exp(-2.0 * lambda * lambda * delta * horizon / 3.0);
  CHECK(depleted / static_cast<double>(trials) <= bound + 0.01);

  // Per-horizon corruption spend concentrates at 2*delta*T.
  const double mean_spend = total_spend / trials;
  const double step_rate = 2.0 * delta;  // P(corrupt) per live step
  const double sigma =
      std::sqrt(horizon * step_rate * (1.0 - step_rate) / trials);
  CHECK(std::abs(mean_spend - step_rate * horizon) < 4.0 * sigma);
}

TEST_CASE("schedule attack corrupts only at the halving agent's phase-1 target steps") {
  const BanditInstance inst = two_group_instance(32, 0.4, 0.2);
  const long long horizon = 2000;
  ShScheduleAttack attack(inst, horizon, 0.5);
  CHECK(attack.designed_budget() == doctest::Approx(2.5));

  // tau_1 = 12, so the target (arm 0) is hit at t = 1, 33, ..., 353.
  CHECK(attack.is_attack_step(1));
  CHECK(attack.is_attack_step(353));
  CHECK_FALSE(attack.is_attack_step(2));
  CHECK_FALSE(attack.is_attack_step(385));
  CHECK_FALSE(attack.is_attack_step(401));

  PinnedAgent agent;
  std::vector<RoundRecord> trace;
  run_trial(inst, agent, attack, horizon, attack.designed_budget(), TrialSeeds{7, 8, 9},
            &trace);
  for (const RoundRecord& record : trace) {
    double cost = 0.0;
    for (double c : record.corruption) cost = std::max(cost, std::abs(c));
    if (!attack.is_attack_step(record.t)) CHECK(cost == 0.0);
    for (int i = 0; i < inst.num_arms(); ++i) {
      if (i != inst.best_arm) CHECK(record.corrupted[i] == record.raw[i]);
    }
  }
}

TEST_CASE("schedule attack rejects out-of-range gaps") {
  // two-group(8, 0.9, 0.1): delta = 0.8/3 > 1/4.
  CHECK_THROWS_AS(ShScheduleAttack(two_group_instance(8, 0.9, 0.1), 800, 0.5),
                  PreconditionViolated);
}

TEST_CASE("strategy I zeroes the whole observation stream while funded") {
  const BanditInstance inst = two_group_instance(4, 0.9, 0.3);
  OneToZeroAttack attack(inst, 100, 0.5);
  PinnedAgent agent;
  std::vector<RoundRecord> trace;
  run_trial(inst, agent, attack, 100, 1000.0, TrialSeeds{1, 2, 3}, &trace);
  for (const RoundRecord& record : trace) {
    double cost = 0.0;
    for (int i = 0; i < inst.num_arms(); ++i) {
      CHECK(record.corrupted[i] == 0.0);
      cost = std::max(cost, std::abs(record.corruption[i]));
    }
    // A step whose raw rewards are all zero costs nothing.
    const bool any_one =
        std::any_of(record.raw.begin(), record.raw.end(), [](double w) { return w == 1.0; });
    CHECK(cost == (any_one ? 1.0 : 0.0));
  }
}

TEST_CASE("strategy I stops cleanly when the budget runs dry") {
  const BanditInstance inst = make_instance({1.0, 0.0});
  OneToZeroAttack attack(inst, 50, 0.5);
  PinnedAgent agent;
  std::vector<RoundRecord> trace;
  const TrialResult result =
      run_trial(inst, agent, attack, 50, 7.0, TrialSeeds{2, 3, 4}, &trace);
  CHECK(result.budget_spent == 7.0);  // arm 0 is raw 1 every step; 7 unit corruptions
  for (const RoundRecord& record : trace) {
    if (record.t > 7) CHECK(record.corrupted[0] == 1.0);
  }
}

TEST_CASE("strategy II mirrors strategy I") {
  const BanditInstance inst = two_group_instance(4, 0.9, 0.3);
  ZeroToOneAttack attack(inst, 100, 0.5);
  PinnedAgent agent;
  std::vector<RoundRecord> trace;
  run_trial(inst, agent, attack, 100, 1000.0, TrialSeeds{4, 5, 6}, &trace);
  for (const RoundRecord& record : trace) {
    double cost = 0.0;
    for (int i = 0; i < inst.num_arms(); ++i) {
      CHECK(record.corrupted[i] == 1.0);
      cost = std::max(cost, std::abs(record.corruption[i]));
    }
    const bool any_zero =
        std::any_of(record.raw.begin(), record.raw.end(), [](double w) { return w == 0.0; });
    CHECK(cost == (any_zero ? 1.0 : 0.0));
  }
}

TEST_CASE("strategies validate lambda") {
  const BanditInstance inst = two_group_instance(4, 0.9, 0.3);
  CHECK_THROWS_AS(OneToZeroAttack(inst, 100, 0.0), PreconditionViolated);
  CHECK_THROWS_AS(ZeroToOneAttack(inst, 100, 1.0), PreconditionViolated);
}

TEST_CASE("every shipped adversary is self-limiting at its designed budget") {
  const BanditInstance inst = two_group_instance(8, 0.4, 0.2);
  const long long horizon = 800;
  const double delta = inst.gaps[1];
  const std::vector<std::pair<std::string, double>> cases = {
      {"noop", 0.0},
      {"coupling", theorem31_budget(delta, horizon, 0.5)},
      {"sh-schedule", theorem43_budget(delta, 8, horizon, 0.5)},
      {"one-to-zero", theorem44_one_to_zero_budget(0.4, 8, horizon, 0.5)},
      {"zero-to-one", theorem44_zero_to_one_budget(0.2, 8, horizon, 0.5)},
  };
  for (const auto& [name, budget] : cases) {
    for (std::uint64_t trial = 0; trial < 30; ++trial) {
      const auto adversary = make_adversary(name, inst, horizon, 0.5);
      const auto agent = make_agent("pss", 8, horizon, 2.0);
      // run_trial throws BudgetExceeded on any overdraft; reaching the end
      // with spent <= budget is the property under test.
      const TrialResult result =
          run_trial(inst, *agent, *adversary, horizon, budget, derive_trial_seeds(trial, trial));
      CHECK(result.budget_spent <= budget + 1e-9);
    }
  }
}

TEST_CASE("adversary factory resolves names") {
  const BanditInstance inst = two_group_instance(4, 0.4, 0.2);
  CHECK(make_adversary("noop", inst, 100, 0.0) != nullptr);
  CHECK(make_adversary("coupling", inst, 100, 0.5) != nullptr);
  CHECK(make_adversary("sh-schedule", inst, 100, 0.5) != nullptr);
  CHECK(make_adversary("one-to-zero", inst, 100, 0.5) != nullptr);
  CHECK(make_adversary("zero-to-one", inst, 100, 0.5) != nullptr);
  CHECK_THROWS_AS(make_adversary("gaslight", inst, 100, 0.5), ConfigError);
}
