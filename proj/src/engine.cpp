#include "banditlab/engine.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "banditlab/errors.hpp"

namespace banditlab {

namespace {

// Tolerance for ledger comparisons. Shipped adversaries use unit costs, so
// this only absorbs float dust from budgets like (1+lambda)*2*delta*T.
constexpr double kLedgerTol = 1e-9;

void format_double(std::ostringstream& out, double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  out << buf;
}

}  // namespace

TrialResult run_trial(const BanditInstance& instance, Agent& agent, Adversary& adversary,
                      long long horizon, double budget, const TrialSeeds& seeds,
                      std::vector<RoundRecord>* trace) {
  if (horizon < 1) throw HorizonTooShort("horizon must be at least 1");
  if (budget < 0.0) throw OutOfRange("corruption budget must be nonnegative");

  const int num_arms = instance.num_arms();
  Rng env_rng(seeds.environment);
  Rng agent_rng(seeds.agent);
  Rng adversary_rng(seeds.adversary);

  CorruptionLedger ledger;
  ledger.budget = budget;
  ledger.per_step_costs.reserve(static_cast<std::size_t>(horizon));

  std::vector<double> raw_history;
  std::vector<double> corruption_history;
  std::vector<int> pull_history;
  raw_history.reserve(static_cast<std::size_t>(horizon) * num_arms);
  corruption_history.reserve(static_cast<std::size_t>(horizon) * num_arms);
  pull_history.reserve(static_cast<std::size_t>(horizon));

  std::vector<double> corruption(num_arms, 0.0);
  std::vector<double> corrupted(num_arms, 0.0);

  TrialResult result;
  for (long long t = 1; t <= horizon; ++t) {
    // (i) the environment draws a raw reward for every arm, in arm order.
    for (int i = 0; i < num_arms; ++i) {
      raw_history.push_back(env_rng.bernoulli(instance.means[i]) ? 1.0 : 0.0);
    }
    const std::span<const double> raw_now{raw_history.data() + (t - 1) * num_arms,
                                          static_cast<std::size_t>(num_arms)};

    // (ii) the adversary proposes corruptions knowing all raw rewards so
    // far but not the agent's step-t choice.
    AdversaryView view;
    view.t = t;
    view.num_arms = num_arms;
    view.raw_now = raw_now;
    view.raw_history = {raw_history.data(), raw_history.size()};
    view.corruption_history = {corruption_history.data(), corruption_history.size()};
    view.pull_history = {pull_history.data(), pull_history.size()};
    view.remaining_budget = ledger.remaining();

    std::fill(corruption.begin(), corruption.end(), 0.0);
    adversary.corrupt(view, corruption, adversary_rng);

    double cost = 0.0;
    for (int i = 0; i < num_arms; ++i) {
      const double c = corruption[i];
      if (std::abs(c) > 1.0 + kLedgerTol) {
        throw RangeViolation("corruption of arm " + std::to_string(i) + " at step " +
                             std::to_string(t) + " has |c| > 1");
      }
      const double value = raw_now[i] + c;
      if (value < -kLedgerTol || value > 1.0 + kLedgerTol) {
        throw RangeViolation("corrupted reward of arm " + std::to_string(i) + " at step " +
                             std::to_string(t) + " is outside [0,1]: " + std::to_string(value));
      }
      corrupted[i] = value;
      cost = std::max(cost, std::abs(c));
    }
    if (ledger.spent + cost > ledger.budget + kLedgerTol) {
      throw BudgetExceeded("adversary overdrew the corruption ledger at step " +
                           std::to_string(t));
    }
    ledger.spent += cost;
    ledger.per_step_costs.push_back(cost);
    corruption_history.insert(corruption_history.end(), corruption.begin(), corruption.end());

    // (iii) the agent pulls and sees only the pulled arm's corrupted value.
    const std::optional<ArmId> pulled = agent.select(t, agent_rng);
    std::optional<double> observed;
    if (pulled.has_value()) {
      observed = corrupted[*pulled];
      agent.observe(t, *pulled, *observed);
      ++result.steps_used;
    }
    pull_history.push_back(pulled.value_or(-1));

    if (trace != nullptr) {
      RoundRecord record;
      record.t = t;
      record.raw.assign(raw_now.begin(), raw_now.end());
      record.corruption = corruption;
      record.corrupted = corrupted;
      record.pulled = pulled;
      record.observed = observed;
      trace->push_back(std::move(record));
    }
  }

  result.output = agent.recommend(agent_rng);
  result.success = (result.output == instance.best_arm);
  result.gap_of_output = instance.gaps[result.output];
  result.budget_spent = ledger.spent;
  result.phase_pulls = agent.phase_pull_counts();
  return result;
}

bool replay_check(const TrialResult& a, const TrialResult& b) {
  return a.output == b.output && a.success == b.success &&
         a.gap_of_output == b.gap_of_output && a.budget_spent == b.budget_spent &&
         a.steps_used == b.steps_used && a.phase_pulls == b.phase_pulls;
}

std::string trace_to_csv(const std::vector<RoundRecord>& trace) {
  std::ostringstream out;
  out << "t,pulled,observed,per_step_cost,spent\n";
  double spent = 0.0;
  for (const RoundRecord& record : trace) {
    double cost = 0.0;
    for (double c : record.corruption) cost = std::max(cost, std::abs(c));
    spent += cost;
    out << record.t << ',';
    if (record.pulled.has_value()) out << *record.pulled;
    out << ',';
    if (record.observed.has_value()) format_double(out, *record.observed);
    out << ',';
    format_double(out, cost);
    out << ',';
    format_double(out, spent);
    out << '\n';
  }
  return out.str();
}

}  // namespace banditlab
