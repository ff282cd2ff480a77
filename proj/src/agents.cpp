#include "banditlab/agents.hpp"

#include <algorithm>
#include <cstdint>

#include "banditlab/errors.hpp"

namespace banditlab {

std::vector<ArmId> top_k_random_ties(const std::vector<ArmId>& arms,
                                     const std::vector<double>& scores, int keep, Rng& rng) {
  struct Entry {
    ArmId arm;
    double score;
    std::uint64_t priority;
  };
  std::vector<Entry> entries;
  entries.reserve(arms.size());
  for (std::size_t j = 0; j < arms.size(); ++j) {
    entries.push_back({arms[j], scores[j], rng.next_u64()});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.priority < b.priority;
  });
  std::vector<ArmId> survivors;
  survivors.reserve(keep);
  for (int j = 0; j < keep; ++j) survivors.push_back(entries[j].arm);
  std::sort(survivors.begin(), survivors.end());
  return survivors;
}

// ---------------------------------------------------------------------------
// PSS(u)

PssAgent::PssAgent(int num_arms, long long horizon, double shrink_rate)
    : schedule_(pss_schedule(num_arms, horizon, shrink_rate)),
      sums_(num_arms, 0.0),
      pulls_(num_arms, 0) {
  active_.resize(num_arms);
  for (int i = 0; i < num_arms; ++i) active_[i] = i;
}

void PssAgent::advance_to_phase(int phase, Rng& rng) {
  while (finalized_phases_ < phase - 1) end_phase(rng);
}

void PssAgent::end_phase(Rng& rng) {
  const int phase = finalized_phases_ + 1;
  const double expected = schedule_.expected_pulls(phase);
  std::vector<double> w_hat;
  std::vector<long long> pulls;
  w_hat.reserve(active_.size());
  pulls.reserve(active_.size());
  for (ArmId arm : active_) {
    w_hat.push_back(sums_[arm] / expected);
    pulls.push_back(pulls_[arm]);
  }
  if (observer_) observer_(phase, active_, w_hat, pulls);

  active_ = top_k_random_ties(active_, w_hat, schedule_.active_sizes[phase], rng);
  phase_pulls_.insert(phase_pulls_.end(), pulls_.begin(), pulls_.end());
  std::fill(sums_.begin(), sums_.end(), 0.0);
  std::fill(pulls_.begin(), pulls_.end(), 0);
  ++finalized_phases_;
}

std::optional<ArmId> PssAgent::select(long long t, Rng& rng) {
  const long long in_phase_horizon = schedule_.phase_len * schedule_.num_phases;
  if (t > in_phase_horizon) {
    advance_to_phase(schedule_.num_phases + 1, rng);
    return std::nullopt;
  }
  const int phase = static_cast<int>((t - 1) / schedule_.phase_len) + 1;
  advance_to_phase(phase, rng);
  return active_[rng.below(active_.size())];
}

void PssAgent::observe(long long /*t*/, ArmId arm, double corrupted_reward) {
  sums_[arm] += corrupted_reward;
  ++pulls_[arm];
}

ArmId PssAgent::recommend(Rng& rng) {
  advance_to_phase(schedule_.num_phases + 1, rng);
  return active_.front();
}

// ---------------------------------------------------------------------------
// SH

ShAgent::ShAgent(int num_arms, long long horizon)
    : schedule_(sh_schedule(num_arms, horizon)), sums_(num_arms, 0.0), pulls_(num_arms, 0) {
  active_.resize(num_arms);
  for (int i = 0; i < num_arms; ++i) active_[i] = i;
}

void ShAgent::advance_to_phase(int phase, Rng& rng) {
  while (finalized_phases_ < phase - 1) end_phase(rng);
}

void ShAgent::end_phase(Rng& rng) {
  const int phase = finalized_phases_ + 1;
  const double realized = static_cast<double>(schedule_.sh_pull_counts[phase - 1]);
  std::vector<double> means;
  means.reserve(active_.size());
  for (ArmId arm : active_) means.push_back(sums_[arm] / realized);

  active_ = top_k_random_ties(active_, means, schedule_.active_sizes[phase], rng);
  phase_pulls_.insert(phase_pulls_.end(), pulls_.begin(), pulls_.end());
  std::fill(sums_.begin(), sums_.end(), 0.0);
  std::fill(pulls_.begin(), pulls_.end(), 0);
  ++finalized_phases_;
}

std::optional<ArmId> ShAgent::select(long long t, Rng& rng) {
  const long long in_phase_horizon = schedule_.phase_len * schedule_.num_phases;
  if (t > in_phase_horizon) {
    advance_to_phase(schedule_.num_phases + 1, rng);
    return std::nullopt;
  }
  const int phase = static_cast<int>((t - 1) / schedule_.phase_len) + 1;
  advance_to_phase(phase, rng);
  const long long offset = t - schedule_.phase_begin(phase);
  const long long active_pulls =
      schedule_.sh_pull_counts[phase - 1] * static_cast<long long>(active_.size());
  if (offset >= active_pulls) return std::nullopt;
  return active_[static_cast<std::size_t>(offset % active_.size())];
}

void ShAgent::observe(long long /*t*/, ArmId arm, double corrupted_reward) {
  sums_[arm] += corrupted_reward;
  ++pulls_[arm];
}

ArmId ShAgent::recommend(Rng& rng) {
  advance_to_phase(schedule_.num_phases + 1, rng);
  return active_.front();
}

// ---------------------------------------------------------------------------
// UP

UpAgent::UpAgent(int num_arms, long long horizon)
    : num_arms_(num_arms),
      pulls_per_arm_(horizon / num_arms),
      sums_(num_arms, 0.0),
      counts_(num_arms, 0) {
  if (num_arms < 2) throw TooFewArms("uniform pull needs at least 2 arms");
  if (pulls_per_arm_ == 0) {
    throw HorizonTooShort("uniform pull needs at least one pull per arm");
  }
}

std::optional<ArmId> UpAgent::select(long long t, Rng& /*rng*/) {
  const long long block = (t - 1) / pulls_per_arm_;
  if (block >= num_arms_) return std::nullopt;
  return static_cast<ArmId>(block);
}

void UpAgent::observe(long long /*t*/, ArmId arm, double corrupted_reward) {
  sums_[arm] += corrupted_reward;
  ++counts_[arm];
}

ArmId UpAgent::recommend(Rng& rng) {
  std::vector<ArmId> arms(num_arms_);
  std::vector<double> means(num_arms_);
  for (int i = 0; i < num_arms_; ++i) {
    arms[i] = i;
    means[i] = counts_[i] > 0 ? sums_[i] / counts_[i] : 0.0;
  }
  return top_k_random_ties(arms, means, 1, rng).front();
}

std::vector<long long> UpAgent::phase_pull_counts() const { return counts_; }

std::unique_ptr<Agent> make_agent(const std::string& name, int num_arms, long long horizon,
                                  double shrink_rate) {
  if (name == "pss") return std::make_unique<PssAgent>(num_arms, horizon, shrink_rate);
  if (name == "sh") return std::make_unique<ShAgent>(num_arms, horizon);
  if (name == "up") return std::make_unique<UpAgent>(num_arms, horizon);
  throw ConfigError("unknown algorithm '" + name + "' (expected pss, sh, or up)");
}

}  // namespace banditlab
