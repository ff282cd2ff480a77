#include "banditlab/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "banditlab/errors.hpp"

namespace banditlab {

namespace {

// Relative slack for boundary comparisons like u^m >= L where u^m is an
// accumulated product. Shrink sizes are small integers, so this is ample.
constexpr double kRelTol = 1e-9;

}  // namespace

double BanditInstance::max_gap() const {
  return *std::max_element(gaps.begin(), gaps.end());
}

double BanditInstance::min_positive_gap() const {
  double best = 2.0;
  for (int i = 0; i < num_arms(); ++i) {
    if (i != best_arm && gaps[i] < best) best = gaps[i];
  }
  return best;
}

BanditInstance make_instance(std::vector<double> means) {
  if (means.size() < 2) {
    throw TooFewArms("instance needs at least 2 arms, got " + std::to_string(means.size()));
  }
  for (std::size_t i = 0; i < means.size(); ++i) {
    if (!(means[i] >= 0.0 && means[i] <= 1.0)) {
      throw OutOfRange("mean of arm " + std::to_string(i) + " is outside [0,1]: " +
                       std::to_string(means[i]));
    }
  }
  const auto best_it = std::max_element(means.begin(), means.end());
  if (std::count(means.begin(), means.end(), *best_it) > 1) {
    throw NonUniqueBest("the maximum mean " + std::to_string(*best_it) +
                        " is attained by more than one arm");
  }
  BanditInstance instance;
  instance.best_arm = static_cast<ArmId>(best_it - means.begin());
  instance.gaps.reserve(means.size());
  for (double m : means) instance.gaps.push_back(*best_it - m);
  instance.means = std::move(means);
  return instance;
}

BanditInstance two_group_instance(int num_arms, double w_star, double w_prime) {
  if (num_arms < 3 || !(w_prime > 0.0) || !(w_prime < w_star) || !(w_star <= 1.0)) {
    throw InvalidInstance("two-group instance requires L >= 3 and 0 < w' < w* <= 1");
  }
  const double delta = (w_star - w_prime) / 3.0;
  std::vector<double> means;
  means.reserve(num_arms);
  means.push_back(w_star);
  means.push_back(w_star - delta);
  for (int i = 2; i < num_arms; ++i) means.push_back(w_prime);
  return make_instance(std::move(means));
}

int ceil_log(int num_arms, double base) {
  int m = 1;
  double power = base;
  while (power < num_arms * (1.0 - kRelTol)) {
    power *= base;
    ++m;
  }
  return m;
}

double PhaseSchedule::pull_probability(int phase) const {
  return 1.0 / active_sizes[phase - 1];
}

double PhaseSchedule::expected_pulls(int phase) const {
  return static_cast<double>(phase_len) / active_sizes[phase - 1];
}

namespace {

std::vector<int> shrink_sizes(int num_arms, double rate, int num_phases) {
  std::vector<int> sizes;
  sizes.reserve(num_phases + 1);
  sizes.push_back(num_arms);
  double power = 1.0;
  for (int m = 1; m <= num_phases; ++m) {
    power *= rate;
    const auto size = static_cast<int>(std::ceil(num_arms / power * (1.0 - kRelTol)));
    sizes.push_back(std::max(size, 1));
  }
  return sizes;
}

}  // namespace

PhaseSchedule pss_schedule(int num_arms, long long horizon, double shrink_rate) {
  if (num_arms < 2) throw TooFewArms("schedule needs at least 2 arms");
  if (!(shrink_rate > 1.0) || shrink_rate > num_arms) {
    throw InvalidU("shrink rate u must lie in (1, L], got " + std::to_string(shrink_rate));
  }
  PhaseSchedule schedule;
  schedule.num_arms = num_arms;
  schedule.horizon = horizon;
  schedule.shrink_rate = shrink_rate;
  schedule.num_phases = ceil_log(num_arms, shrink_rate);
  schedule.phase_len = horizon / schedule.num_phases;
  if (schedule.phase_len == 0) {
    throw HorizonTooShort("horizon " + std::to_string(horizon) + " is shorter than the " +
                          std::to_string(schedule.num_phases) + " phases it must hold");
  }
  schedule.active_sizes = shrink_sizes(num_arms, shrink_rate, schedule.num_phases);
  return schedule;
}

PhaseSchedule sh_schedule(int num_arms, long long horizon) {
  if (num_arms < 2) throw TooFewArms("schedule needs at least 2 arms");
  PhaseSchedule schedule;
  schedule.num_arms = num_arms;
  schedule.horizon = horizon;
  schedule.shrink_rate = 2.0;
  schedule.num_phases = ceil_log(num_arms, 2.0);
  schedule.phase_len = horizon / schedule.num_phases;
  schedule.active_sizes = shrink_sizes(num_arms, 2.0, schedule.num_phases);
  schedule.sh_pull_counts.reserve(schedule.num_phases);
  for (int m = 1; m <= schedule.num_phases; ++m) {
    const long long pulls = horizon / (schedule.num_phases * schedule.active_sizes[m - 1]);
    if (pulls == 0) {
      throw HorizonTooShort("halving schedule gives zero pulls per arm in phase " +
                            std::to_string(m));
    }
    schedule.sh_pull_counts.push_back(pulls);
  }
  return schedule;
}

}  // namespace banditlab
