#include "banditlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "banditlab/adversaries.hpp"
#include "banditlab/agents.hpp"
#include "banditlab/errors.hpp"

namespace banditlab {

namespace {

constexpr double kZ95 = 1.959963984540054;  // 97.5% normal quantile

std::string fmt(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

}  // namespace

BanditInstance InstanceSpec::build() const {
  if (is_explicit()) return make_instance(means);
  return two_group_instance(num_arms, w_star, w_prime);
}

Interval wilson_interval(int successes, int trials) {
  const double n = trials;
  const double p = successes / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return Interval{center - half, center + half};
}

double resolve_budget(const ExperimentConfig& config, const BanditInstance& instance) {
  if (config.budget.has_value()) return *config.budget;
  const double delta = instance.min_positive_gap();
  const int num_arms = instance.num_arms();
  if (config.cps_rule == "theorem-3.1") {
    return theorem31_budget(delta, config.horizon, config.lambda);
  }
  if (config.cps_rule == "theorem-4.3") {
    return theorem43_budget(delta, num_arms, config.horizon, config.lambda);
  }
  if (config.cps_rule == "theorem-4.4-I") {
    return theorem44_one_to_zero_budget(instance.means[instance.best_arm], num_arms,
                                        config.horizon, config.lambda);
  }
  if (config.cps_rule == "theorem-4.4-II") {
    const double worst = *std::min_element(instance.means.begin(), instance.means.end());
    return theorem44_zero_to_one_budget(worst, num_arms, config.horizon, config.lambda);
  }
  throw ConfigError("unknown cps_rule '" + config.cps_rule + "'");
}

ExperimentSummary run_experiment(const ExperimentConfig& config) {
  if (config.trials < 1) throw ConfigError("trials must be at least 1");
  if (config.budget.has_value() == !config.cps_rule.empty()) {
    throw ConfigError("exactly one of C and cps_rule must be given");
  }

  BanditInstance instance;
  double budget = 0.0;
  try {
    instance = config.instance.build();
    budget = resolve_budget(config, instance);
    // Construction dry run so that bad parameters surface before any trial.
    make_agent(config.algorithm, instance.num_arms(), config.horizon, config.u);
    make_adversary(config.adversary, instance, config.horizon, config.lambda);
  } catch (const BanditError& e) {
    throw ConfigError(std::string(e.what()) + "\n  while preparing config:\n" +
                      canonical_config_text(config));
  }

  std::vector<TrialResult> results(config.trials);
  std::atomic<int> next_trial{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
  const int num_threads =
      config.threads > 0 ? config.threads : static_cast<int>(hardware);

  auto worker = [&]() {
    while (true) {
      const int trial = next_trial.fetch_add(1);
      if (trial >= config.trials) return;
      try {
        const auto agent =
            make_agent(config.algorithm, instance.num_arms(), config.horizon, config.u);
        const auto adversary =
            make_adversary(config.adversary, instance, config.horizon, config.lambda);
        const TrialSeeds seeds =
            derive_trial_seeds(config.master_seed, static_cast<std::uint64_t>(trial));
        results[trial] = run_trial(instance, *agent, *adversary, config.horizon, budget, seeds);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next_trial.store(config.trials);
        return;
      }
    }
  };

  if (num_threads == 1 || config.trials == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(num_threads);
    for (int i = 0; i < num_threads; ++i) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  // Aggregation is a fold over trial index, so the execution schedule above
  // can never change the summary.
  ExperimentSummary summary;
  summary.algorithm = config.algorithm;
  summary.adversary = config.adversary;
  summary.num_arms = instance.num_arms();
  summary.horizon = config.horizon;
  summary.u = config.u;
  summary.lambda = config.lambda;
  summary.budget = budget;
  summary.trials = config.trials;
  summary.master_seed = config.master_seed;
  summary.config_hash = config_hash(config);
  double gap_total = 0.0;
  double spent_total = 0.0;
  for (const TrialResult& result : results) {
    summary.successes += result.success ? 1 : 0;
    gap_total += result.gap_of_output;
    spent_total += result.budget_spent;
  }
  summary.success_rate = static_cast<double>(summary.successes) / config.trials;
  const Interval ci = wilson_interval(summary.successes, config.trials);
  summary.ci_low = ci.low;
  summary.ci_high = ci.high;
  summary.mean_gap = gap_total / config.trials;
  summary.mean_budget_spent = spent_total / config.trials;
  summary.per_trial = std::move(results);
  return summary;
}

namespace {

template <typename T>
std::vector<T> axis_or_default(std::vector<T> axis, T fallback) {
  if (axis.empty()) return {fallback};
  std::sort(axis.begin(), axis.end());
  return axis;
}

}  // namespace

std::vector<ExperimentSummary> run_sweep(const ExperimentConfig& config) {
  if (!config.has_sweep()) return {run_experiment(config)};

  const auto horizons = axis_or_default(config.sweep_horizon, config.horizon);
  const auto arm_counts = axis_or_default(config.sweep_num_arms, config.instance.num_arms);
  const auto lambdas = axis_or_default(config.sweep_lambda, config.lambda);
  const auto w_stars = axis_or_default(config.sweep_w_star, config.instance.w_star);
  const auto w_primes = axis_or_default(config.sweep_w_prime, config.instance.w_prime);

  if (config.instance.is_explicit() &&
      (!config.sweep_num_arms.empty() || !config.sweep_w_star.empty() ||
       !config.sweep_w_prime.empty())) {
    throw ConfigError("instance axes (sweep.L / sweep.w_star / sweep.w_prime) require a "
                      "two-group instance, not explicit means");
  }

  std::vector<ExperimentSummary> summaries;
  std::uint64_t cell = 0;
  for (long long horizon : horizons) {
    for (int num_arms : arm_counts) {
      for (double lambda : lambdas) {
        for (double w_star : w_stars) {
          for (double w_prime : w_primes) {
            ExperimentConfig cell_config = config;
            cell_config.sweep_horizon.clear();
            cell_config.sweep_num_arms.clear();
            cell_config.sweep_lambda.clear();
            cell_config.sweep_w_star.clear();
            cell_config.sweep_w_prime.clear();
            cell_config.horizon = horizon;
            cell_config.lambda = lambda;
            if (!cell_config.instance.is_explicit()) {
              cell_config.instance.num_arms = num_arms;
              cell_config.instance.w_star = w_star;
              cell_config.instance.w_prime = w_prime;
            }
            cell_config.master_seed =
                derive_seed(config.master_seed, cell, StreamRole::kSweepCell);
            summaries.push_back(run_experiment(cell_config));
            ++cell;
          }
        }
      }
    }
  }
  return summaries;
}

std::string summaries_to_csv(const std::vector<ExperimentSummary>& summaries) {
  std::ostringstream out;
  out << "algorithm,adversary,L,T,u,lambda,C,trials,successes,success_rate,ci_low,ci_high,"
         "mean_gap,mean_budget_spent,master_seed,config_hash\n";
  for (const ExperimentSummary& s : summaries) {
    out << s.algorithm << ',' << s.adversary << ',' << s.num_arms << ',' << s.horizon << ','
        << fmt(s.u) << ',' << fmt(s.lambda) << ',' << fmt(s.budget) << ',' << s.trials << ','
        << s.successes << ',' << fmt(s.success_rate) << ',' << fmt(s.ci_low) << ','
        << fmt(s.ci_high) << ',' << fmt(s.mean_gap) << ',' << fmt(s.mean_budget_spent) << ','
        << s.master_seed << ',' << s.config_hash << '\n';
  }
  return out.str();
}

void write_csv(const std::vector<ExperimentSummary>& summaries, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw BanditError("cannot open '" + path + "' for writing");
  out << summaries_to_csv(summaries);
  if (!out) throw BanditError("write to '" + path + "' failed");
}

std::string trials_to_csv(const ExperimentSummary& summary, const BanditInstance& instance) {
  std::ostringstream out;
  out << "trial_id,seed,output_arm,best_arm,success,gap,budget_spent\n";
  for (std::size_t trial = 0; trial < summary.per_trial.size(); ++trial) {
    const TrialResult& r = summary.per_trial[trial];
    out << trial << ','
        << derive_seed(summary.master_seed, trial, StreamRole::kEnvironment) << ','
        << r.output << ',' << instance.best_arm << ',' << (r.success ? 1 : 0) << ','
        << fmt(r.gap_of_output) << ',' << fmt(r.budget_spent) << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Config file format

namespace {

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, ',')) {
    const std::string trimmed = trim(item);
    if (!trimmed.empty()) items.push_back(trimmed);
  }
  return items;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t consumed = 0;
    const double parsed = std::stod(value, &consumed);
    if (consumed != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "' has a malformed numeric value '" + value + "'");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t consumed = 0;
    const long long parsed = std::stoll(value, &consumed);
    if (consumed != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "' has a malformed integer value '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t consumed = 0;
    const std::uint64_t parsed = std::stoull(value, &consumed);
    if (consumed != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "' has a malformed integer value '" + value + "'");
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  bool saw_L = false, saw_w_star = false, saw_w_prime = false;

  std::istringstream stream(text);
  std::string raw_line;
  while (std::getline(stream, raw_line)) {
    const auto comment = raw_line.find('#');
    if (comment != std::string::npos) raw_line.erase(comment);
    const std::string line = trim(raw_line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line is not key = value: '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError("key '" + key + "' has an empty value");

    if (key == "means") {
      for (const std::string& item : split_list(value)) {
        config.instance.means.push_back(parse_double(key, item));
      }
    } else if (key == "L") {
      config.instance.num_arms = static_cast<int>(parse_int(key, value));
      saw_L = true;
    } else if (key == "w_star") {
      config.instance.w_star = parse_double(key, value);
      saw_w_star = true;
    } else if (key == "w_prime") {
      config.instance.w_prime = parse_double(key, value);
      saw_w_prime = true;
    } else if (key == "algorithm") {
      config.algorithm = value;
    } else if (key == "u") {
      config.u = parse_double(key, value);
    } else if (key == "adversary") {
      config.adversary = value;
    } else if (key == "lambda") {
      config.lambda = parse_double(key, value);
    } else if (key == "T") {
      config.horizon = parse_int(key, value);
    } else if (key == "C") {
      config.budget = parse_double(key, value);
    } else if (key == "cps_rule") {
      config.cps_rule = value;
    } else if (key == "trials") {
      config.trials = static_cast<int>(parse_int(key, value));
    } else if (key == "master_seed") {
      config.master_seed = parse_u64(key, value);
    } else if (key == "threads") {
      config.threads = static_cast<int>(parse_int(key, value));
    } else if (key == "sweep.T") {
      for (const std::string& item : split_list(value)) {
        config.sweep_horizon.push_back(parse_int(key, item));
      }
    } else if (key == "sweep.L") {
      for (const std::string& item : split_list(value)) {
        config.sweep_num_arms.push_back(static_cast<int>(parse_int(key, item)));
      }
    } else if (key == "sweep.lambda") {
      for (const std::string& item : split_list(value)) {
        config.sweep_lambda.push_back(parse_double(key, item));
      }
    } else if (key == "sweep.w_star") {
      for (const std::string& item : split_list(value)) {
        config.sweep_w_star.push_back(parse_double(key, item));
      }
    } else if (key == "sweep.w_prime") {
      for (const std::string& item : split_list(value)) {
        config.sweep_w_prime.push_back(parse_double(key, item));
      }
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }

  if (config.instance.is_explicit()) {
    if (saw_L || saw_w_star || saw_w_prime) {
      throw ConfigError("give either explicit means or two-group L/w_star/w_prime, not both");
    }
  } else if (!(saw_L && saw_w_star && saw_w_prime)) {
    throw ConfigError("instance needs either means or all of L, w_star, w_prime");
  }
  if (config.horizon <= 0 && config.sweep_horizon.empty()) {
    throw ConfigError("key 'T' must be given and positive");
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string canonical_config_text(const ExperimentConfig& config) {
  std::map<std::string, std::string> keys;
  if (config.instance.is_explicit()) {
    std::string means;
    for (std::size_t i = 0; i < config.instance.means.size(); ++i) {
      if (i > 0) means += ",";
      means += fmt(config.instance.means[i]);
    }
    keys["means"] = means;
  } else {
    keys["L"] = std::to_string(config.instance.num_arms);
    keys["w_star"] = fmt(config.instance.w_star);
    keys["w_prime"] = fmt(config.instance.w_prime);
  }
  keys["algorithm"] = config.algorithm;
  keys["u"] = fmt(config.u);
  keys["adversary"] = config.adversary;
  keys["lambda"] = fmt(config.lambda);
  keys["T"] = std::to_string(config.horizon);
  if (config.budget.has_value()) keys["C"] = fmt(*config.budget);
  if (!config.cps_rule.empty()) keys["cps_rule"] = config.cps_rule;
  keys["trials"] = std::to_string(config.trials);
  keys["master_seed"] = std::to_string(config.master_seed);

  auto join = [](const auto& values, auto format) {
    std::string joined;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i > 0) joined += ",";
      joined += format(values[i]);
    }
    return joined;
  };
  auto fmt_ll = [](long long v) { return std::to_string(v); };
  auto fmt_int = [](int v) { return std::to_string(v); };
  auto fmt_d = [](double v) { return fmt(v); };
  if (!config.sweep_horizon.empty()) keys["sweep.T"] = join(config.sweep_horizon, fmt_ll);
  if (!config.sweep_num_arms.empty()) keys["sweep.L"] = join(config.sweep_num_arms, fmt_int);
  if (!config.sweep_lambda.empty()) keys["sweep.lambda"] = join(config.sweep_lambda, fmt_d);
  if (!config.sweep_w_star.empty()) keys["sweep.w_star"] = join(config.sweep_w_star, fmt_d);
  if (!config.sweep_w_prime.empty()) keys["sweep.w_prime"] = join(config.sweep_w_prime, fmt_d);

  std::string text;
  for (const auto& [key, value] : keys) text += key + " = " + value + "\n";
  return text;
}

std::string config_hash(const ExperimentConfig& config) {
  // FNV-1a over the canonical text.
  const std::string text = canonical_config_text(config);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace banditlab
