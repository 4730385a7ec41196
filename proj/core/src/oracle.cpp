// Copyright 2026 The dsapf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <dsapf/oracle.hpp>
#include <dsapf/phy.hpp>
#include <dsapf/powerfill.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dsapf {

std::vector<BandSet> oracle_alphabet(const TinyInstance& instance) {
  const BandSet free = instance.availability & BandSet::all(instance.n_bands());
  const int size = std::min(instance.max_bands_per_user, free.size());
  std::vector<BandSet> alphabet{BandSet{}};
  if (size == 0) {
    return alphabet;
  }
  const auto limit = std::uint64_t{1} << instance.n_bands();
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    const auto set = BandSet::from_mask(mask);
    if (set.size() == size && set.is_subset_of(free)) {
      alphabet.push_back(set);
    }
  }
  return alphabet;
}

std::uint64_t enumeration_size(const TinyInstance& instance) {
  const auto base = static_cast<std::uint64_t>(oracle_alphabet(instance).size());
  std::uint64_t total = 1;
  for (int i = 0; i < instance.n_users(); ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= base;
  }
  return total;
}

void check_enumerable(const TinyInstance& instance) {
  const auto describe = [&] {
    return "N=" + std::to_string(instance.n_users()) + ", m=" + std::to_string(instance.n_bands()) +
           ", l=" + std::to_string(instance.max_bands_per_user) + " (limits N<=" + std::to_string(kOracleMaxUsers) +
           ", m<=" + std::to_string(kOracleMaxBands) + ", l<=" + std::to_string(kOracleMaxBandsPerUser) +
           ", states<=" + std::to_string(kOracleMaxStates) + ")";
  };
  if (instance.n_users() < 1 || instance.n_users() > kOracleMaxUsers || instance.n_bands() < 1 ||
      instance.n_bands() > kOracleMaxBands || instance.max_bands_per_user < 1 ||
      instance.max_bands_per_user > kOracleMaxBandsPerUser) {
    throw OracleRefused{"instance too large for exhaustive search: " + describe()};
  }
  const auto states = enumeration_size(instance);
  if (states > kOracleMaxStates) {
    throw OracleRefused{"instance too large for exhaustive search: " + std::to_string(states) + " states, " +
                        describe()};
  }
  if (static_cast<int>(instance.rate_thresholds.size()) != instance.n_users()) {
    throw std::invalid_argument{"TinyInstance: one rate threshold per user is required"};
  }
}

namespace {

constexpr int kMaxPowerIterations = 50;

std::vector<double> best_response(const TinyInstance& instance, const AllocationMatrix& allocation,
                                  const PowerMatrix& power, int user, PowerRule rule) {
  const BandSet bands = allocation.row(user) & instance.availability;
  WaterFillProblem problem;
  problem.p_total = instance.budget.p_total_w;
  for (int band : bands) {
    double interference = 0.0;
    for (int k = 0; k < instance.n_users(); ++k) {
      if (k != user && (allocation.row(k) & instance.availability).contains(band)) {
        interference += power.at(k, band) * instance.gains.at(user, k, band);
      }
    }
    problem.effective_gains.push_back(instance.gains.at(user, user, band) /
                                      (interference + instance.budget.noise_band_w));
    problem.p_caps.push_back(instance.budget.p_band_cap_w);
  }
  return rule == PowerRule::kWaterFill ? water_fill(problem) : uniform_split(problem);
}

}  // namespace

JointOutcome evaluate_allocation(const TinyInstance& instance, const AllocationMatrix& allocation) {
  const int n = instance.n_users();
  const int m = instance.n_bands();
  JointOutcome outcome;
  outcome.power = PowerMatrix{n, m};

  auto write_row = [&](PowerMatrix& target, int user, const std::vector<double>& split) {
    std::size_t next = 0;
    for (int band = 0; band < m; ++band) {
      target.at(user, band) = 0.0;
    }
    for (int band : allocation.row(user) & instance.availability) {
      target.at(user, band) = split[next++];
    }
  };

  for (int i = 0; i < n; ++i) {
    write_row(outcome.power, i, best_response(instance, allocation, outcome.power, i, PowerRule::kUniform));
  }
  if (instance.power_rule == PowerRule::kWaterFill) {
    for (int iteration = 0; iteration < kMaxPowerIterations; ++iteration) {
      PowerMatrix next{n, m};
      for (int i = 0; i < n; ++i) {
        write_row(next, i, best_response(instance, allocation, outcome.power, i, PowerRule::kWaterFill));
      }
      double change = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int band = 0; band < m; ++band) {
          change = std::max(change, std::abs(next.at(i, band) - outcome.power.at(i, band)));
        }
      }
      outcome.power = std::move(next);
      if (change <= 1e-12 * instance.budget.p_total_w) {
        break;
      }
    }
  }

  outcome.rates = throughputs(allocation, outcome.power, instance.gains, instance.availability,
                              instance.budget.bandwidth_hz, instance.budget.noise_band_w);
  outcome.rewards.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    outcome.rewards[i] = elastic_reward(outcome.rates[i], instance.rate_thresholds[i], instance.budget.beta);
  }
  return outcome;
}

double global_score(ObjectiveKind objective, std::span<const double> rewards) {
  if (objective == ObjectiveKind::kIntrinsic) {
    objective = ObjectiveKind::kSum;
  }
  return evaluate(objective, rewards, 0);
}

OracleSolution solve_exhaustive(const TinyInstance& instance, ObjectiveKind objective) {
  check_enumerable(instance);
  const int n = instance.n_users();
  const auto alphabet = oracle_alphabet(instance);
  const auto base = alphabet.size();

  OracleSolution best;
  best.score = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
  AllocationMatrix allocation{n, instance.n_bands()};
  while (true) {
    for (int i = 0; i < n; ++i) {
      allocation.set_row(i, alphabet[digits[i]]);
    }
    auto outcome = evaluate_allocation(instance, allocation);
    const double score = global_score(objective, outcome.rewards);
    ++best.states_explored;
    if (score > best.score) {
      best.score = score;
      best.allocation = allocation;
      best.outcome = std::move(outcome);
    }
    // Odometer with the last user as the fastest digit.
    int pos = n - 1;
    while (pos >= 0 && ++digits[pos] == base) {
      digits[pos] = 0;
      --pos;
    }
    if (pos < 0) {
      break;
    }
  }
  return best;
}

}  // namespace dsapf
