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

#ifndef DSAPF_ORACLE_HPP
#define DSAPF_ORACLE_HPP

#include <dsapf/objectives.hpp>
#include <dsapf/pfilter.hpp>
#include <dsapf/types.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace dsapf {

inline constexpr int kOracleMaxUsers = 6;
inline constexpr int kOracleMaxBands = 4;
inline constexpr int kOracleMaxBandsPerUser = 2;
inline constexpr std::uint64_t kOracleMaxStates = 1'000'000;

/// A frozen snapshot small enough to enumerate.
struct TinyInstance {
  int max_bands_per_user{1};
  GainTensor gains;
  BandSet availability;
  std::vector<double> rate_thresholds;
  LinkBudget budget;
  PowerRule power_rule{PowerRule::kWaterFill};

  [[nodiscard]] int n_users() const { return gains.n_users(); }
  [[nodiscard]] int n_bands() const { return gains.n_bands(); }
};

/// Thrown when an instance exceeds the enumeration limits; the message reports the sizes.
class OracleRefused : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Per-user choices: idle first, then every min(l, |available|)-subset of the free bands in increasing mask order.
[[nodiscard]] std::vector<BandSet> oracle_alphabet(const TinyInstance& instance);

/// alphabet size ^ N, saturating at UINT64_MAX.
[[nodiscard]] std::uint64_t enumeration_size(const TinyInstance& instance);

/// Throws OracleRefused unless the instance is within every limit.
void check_enumerable(const TinyInstance& instance);

struct JointOutcome {
  PowerMatrix power;
  std::vector<double> rates;
  std::vector<double> rewards;
};

/// Powers and realized rewards of a joint allocation.
/**
 * With the water-filling rule, every user water-fills against the others'
 * current powers, repeated until the powers settle (Jacobi iteration from
 * an equal split). With a single band per user both rules give full power.
 */
[[nodiscard]] JointOutcome evaluate_allocation(const TinyInstance& instance, const AllocationMatrix& allocation);

/// Scores a reward vector globally. The intrinsic objective has no global form and is scored as the sum.
[[nodiscard]] double global_score(ObjectiveKind objective, std::span<const double> rewards);

struct OracleSolution {
  AllocationMatrix allocation;
  JointOutcome outcome;
  double score{0.0};
  std::uint64_t states_explored{0};
};

/// Brute force over every joint assignment; ties keep the lexicographically first (user 0 most significant).
[[nodiscard]] OracleSolution solve_exhaustive(const TinyInstance& instance, ObjectiveKind objective);

}  // namespace dsapf

#endif
