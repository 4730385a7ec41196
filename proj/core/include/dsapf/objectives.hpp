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

#ifndef DSAPF_OBJECTIVES_HPP
#define DSAPF_OBJECTIVES_HPP

#include <optional>
#include <span>
#include <string_view>

namespace dsapf {

enum class ObjectiveKind {
  kIntrinsic,         ///< r_i, the agent's own reward.
  kSum,               ///< sum of all rewards.
  kMaxMin,            ///< smallest reward (bottleneck).
  kProportionalFair,  ///< sum of log rewards.
};

/// Floor added inside the logarithm of the proportional fair objective.
inline constexpr double kLogFloor = 1e-9;

[[nodiscard]] std::string_view to_string(ObjectiveKind kind);
[[nodiscard]] std::optional<ObjectiveKind> parse_objective(std::string_view name);

/// Scores a reward vector under `kind`. `self` only matters for the intrinsic objective.
[[nodiscard]] double evaluate(ObjectiveKind kind, std::span<const double> rewards, int self);

}  // namespace dsapf

#endif
