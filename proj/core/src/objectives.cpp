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

#include <dsapf/objectives.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

namespace dsapf {

std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kIntrinsic:
      return "intrinsic";
    case ObjectiveKind::kSum:
      return "sum";
    case ObjectiveKind::kMaxMin:
      return "maxmin";
    case ObjectiveKind::kProportionalFair:
      return "proportional_fair";
  }
  return "unknown";
}

std::optional<ObjectiveKind> parse_objective(std::string_view name) {
  for (auto kind : {ObjectiveKind::kIntrinsic, ObjectiveKind::kSum, ObjectiveKind::kMaxMin,
                    ObjectiveKind::kProportionalFair}) {
    if (name == to_string(kind)) {
      return kind;
    }
  }
  return std::nullopt;
}

double evaluate(ObjectiveKind kind, std::span<const double> rewards, int self) {
  switch (kind) {
    case ObjectiveKind::kIntrinsic:
      assert(self >= 0 && static_cast<std::size_t>(self) < rewards.size());
      return rewards[static_cast<std::size_t>(self)];
    case ObjectiveKind::kSum:
      return std::accumulate(rewards.begin(), rewards.end(), 0.0);
    case ObjectiveKind::kMaxMin:
      if (rewards.empty()) {
        return 0.0;
      }
      return *std::min_element(rewards.begin(), rewards.end());
    case ObjectiveKind::kProportionalFair:
      return std::accumulate(rewards.begin(), rewards.end(), 0.0,
                             [](double acc, double r) { return acc + std::log(r + kLogFloor); });
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace dsapf
