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

#ifndef DSAPF_POWERFILL_HPP
#define DSAPF_POWERFILL_HPP

#include <vector>

namespace dsapf {

/// One user's power split over its selected bands.
struct WaterFillProblem {
  /// g_j = |h_ii^(j)|^2 / (I_j + N_0 B), in 1/W. Non-positive entries receive no power.
  std::vector<double> effective_gains;
  double p_total{0.0};
  /// Per-band caps in W, same length as effective_gains.
  std::vector<double> p_caps;
};

/// Capped water-filling: P_j = clamp(mu - 1/g_j, 0, cap_j) with sum P_j = min(p_total, sum caps).
/**
 * The water level mu is found by bisection. The result maximizes
 * sum_j log2(1 + P_j g_j) over the capped simplex.
 */
[[nodiscard]] std::vector<double> water_fill(const WaterFillProblem& problem);

/// Equal split of p_total over the bands, each clipped to its cap.
[[nodiscard]] std::vector<double> uniform_split(const WaterFillProblem& problem);

}  // namespace dsapf

#endif
