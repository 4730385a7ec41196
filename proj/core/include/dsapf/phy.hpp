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

#ifndef DSAPF_PHY_HPP
#define DSAPF_PHY_HPP

#include <dsapf/config.hpp>
#include <dsapf/rng.hpp>
#include <dsapf/types.hpp>

#include <vector>

namespace dsapf {

/// Per-user rate thresholds R_i^th in bit/s, fixed for a run.
struct UserRequirements {
  std::vector<double> rate_threshold_bps;
};

/// Draws every threshold uniformly over the configured range.
[[nodiscard]] UserRequirements draw_requirements(const ValidatedConfig& config, RngStream& rng);

/// SINR of `user` on `band`; interference counts every other user that selected the band.
[[nodiscard]] double sinr(int user, int band, const AllocationMatrix& alloc, const PowerMatrix& power,
                          const GainTensor& gains, double noise_band_w);

/// Shannon throughput summed over the user's selected, available bands (bit/s).
[[nodiscard]] double throughput(int user, const AllocationMatrix& alloc, const PowerMatrix& power,
                                const GainTensor& gains, BandSet availability, double bandwidth_hz,
                                double noise_band_w);

/// throughput() for every user at once, sharing the per-band interference sums.
[[nodiscard]] std::vector<double> throughputs(const AllocationMatrix& alloc, const PowerMatrix& power,
                                              const GainTensor& gains, BandSet availability, double bandwidth_hz,
                                              double noise_band_w);

/// Elastic reward: the rate itself above threshold, exponentially discounted below it. r(0) = 0.
[[nodiscard]] double elastic_reward(double rate_bps, double threshold_bps, double beta);

}  // namespace dsapf

#endif
