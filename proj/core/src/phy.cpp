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

#include <dsapf/phy.hpp>

#include <algorithm>
#include <cmath>

namespace dsapf {

UserRequirements draw_requirements(const ValidatedConfig& config, RngStream& rng) {
  UserRequirements requirements;
  requirements.rate_threshold_bps.reserve(static_cast<std::size_t>(config->n_users));
  for (int i = 0; i < config->n_users; ++i) {
    const double lo = config->rate_threshold_min_bps;
    const double hi = config->rate_threshold_max_bps;
    requirements.rate_threshold_bps.push_back(hi > lo ? rng.uniform(lo, hi) : lo);
  }
  return requirements;
}

double sinr(int user, int band, const AllocationMatrix& alloc, const PowerMatrix& power, const GainTensor& gains,
            double noise_band_w) {
  double interference = 0.0;
  for (int other = 0; other < alloc.n_users(); ++other) {
    if (other != user && alloc.selected(other, band)) {
      interference += power.at(other, band) * gains.at(user, other, band);
    }
  }
  return power.at(user, band) * gains.at(user, user, band) / (interference + noise_band_w);
}

double throughput(int user, const AllocationMatrix& alloc, const PowerMatrix& power, const GainTensor& gains,
                  BandSet availability, double bandwidth_hz, double noise_band_w) {
  double rate = 0.0;
  for (int band : alloc.row(user) & availability) {
    rate += bandwidth_hz * std::log2(1.0 + sinr(user, band, alloc, power, gains, noise_band_w));
  }
  return rate;
}

std::vector<double> throughputs(const AllocationMatrix& alloc, const PowerMatrix& power, const GainTensor& gains,
                                BandSet availability, double bandwidth_hz, double noise_band_w) {
  const int n = alloc.n_users();
  const int m = alloc.n_bands();
  // Per band, the users transmitting there; rates need only those.
  std::vector<std::vector<int>> occupants(static_cast<std::size_t>(m));
  for (int k = 0; k < n; ++k) {
    for (int band : alloc.row(k) & availability) {
      occupants[band].push_back(k);
    }
  }
  std::vector<double> rates(static_cast<std::size_t>(n), 0.0);
  for (int band = 0; band < m; ++band) {
    const auto& users = occupants[band];
    for (int i : users) {
      double received = 0.0;
      for (int k : users) {
        received += power.at(k, band) * gains.at(i, k, band);
      }
      const double signal = power.at(i, band) * gains.at(i, i, band);
      const double interference = received - signal;
      rates[i] += bandwidth_hz * std::log2(1.0 + signal / (std::max(interference, 0.0) + noise_band_w));
    }
  }
  return rates;
}

double elastic_reward(double rate_bps, double threshold_bps, double beta) {
  if (rate_bps > threshold_bps) {
    return rate_bps;
  }
  if (rate_bps <= 0.0) {
    return 0.0;
  }
  return rate_bps * std::exp(-beta * (threshold_bps - rate_bps) / rate_bps);
}

}  // namespace dsapf
