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

#include <dsapf/powerfill.hpp>

#include <algorithm>
#include <cassert>
#include <limits>

namespace dsapf {

namespace {

constexpr int kMaxBisectionSteps = 256;

double fill_at(double level, const std::vector<double>& floors, const std::vector<double>& caps,
               std::vector<double>* out) {
  double total = 0.0;
  for (std::size_t j = 0; j < floors.size(); ++j) {
    const double p = std::clamp(level - floors[j], 0.0, caps[j]);
    if (out != nullptr) {
      (*out)[j] = p;
    }
    total += p;
  }
  return total;
}

}  // namespace

std::vector<double> water_fill(const WaterFillProblem& problem) {
  const auto n = problem.effective_gains.size();
  assert(problem.p_caps.size() == n);
  std::vector<double> power(n, 0.0);

  // Bands with no gain are excluded by giving them an infinite floor and zero cap.
  std::vector<double> floors(n);
  std::vector<double> caps(n);
  double cap_total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double g = problem.effective_gains[j];
    const bool usable = g > 0.0 && problem.p_caps[j] > 0.0;
    floors[j] = usable ? 1.0 / g : std::numeric_limits<double>::infinity();
    caps[j] = usable ? problem.p_caps[j] : 0.0;
    cap_total += caps[j];
  }
  if (cap_total <= 0.0 || problem.p_total <= 0.0) {
    return power;
  }
  if (problem.p_total >= cap_total) {
    return caps;
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (caps[j] > 0.0) {
      lo = std::min(lo, floors[j]);
      hi = std::max(hi, floors[j] + std::min(caps[j], problem.p_total));
    }
  }
  for (int step = 0; step < kMaxBisectionSteps; ++step) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      break;
    }
    if (fill_at(mid, floors, caps, nullptr) < problem.p_total) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  fill_at(0.5 * (lo + hi), floors, caps, &power);
  return power;
}

std::vector<double> uniform_split(const WaterFillProblem& problem) {
  const auto n = problem.effective_gains.size();
  std::vector<double> power(n, 0.0);
  if (n == 0) {
    return power;
  }
  const double share = problem.p_total / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    power[j] = std::min(share, problem.p_caps[j]);
  }
  return power;
}

}  // namespace dsapf
