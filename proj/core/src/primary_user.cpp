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

#include <dsapf/primary_user.hpp>

#include <cassert>

namespace dsapf {

BandSet sample_availability(double busy_prob, int n_bands, RngStream& rng) {
  assert(n_bands >= 0 && n_bands <= kMaxBands);
  BandSet available;
  for (int band = 0; band < n_bands; ++band) {
    if (!rng.bernoulli(busy_prob)) {
      available.insert(band);
    }
  }
  return available;
}

double occupancy(BandSet availability, int n_bands) {
  if (n_bands <= 0) {
    return 0.0;
  }
  const int free = (availability & BandSet::all(n_bands)).size();
  return static_cast<double>(n_bands - free) / n_bands;
}

}  // namespace dsapf
