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

#ifndef DSAPF_PRIMARY_USER_HPP
#define DSAPF_PRIMARY_USER_HPP

#include <dsapf/rng.hpp>
#include <dsapf/types.hpp>

namespace dsapf {

/// Per-slot availability v(t): band k is free with probability 1 - busy_prob, independently.
[[nodiscard]] BandSet sample_availability(double busy_prob, int n_bands, RngStream& rng);

/// Fraction of the `n_bands` bands that are busy in `availability`.
[[nodiscard]] double occupancy(BandSet availability, int n_bands);

}  // namespace dsapf

#endif
