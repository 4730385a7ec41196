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

#ifndef DSAPF_RNG_HPP
#define DSAPF_RNG_HPP

#include <cstdint>
#include <random>

namespace dsapf {

/// Draw sites that own an independent substream.
enum class StreamModule : std::uint32_t {
  kRoot = 0,
  kGeometry = 1,
  kChannelInit = 2,
  kChannelStep = 3,
  kThresholds = 4,
  kAvailability = 5,
  kParticleInit = 6,
  kParticlePredict = 7,
  kParticleResample = 8,
  kTest = 99,
};

struct StreamTag {
  StreamModule module{StreamModule::kRoot};
  std::uint64_t agent{0};
  std::uint64_t slot{0};
};

/// SplitMix64 finalizer; a bijective 64-bit mixer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seeded pseudo-random stream. Satisfies UniformRandomBitGenerator.
/**
 * A stream is identified by a 64-bit key. Substreams derive their key from the
 * parent key and a StreamTag only, never from the parent's position, so the
 * draws of one site never depend on how many draws another site made.
 */
class RngStream {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit RngStream(std::uint64_t seed) : key_{mix64(seed)}, engine_{key_} {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  [[nodiscard]] std::uint64_t key() const { return key_; }

  /// Uniform on [0, 1).
  double uniform() { return std::uniform_real_distribution<double>{0.0, 1.0}(engine_); }
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>{lo, hi}(engine_); }
  /// Uniform integer on [0, n).
  int uniform_index(int n) { return std::uniform_int_distribution<int>{0, n - 1}(engine_); }
  double normal() { return std::normal_distribution<double>{0.0, 1.0}(engine_); }
  bool bernoulli(double p) { return uniform() < p; }

 private:
  friend RngStream derive_substream(const RngStream& parent, StreamTag tag);
  struct FromKey {};
  RngStream(FromKey, std::uint64_t key) : key_{key}, engine_{key} {}

  std::uint64_t key_;
  std::mt19937_64 engine_;
};

/// Independent stream for a (module, agent, slot) draw site; a pure function of (parent key, tag).
[[nodiscard]] RngStream derive_substream(const RngStream& parent, StreamTag tag);

}  // namespace dsapf

#endif
