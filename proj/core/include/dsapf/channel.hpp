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

#ifndef DSAPF_CHANNEL_HPP
#define DSAPF_CHANNEL_HPP

#include <dsapf/config.hpp>
#include <dsapf/rng.hpp>
#include <dsapf/types.hpp>

#include <complex>
#include <span>
#include <vector>

/**
 * \file
 * \brief Rayleigh fading channels evolving as an AR(1) process over a path-loss geometry.
 *
 * Every link (receiver i, transmitter k, band j) carries a complex amplitude
 * h_ik^(j)(t) = alpha_1 h_ik^(j)(t-1) + xi sqrt(G_ik) w, with w ~ CN(0, 1) drawn
 * i.i.d. per link and slot, and G_ik the mean power gain of the link. The
 * coefficient alpha_1 = J0(2 pi f_d T_b) and xi^2 = 1 - alpha_1^2 keep E|h|^2 = G_ik.
 */

namespace dsapf {

/// AR coefficients for a unit-variance process; the innovation of a link is scaled by sqrt(mean gain).
struct ArCoefficients {
  std::vector<double> alpha;
  double xi{0.0};
};

/// Coefficients from the Doppler-coherence product. Only order 1 is supported.
/**
 * \throws std::invalid_argument for order < 1, order > 1, or a negative product.
 */
[[nodiscard]] ArCoefficients ar_coefficients(double doppler_coherence_product, int order = 1);

/// Dense complex tensor with the same (rx, tx, band) layout as GainTensor.
class ComplexTensor {
 public:
  ComplexTensor() = default;
  ComplexTensor(int n_users, int n_bands)
      : n_users_{n_users},
        n_bands_{n_bands},
        values_(static_cast<std::size_t>(n_users) * n_users * n_bands) {}

  [[nodiscard]] int n_users() const { return n_users_; }
  [[nodiscard]] int n_bands() const { return n_bands_; }

  [[nodiscard]] std::complex<double> at(int rx, int tx, int band) const { return values_[index(rx, tx, band)]; }
  std::complex<double>& at(int rx, int tx, int band) { return values_[index(rx, tx, band)]; }

  [[nodiscard]] std::span<const std::complex<double>> data() const { return values_; }
  [[nodiscard]] std::span<std::complex<double>> data() { return values_; }

  /// |h|^2 for every entry.
  [[nodiscard]] GainTensor power_gains() const;

  bool operator==(const ComplexTensor&) const = default;

 private:
  [[nodiscard]] std::size_t index(int rx, int tx, int band) const {
    return (static_cast<std::size_t>(rx) * n_users_ + tx) * n_bands_ + band;
  }

  int n_users_{0};
  int n_bands_{0};
  std::vector<std::complex<double>> values_;
};

/// Current fading state: the p most recent amplitude tensors and the mean power gain of every link.
struct ChannelTensor {
  int n_users{0};
  int n_bands{0};
  /// Row-major N x N mean power gains, entry [rx * N + tx].
  std::vector<double> mean_gain;
  /// history[0] is h(t-1), history[p-1] is h(t-p).
  std::vector<ComplexTensor> history;

  [[nodiscard]] double mean_gain_at(int rx, int tx) const {
    return mean_gain[static_cast<std::size_t>(rx) * n_users + tx];
  }
  [[nodiscard]] const ComplexTensor& latest() const { return history.front(); }
};

/// Burn-in length applied by init_channels.
inline constexpr int kBurnInSteps = 64;

/// Density of the distance between two independent uniform points in the unit square.
[[nodiscard]] double square_distance_pdf(double s);

/// E[(d0 / max(d, d0))^eta] for d the distance between two uniform points in a square of side `side`.
[[nodiscard]] double mean_interference_gain(double side, double reference_distance, double exponent);

/// Mean link gains from a random placement of transmitter/receiver pairs.
/**
 * Transmitters and receivers are dropped uniformly in a square of side
 * `area_side_m`. The interference link from transmitter k to receiver i has
 * mean gain (d0 / max(d_ki, d0))^eta. Every direct link gets the same mean
 * gain: the configured advantage times mean_interference_gain(), the average
 * interference gain over all placements. It does not depend on the seed.
 */
[[nodiscard]] std::vector<double> mean_gain_matrix(const ValidatedConfig& config, RngStream& rng);

/// Draws h ~ CN(0, G) for every link and band, then runs kBurnInSteps AR steps.
[[nodiscard]] ChannelTensor init_channels(std::vector<double> mean_gain, int n_users, int n_bands,
                                          const ArCoefficients& coeffs, RngStream& rng);

/// Geometry and fading from a validated config. Geometry and fading use separate substreams of `rng`.
[[nodiscard]] ChannelTensor init_channels(const ValidatedConfig& config, const RngStream& rng);

/// One AR step: pushes h(t) to the front of the history.
void step_channels(ChannelTensor& tensor, const ArCoefficients& coeffs, RngStream& rng);

/// Conditional mean of the next step, sum_l alpha_l h(t-l).
[[nodiscard]] ComplexTensor predict_channels(const ChannelTensor& tensor, const ArCoefficients& coeffs);

}  // namespace dsapf

#endif
