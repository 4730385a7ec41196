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

#include <dsapf/channel.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dsapf {

ArCoefficients ar_coefficients(double doppler_coherence_product, int order) {
  if (order < 1) {
    throw std::invalid_argument{"AR order must be at least 1"};
  }
  if (order > 1) {
    throw std::invalid_argument{"AR order > 1 is unsupported"};
  }
  if (!(doppler_coherence_product >= 0.0)) {
    throw std::invalid_argument{"doppler_coherence_product must be non-negative"};
  }
  const double alpha = std::cyl_bessel_j(0.0, 2.0 * std::numbers::pi * doppler_coherence_product);
  return {{alpha}, std::sqrt(std::max(0.0, 1.0 - alpha * alpha))};
}

GainTensor ComplexTensor::power_gains() const {
  GainTensor gains{n_users_, n_bands_};
  for (int rx = 0; rx < n_users_; ++rx) {
    for (int tx = 0; tx < n_users_; ++tx) {
      for (int band = 0; band < n_bands_; ++band) {
        gains.at(rx, tx, band) = std::norm(at(rx, tx, band));
      }
    }
  }
  return gains;
}

double square_distance_pdf(double s) {
  if (s < 0.0 || s > std::numbers::sqrt2) {
    return 0.0;
  }
  if (s <= 1.0) {
    return 2.0 * s * (s * s - 4.0 * s + std::numbers::pi);
  }
  const double root = std::sqrt(s * s - 1.0);
  return 2.0 * s * (4.0 * root - (s * s + 2.0 - std::numbers::pi) - 4.0 * std::acos(1.0 / s));
}

double mean_interference_gain(double side, double reference_distance, double exponent) {
  if (!(side > 0.0) || !(reference_distance > 0.0) || !(exponent >= 0.0)) {
    throw std::invalid_argument{"mean_interference_gain: side and reference distance must be positive"};
  }
  // Inside the reference distance the gain is 1; integrate that part in closed form.
  const double a = std::min(reference_distance / side, std::numbers::sqrt2);
  double total = 0.0;
  if (a <= 1.0) {
    total = a * a * a * a / 2.0 - 8.0 * a * a * a / 3.0 + std::numbers::pi * a * a;
  } else {
    total = 1.0;
    constexpr int kSteps = 4096;
    const double h = (std::numbers::sqrt2 - a) / kSteps;
    double tail = 0.0;
    for (int k = 0; k <= kSteps; ++k) {
      const double w = (k == 0 || k == kSteps) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
      tail += w * square_distance_pdf(a + k * h);
    }
    total -= tail * h / 3.0;
  }
  // Beyond it, Simpson's rule in log-distance on each smooth piece of the density.
  auto integrate = [&](double lo, double hi) {
    if (!(hi > lo)) {
      return 0.0;
    }
    constexpr int kSteps = 4096;
    const double u0 = std::log(lo);
    const double h = (std::log(hi) - u0) / kSteps;
    double sum = 0.0;
    for (int k = 0; k <= kSteps; ++k) {
      const double s = std::exp(u0 + k * h);
      const double w = (k == 0 || k == kSteps) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
      sum += w * square_distance_pdf(s) * std::pow(a / s, exponent) * s;
    }
    return sum * h / 3.0;
  };
  if (a < 1.0) {
    total += integrate(a, 1.0) + integrate(1.0, std::numbers::sqrt2);
  } else if (a < std::numbers::sqrt2) {
    total += integrate(a, std::numbers::sqrt2);
  }
  return total;
}

std::vector<double> mean_gain_matrix(const ValidatedConfig& config, RngStream& rng) {
  const int n = config->n_users;
  const double side = config->area_side_m;
  const double d0 = config->reference_distance_m;
  const double eta = config->path_loss_exponent;

  struct Point {
    double x;
    double y;
  };
  std::vector<Point> tx(static_cast<std::size_t>(n));
  std::vector<Point> rx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    tx[i] = {rng.uniform(0.0, side), rng.uniform(0.0, side)};
    rx[i] = {rng.uniform(0.0, side), rng.uniform(0.0, side)};
  }

  auto path_gain = [&](const Point& a, const Point& b) {
    const double d = std::hypot(a.x - b.x, a.y - b.y);
    return std::pow(d0 / std::max(d, d0), eta);
  };

  std::vector<double> gain(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (i != k) {
        gain[static_cast<std::size_t>(i) * n + k] = path_gain(tx[k], rx[i]);
      }
    }
  }
  const double direct = config.direct_gain_advantage() * mean_interference_gain(side, d0, eta);
  for (int i = 0; i < n; ++i) {
    gain[static_cast<std::size_t>(i) * n + i] = direct;
  }
  return gain;
}

namespace {

std::complex<double> circular_normal(RngStream& rng, double variance) {
  const double scale = std::sqrt(variance / 2.0);
  const double re = rng.normal();
  const double im = rng.normal();
  return {scale * re, scale * im};
}

}  // namespace

ChannelTensor init_channels(std::vector<double> mean_gain, int n_users, int n_bands, const ArCoefficients& coeffs,
                            RngStream& rng) {
  ChannelTensor tensor;
  tensor.n_users = n_users;
  tensor.n_bands = n_bands;
  tensor.mean_gain = std::move(mean_gain);

  ComplexTensor initial{n_users, n_bands};
  for (int rx = 0; rx < n_users; ++rx) {
    for (int tx = 0; tx < n_users; ++tx) {
      const double variance = tensor.mean_gain_at(rx, tx);
      for (int band = 0; band < n_bands; ++band) {
        initial.at(rx, tx, band) = circular_normal(rng, variance);
      }
    }
  }
  tensor.history.assign(coeffs.alpha.size(), initial);

  for (int step = 0; step < kBurnInSteps; ++step) {
    step_channels(tensor, coeffs, rng);
  }
  return tensor;
}

ChannelTensor init_channels(const ValidatedConfig& config, const RngStream& rng) {
  auto geometry_rng = derive_substream(rng, {StreamModule::kGeometry, 0, 0});
  auto fading_rng = derive_substream(rng, {StreamModule::kChannelInit, 0, 0});
  const auto coeffs = ar_coefficients(config->doppler_coherence_product, config->ar_order);
  return init_channels(mean_gain_matrix(config, geometry_rng), config->n_users, config->n_bands, coeffs,
                       fading_rng);
}

void step_channels(ChannelTensor& tensor, const ArCoefficients& coeffs, RngStream& rng) {
  auto next = predict_channels(tensor, coeffs);
  if (coeffs.xi > 0.0) {
    for (int rx = 0; rx < tensor.n_users; ++rx) {
      for (int tx = 0; tx < tensor.n_users; ++tx) {
        const double variance = coeffs.xi * coeffs.xi * tensor.mean_gain_at(rx, tx);
        for (int band = 0; band < tensor.n_bands; ++band) {
          next.at(rx, tx, band) += circular_normal(rng, variance);
        }
      }
    }
  }
  std::rotate(tensor.history.rbegin(), tensor.history.rbegin() + 1, tensor.history.rend());
  tensor.history.front() = std::move(next);
}

ComplexTensor predict_channels(const ChannelTensor& tensor, const ArCoefficients& coeffs) {
  ComplexTensor prediction{tensor.n_users, tensor.n_bands};
  auto out = prediction.data();
  const auto depth = std::min(coeffs.alpha.size(), tensor.history.size());
  for (std::size_t lag = 0; lag < depth; ++lag) {
    const auto past = tensor.history[lag].data();
    const double alpha = coeffs.alpha[lag];
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
      out[idx] += alpha * past[idx];
    }
  }
  return prediction;
}

}  // namespace dsapf
