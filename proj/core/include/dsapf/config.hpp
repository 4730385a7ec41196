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

#ifndef DSAPF_CONFIG_HPP
#define DSAPF_CONFIG_HPP

#include <dsapf/objectives.hpp>

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace dsapf {

/// Every scenario parameter. Defaults reproduce the large-scale setup (200 users, 15 bands).
/**
 * Powers and PSDs are given in dBm and dBm/Hz; validate() converts them to
 * watts once. The Doppler spread enters only through the product f_d * T_b.
 */
struct SystemConfig {
  int n_users = 200;
  int n_bands = 15;
  int max_bands_per_user = 1;
  int n_particles = 10;
  double bandwidth_hz = 1e6;
  double p_total_max_dbm = 3.0;
  double p_band_max_dbm = 20.0;
  double noise_psd_dbm_hz = -100.0;
  double beta = 0.5;
  double rate_threshold_min_bps = 0.0;
  double rate_threshold_max_bps = 1e4;
  double path_loss_exponent = 3.0;
  double reference_distance_m = 1.0;
  double area_side_m = 500.0;
  double direct_gain_advantage_db = 3.0;
  int ar_order = 1;
  double doppler_coherence_product = 0.05;
  double pu_busy_prob = 0.0;
  ObjectiveKind objective = ObjectiveKind::kIntrinsic;
  double likelihood_sigma_frac = 0.25;
  double mutation_prob = 0.2;
  double ess_threshold_frac = 0.5;
  int n_slots = 100;
  std::uint64_t seed = 1;

  bool operator==(const SystemConfig&) const = default;
};

/// Raised by validate() and by scenario parsing; names the offending field.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument{message}, field_{std::move(field)} {}

  [[nodiscard]] const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A file could not be read or written; carries the offending path.
class IoError : public std::runtime_error {
 public:
  IoError(std::string path, const std::string& message)
      : std::runtime_error{message + ": " + path}, path_{std::move(path)} {}

  [[nodiscard]] const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// A SystemConfig whose invariants hold, plus linear-scale quantities derived once.
class ValidatedConfig {
 public:
  [[nodiscard]] const SystemConfig& raw() const { return config_; }
  const SystemConfig* operator->() const { return &config_; }

  [[nodiscard]] double p_total_max_w() const { return p_total_max_w_; }
  [[nodiscard]] double p_band_max_w() const { return p_band_max_w_; }
  /// N_0 * B in watts.
  [[nodiscard]] double noise_band_w() const { return noise_band_w_; }
  /// Linear direct-link advantage (2.0 for 3 dB, up to rounding).
  [[nodiscard]] double direct_gain_advantage() const { return direct_gain_advantage_; }

 private:
  friend ValidatedConfig validate(const SystemConfig& config);
  ValidatedConfig() = default;

  SystemConfig config_;
  double p_total_max_w_{0.0};
  double p_band_max_w_{0.0};
  double noise_band_w_{0.0};
  double direct_gain_advantage_{0.0};
};

/// Checks every invariant in declaration order and throws ConfigError on the first violation.
ValidatedConfig validate(const SystemConfig& config);

[[nodiscard]] double dbm_to_watts(double dbm);
[[nodiscard]] double watts_to_dbm(double watts);
[[nodiscard]] double db_to_linear(double db);

/// Name-addressable view of one SystemConfig field, used by scenario files and sweeps.
struct ConfigField {
  std::string_view name;
  std::function<std::string(const SystemConfig&)> get;
  /// Throws ConfigError when `text` does not parse as the field's type.
  std::function<void(SystemConfig&, std::string_view text)> set;
};

/// All addressable fields in a fixed order.
[[nodiscard]] std::span<const ConfigField> config_fields();
[[nodiscard]] const ConfigField* find_config_field(std::string_view name);

}  // namespace dsapf

#endif
