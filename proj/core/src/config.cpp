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

#include <dsapf/config.hpp>
#include <dsapf/types.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

namespace dsapf {

double dbm_to_watts(double dbm) {
  return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double watts_to_dbm(double watts) {
  return 10.0 * std::log10(watts) + 30.0;
}

double db_to_linear(double db) {
  return std::pow(10.0, db / 10.0);
}

namespace {

void require(bool ok, const char* field, const std::string& message) {
  if (!ok) {
    throw ConfigError{field, message};
  }
}

bool finite_positive(double value) {
  return std::isfinite(value) && value > 0.0;
}

}  // namespace

ValidatedConfig validate(const SystemConfig& config) {
  require(config.n_users >= 1, "n_users", "n_users must be at least 1");
  require(config.n_bands >= 1, "n_bands", "n_bands must be at least 1");
  require(config.n_bands <= kMaxBands, "n_bands", "n_bands must not exceed " + std::to_string(kMaxBands));
  require(config.max_bands_per_user >= 1, "max_bands_per_user", "max_bands_per_user must be at least 1");
  require(config.max_bands_per_user <= config.n_bands, "max_bands_per_user",
          "max_bands_per_user exceeds n_bands");
  require(config.n_particles >= 1, "n_particles", "n_particles must be at least 1");
  require(finite_positive(config.bandwidth_hz), "bandwidth_hz", "bandwidth_hz must be positive");
  require(std::isfinite(config.p_total_max_dbm), "p_total_max_dbm", "p_total_max_dbm must be finite");
  require(std::isfinite(config.p_band_max_dbm), "p_band_max_dbm", "p_band_max_dbm must be finite");
  require(std::isfinite(config.noise_psd_dbm_hz), "noise_psd_dbm_hz", "noise_psd_dbm_hz must be finite");
  require(std::isfinite(config.beta) && config.beta >= 0.0, "beta", "beta must be non-negative");
  require(std::isfinite(config.rate_threshold_min_bps) && std::isfinite(config.rate_threshold_max_bps) &&
              config.rate_threshold_min_bps >= 0.0 &&
              config.rate_threshold_min_bps <= config.rate_threshold_max_bps,
          "rate_threshold_range_bps", "rate_threshold_range_bps must satisfy 0 <= lo <= hi");
  require(finite_positive(config.path_loss_exponent), "path_loss_exponent", "path_loss_exponent must be positive");
  require(finite_positive(config.reference_distance_m), "reference_distance_m",
          "reference_distance_m must be positive");
  require(finite_positive(config.area_side_m), "area_side_m", "area_side_m must be positive");
  require(std::isfinite(config.direct_gain_advantage_db), "direct_gain_advantage_db",
          "direct_gain_advantage_db must be finite");
  require(config.ar_order == 1, "ar_order", "ar_order must be 1 (higher orders are unsupported)");
  require(std::isfinite(config.doppler_coherence_product) && config.doppler_coherence_product >= 0.0,
          "doppler_coherence_product", "doppler_coherence_product must be non-negative");
  require(config.pu_busy_prob >= 0.0 && config.pu_busy_prob <= 1.0, "pu_busy_prob",
          "pu_busy_prob must be in [0, 1]");
  require(finite_positive(config.likelihood_sigma_frac), "likelihood_sigma_frac",
          "likelihood_sigma_frac must be positive");
  require(config.mutation_prob >= 0.0 && config.mutation_prob <= 1.0, "mutation_prob",
          "mutation_prob must be in [0, 1]");
  require(config.ess_threshold_frac > 0.0 && config.ess_threshold_frac <= 1.0, "ess_threshold_frac",
          "ess_threshold_frac must be in (0, 1]");
  require(config.n_slots >= 0, "n_slots", "n_slots must be non-negative");

  ValidatedConfig validated;
  validated.config_ = config;
  validated.p_total_max_w_ = dbm_to_watts(config.p_total_max_dbm);
  validated.p_band_max_w_ = dbm_to_watts(config.p_band_max_dbm);
  validated.noise_band_w_ = dbm_to_watts(config.noise_psd_dbm_hz) * config.bandwidth_hz;
  validated.direct_gain_advantage_ = db_to_linear(config.direct_gain_advantage_db);
  return validated;
}

namespace {

std::string format_double(double value) {
  std::array<char, 32> buffer{};
  std::snprintf(buffer.data(), buffer.size(), "%.17g", value);
  return buffer.data();
}

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view field, std::string_view text) {
  text = trim(text);
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ConfigError{std::string{field}, "cannot parse '" + std::string{text} + "' for " + std::string{field}};
  }
  return value;
}

template <auto Member>
ConfigField int_field(std::string_view name) {
  return {name, [](const SystemConfig& c) { return std::to_string(c.*Member); },
          [name](SystemConfig& c, std::string_view text) { c.*Member = parse_number<int>(name, text); }};
}

template <auto Member>
ConfigField double_field(std::string_view name) {
  return {name, [](const SystemConfig& c) { return format_double(c.*Member); },
          [name](SystemConfig& c, std::string_view text) { c.*Member = parse_number<double>(name, text); }};
}

std::vector<ConfigField> make_fields() {
  std::vector<ConfigField> fields;
  fields.push_back(int_field<&SystemConfig::n_users>("n_users"));
  fields.push_back(int_field<&SystemConfig::n_bands>("n_bands"));
  fields.push_back(int_field<&SystemConfig::max_bands_per_user>("max_bands_per_user"));
  fields.push_back(int_field<&SystemConfig::n_particles>("n_particles"));
  fields.push_back(double_field<&SystemConfig::bandwidth_hz>("bandwidth_hz"));
  fields.push_back(double_field<&SystemConfig::p_total_max_dbm>("p_total_max_dbm"));
  fields.push_back(double_field<&SystemConfig::p_band_max_dbm>("p_band_max_dbm"));
  fields.push_back(double_field<&SystemConfig::noise_psd_dbm_hz>("noise_psd_dbm_hz"));
  fields.push_back(double_field<&SystemConfig::beta>("beta"));
  fields.push_back({"rate_threshold_range_bps",
                    [](const SystemConfig& c) {
                      return format_double(c.rate_threshold_min_bps) + "," + format_double(c.rate_threshold_max_bps);
                    },
                    [](SystemConfig& c, std::string_view text) {
                      const auto comma = text.find(',');
                      if (comma == std::string_view::npos) {
                        throw ConfigError{"rate_threshold_range_bps", "rate_threshold_range_bps expects 'lo,hi'"};
                      }
                      c.rate_threshold_min_bps = parse_number<double>("rate_threshold_range_bps", text.substr(0, comma));
                      c.rate_threshold_max_bps = parse_number<double>("rate_threshold_range_bps", text.substr(comma + 1));
                    }});
  fields.push_back(double_field<&SystemConfig::path_loss_exponent>("path_loss_exponent"));
  fields.push_back(double_field<&SystemConfig::reference_distance_m>("reference_distance_m"));
  fields.push_back(double_field<&SystemConfig::area_side_m>("area_side_m"));
  fields.push_back(double_field<&SystemConfig::direct_gain_advantage_db>("direct_gain_advantage_db"));
  fields.push_back(int_field<&SystemConfig::ar_order>("ar_order"));
  fields.push_back(double_field<&SystemConfig::doppler_coherence_product>("doppler_coherence_product"));
  fields.push_back(double_field<&SystemConfig::pu_busy_prob>("pu_busy_prob"));
  fields.push_back({"objective", [](const SystemConfig& c) { return std::string{to_string(c.objective)}; },
                    [](SystemConfig& c, std::string_view text) {
                      const auto kind = parse_objective(trim(text));
                      if (!kind) {
                        throw ConfigError{"objective", "unknown objective '" + std::string{trim(text)} +
                                                           "' (expected intrinsic, sum, maxmin, proportional_fair)"};
                      }
                      c.objective = *kind;
                    }});
  fields.push_back(double_field<&SystemConfig::likelihood_sigma_frac>("likelihood_sigma_frac"));
  fields.push_back(double_field<&SystemConfig::mutation_prob>("mutation_prob"));
  fields.push_back(double_field<&SystemConfig::ess_threshold_frac>("ess_threshold_frac"));
  fields.push_back(int_field<&SystemConfig::n_slots>("n_slots"));
  fields.push_back({"seed", [](const SystemConfig& c) { return std::to_string(c.seed); },
                    [](SystemConfig& c, std::string_view text) { c.seed = parse_number<std::uint64_t>("seed", text); }});
  return fields;
}

}  // namespace

std::span<const ConfigField> config_fields() {
  static const std::vector<ConfigField> fields = make_fields();
  return fields;
}

const ConfigField* find_config_field(std::string_view name) {
  const auto fields = config_fields();
  const auto it = std::find_if(fields.begin(), fields.end(), [name](const ConfigField& f) { return f.name == name; });
  return it == fields.end() ? nullptr : &*it;
}

}  // namespace dsapf
