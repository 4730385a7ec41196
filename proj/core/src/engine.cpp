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

#include <dsapf/engine.hpp>
#include <dsapf/primary_user.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace dsapf {

double SlotRecord::mean_rate() const {
  if (realized_rates.empty()) {
    return 0.0;
  }
  return std::accumulate(realized_rates.begin(), realized_rates.end(), 0.0) /
         static_cast<double>(realized_rates.size());
}

double SlotRecord::min_rate() const {
  return realized_rates.empty() ? 0.0 : *std::min_element(realized_rates.begin(), realized_rates.end());
}

double SlotRecord::max_rate() const {
  return realized_rates.empty() ? 0.0 : *std::max_element(realized_rates.begin(), realized_rates.end());
}

double jain_index(std::span<const double> rewards) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double r : rewards) {
    sum += r;
    sum_sq += r * r;
  }
  if (sum_sq <= 0.0) {
    return 1.0;
  }
  return sum * sum / (static_cast<double>(rewards.size()) * sum_sq);
}

Simulation::Simulation(const ValidatedConfig& config, EngineOptions options)
    : config_{config},
      options_{std::move(options)},
      root_{config->seed},
      coeffs_{ar_coefficients(config->doppler_coherence_product, config->ar_order)},
      channel_{init_channels(config, root_)} {
  const int n = config->n_users;
  const int m = config->n_bands;

  auto threshold_rng = derive_substream(root_, {StreamModule::kThresholds, 0, 0});
  requirements_ = draw_requirements(config, threshold_rng);

  budget_ = {config->bandwidth_hz, config.noise_band_w(), config.p_total_max_w(), config.p_band_max_w(),
             config->beta};

  // No sensing has happened yet, so initial candidates range over every band.
  particle_sets_.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto rng = derive_substream(root_, {StreamModule::kParticleInit, static_cast<std::uint64_t>(i), 0});
    particle_sets_.push_back(init_particles(config->n_particles, config->max_bands_per_user, BandSet::all(m), rng));
  }

  broadcast_selection_ = AllocationMatrix{n, m};
  broadcast_power_ = PowerMatrix{n, m};
  broadcast_rewards_.assign(static_cast<std::size_t>(n), 0.0);
}

template <class Fn>
void Simulation::for_each_agent(Fn&& fn) {
  const int n = config_->n_users;
  auto agent_at = [&](int position) { return options_.reverse_agent_order ? n - 1 - position : position; };
  const int workers = std::clamp(options_.threads, 1, n);
  if (workers == 1) {
    for (int position = 0; position < n; ++position) {
      fn(agent_at(position));
    }
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int position = next++; position < n; position = next++) {
        fn(agent_at(position));
      }
    });
  }
}

SlotRecord Simulation::step() {
  const int n = config_->n_users;
  const int m = config_->n_bands;
  const int t = slot_;
  const auto slot_tag = static_cast<std::uint64_t>(t);

  auto availability_rng = derive_substream(root_, {StreamModule::kAvailability, 0, slot_tag});
  const BandSet available = sample_availability(config_->pu_busy_prob, m, availability_rng);

  const NeighborView view{broadcast_selection_,
                          broadcast_power_,
                          broadcast_rewards_,
                          predict_channels(channel_, coeffs_).power_gains(),
                          available,
                          requirements_.rate_threshold_bps,
                          budget_};

  std::vector<Decision> decisions(static_cast<std::size_t>(n));
  for_each_agent([&](int i) {
    auto rng = derive_substream(root_, {StreamModule::kParticlePredict, static_cast<std::uint64_t>(i), slot_tag});
    predict(particle_sets_[i], available, config_->max_bands_per_user, config_->mutation_prob, rng);
    decisions[i] = decide(particle_sets_[i], view, i, config_->objective, options_.power_rule);
  });

  AllocationMatrix allocation{n, m};
  PowerMatrix power{n, m};
  for (int i = 0; i < n; ++i) {
    allocation.set_row(i, decisions[i].selection);
    std::copy(decisions[i].power_w.begin(), decisions[i].power_w.end(), power.row(i).begin());
  }

  auto step_rng = derive_substream(root_, {StreamModule::kChannelStep, 0, slot_tag});
  step_channels(channel_, coeffs_, step_rng);
  const GainTensor realized = channel_.latest().power_gains();

  SlotRecord record;
  record.slot = t;
  record.realized_rates =
      throughputs(allocation, power, realized, available, config_->bandwidth_hz, config_.noise_band_w());
  record.realized_rewards.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    record.realized_rewards[i] =
        elastic_reward(record.realized_rates[i], requirements_.rate_threshold_bps[i], config_->beta);
  }
  record.jain = jain_index(record.realized_rewards);
  record.occupancy = occupancy(available, m);
  record.selected_bands.assign(allocation.rows().begin(), allocation.rows().end());

  const AssimilationParams params{config_->likelihood_sigma_frac, config_->ess_threshold_frac};
  for_each_agent([&](int i) {
    auto rng = derive_substream(root_, {StreamModule::kParticleResample, static_cast<std::uint64_t>(i), slot_tag});
    assimilate(particle_sets_[i], record.realized_rewards[i], decisions[i].self_rewards, params, rng);
  });

  // Every user sends (selection, powers, reward) to every other user.
  record.messages = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1);
  total_messages_ += record.messages;
  broadcast_selection_ = allocation;
  broadcast_power_ = power;
  broadcast_rewards_ = record.realized_rewards;

  if (options_.observer) {
    options_.observer(SlotTrace{t, available, view, decisions, allocation, power, realized, record});
  }
  ++slot_;
  return record;
}

RunSummary summarize(const ValidatedConfig& config, std::span<const SlotRecord> records) {
  RunSummary summary;
  summary.config = config.raw();
  summary.seed = config->seed;
  summary.n_slots = static_cast<int>(records.size());
  if (records.empty()) {
    return summary;
  }
  double throughput = 0.0;
  double jain = 0.0;
  for (const auto& record : records) {
    throughput += record.mean_rate();
    jain += record.jain;
    summary.total_messages += record.messages;
  }
  summary.per_user_avg_throughput_bps = throughput / static_cast<double>(records.size());
  summary.avg_jain = jain / static_cast<double>(records.size());
  return summary;
}

RunResult run(const ValidatedConfig& config, const EngineOptions& options) {
  Simulation simulation{config, options};
  RunResult result;
  result.records.reserve(static_cast<std::size_t>(config->n_slots));
  for (int t = 0; t < config->n_slots; ++t) {
    result.records.push_back(simulation.step());
  }
  result.summary = summarize(config, result.records);
  return result;
}

MetricStats mean_std(std::span<const double> values) {
  MetricStats stats;
  if (values.empty()) {
    return stats;
  }
  const double n = static_cast<double>(values.size());
  // Deviations from the first value keep identical inputs exact.
  const double origin = values.front();
  double shift = 0.0;
  for (double v : values) {
    shift += v - origin;
  }
  shift /= n;
  stats.mean = origin + shift;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) {
      const double d = (v - origin) - shift;
      ss += d * d;
    }
    stats.std = std::sqrt(ss / (n - 1.0));
  }
  return stats;
}

ReplicateSummary replicate(const SystemConfig& config, std::span<const std::uint64_t> seeds, int jobs) {
  if (seeds.empty()) {
    throw std::invalid_argument{"replicate: at least one seed is required"};
  }
  std::vector<ValidatedConfig> configs;
  configs.reserve(seeds.size());
  for (auto seed : seeds) {
    auto seeded = config;
    seeded.seed = seed;
    configs.push_back(validate(seeded));
  }

  ReplicateSummary out;
  out.runs.resize(seeds.size());
  const int workers = std::clamp(jobs, 1, static_cast<int>(seeds.size()));
  if (workers == 1) {
    for (std::size_t r = 0; r < seeds.size(); ++r) {
      out.runs[r] = run(configs[r]).summary;
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (auto r = next++; r < seeds.size(); r = next++) {
          out.runs[r] = run(configs[r]).summary;
        }
      });
    }
  }

  std::vector<double> throughput;
  std::vector<double> jain;
  std::vector<double> messages;
  for (const auto& summary : out.runs) {
    throughput.push_back(summary.per_user_avg_throughput_bps);
    jain.push_back(summary.avg_jain);
    messages.push_back(static_cast<double>(summary.total_messages));
  }
  out.avg_throughput_bps = mean_std(throughput);
  out.avg_jain = mean_std(jain);
  out.total_messages = mean_std(messages);
  return out;
}

}  // namespace dsapf
