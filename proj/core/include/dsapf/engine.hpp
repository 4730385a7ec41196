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

#ifndef DSAPF_ENGINE_HPP
#define DSAPF_ENGINE_HPP

#include <dsapf/channel.hpp>
#include <dsapf/config.hpp>
#include <dsapf/pfilter.hpp>
#include <dsapf/phy.hpp>
#include <dsapf/rng.hpp>
#include <dsapf/types.hpp>

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace dsapf {

/// Realized outcome of one slot.
struct SlotRecord {
  int slot{0};
  std::vector<double> realized_rates;
  std::vector<double> realized_rewards;
  double jain{1.0};
  double occupancy{0.0};
  /// Broadcast messages sent during this slot.
  std::uint64_t messages{0};
  std::vector<BandSet> selected_bands;

  [[nodiscard]] double mean_rate() const;
  [[nodiscard]] double min_rate() const;
  [[nodiscard]] double max_rate() const;
};

struct RunSummary {
  /// Rates averaged over users, then over slots (bit/s).
  double per_user_avg_throughput_bps{0.0};
  double avg_jain{0.0};
  std::uint64_t total_messages{0};
  int n_slots{0};
  SystemConfig config;
  std::uint64_t seed{0};
};

struct RunResult {
  RunSummary summary;
  std::vector<SlotRecord> records;
};

/// Everything the engine knew at the end of a slot, handed to EngineOptions::observer.
struct SlotTrace {
  int slot;
  BandSet availability;
  const NeighborView& view;
  const std::vector<Decision>& decisions;
  const AllocationMatrix& allocation;
  const PowerMatrix& power;
  /// True |h|^2 of the slot, used for the realized rates.
  const GainTensor& realized_gains;
  const SlotRecord& record;
};

struct EngineOptions {
  /// Worker threads for the per-agent phases; results do not depend on it.
  int threads{1};
  /// Visit agents from last to first within each phase. Results must not change.
  bool reverse_agent_order{false};
  PowerRule power_rule{PowerRule::kWaterFill};
  std::function<void(const SlotTrace&)> observer;
};

/// Jain's index (sum r)^2 / (N sum r^2); 1 for an all-zero or empty vector.
[[nodiscard]] double jain_index(std::span<const double> rewards);

/// Slot-synchronous simulation of all agents.
/**
 * Each step: sample availability, let every agent predict and decide from the
 * previous slot's broadcasts and the predicted channel (agents never see each
 * other's current decisions), advance the true channel, compute realized
 * rates and rewards from all simultaneous choices, let every agent
 * reweight/resample, then record the broadcasts for the next slot.
 */
class Simulation {
 public:
  explicit Simulation(const ValidatedConfig& config, EngineOptions options = {});

  SlotRecord step();

  [[nodiscard]] int next_slot() const { return slot_; }
  [[nodiscard]] const ValidatedConfig& config() const { return config_; }
  [[nodiscard]] const ChannelTensor& channel() const { return channel_; }
  [[nodiscard]] const ArCoefficients& ar() const { return coeffs_; }
  [[nodiscard]] const UserRequirements& requirements() const { return requirements_; }
  [[nodiscard]] const LinkBudget& budget() const { return budget_; }
  [[nodiscard]] std::span<const ParticleSet> particle_sets() const { return particle_sets_; }
  [[nodiscard]] std::uint64_t total_messages() const { return total_messages_; }

 private:
  template <class Fn>
  void for_each_agent(Fn&& fn);

  ValidatedConfig config_;
  EngineOptions options_;
  RngStream root_;
  ArCoefficients coeffs_;
  ChannelTensor channel_;
  UserRequirements requirements_;
  LinkBudget budget_;
  std::vector<ParticleSet> particle_sets_;

  AllocationMatrix broadcast_selection_;
  PowerMatrix broadcast_power_;
  std::vector<double> broadcast_rewards_;

  int slot_{0};
  std::uint64_t total_messages_{0};
};

[[nodiscard]] RunSummary summarize(const ValidatedConfig& config, std::span<const SlotRecord> records);

/// Runs config->n_slots slots.
[[nodiscard]] RunResult run(const ValidatedConfig& config, const EngineOptions& options = {});

struct MetricStats {
  double mean{0.0};
  /// Sample standard deviation; 0 for a single value.
  double std{0.0};
};

[[nodiscard]] MetricStats mean_std(std::span<const double> values);

struct ReplicateSummary {
  std::vector<RunSummary> runs;
  MetricStats avg_throughput_bps;
  MetricStats avg_jain;
  MetricStats total_messages;
};

/// Independent runs of `config` under each seed (config.seed is replaced), up to `jobs` at a time.
[[nodiscard]] ReplicateSummary replicate(const SystemConfig& config, std::span<const std::uint64_t> seeds,
                                         int jobs = 1);

}  // namespace dsapf

#endif
