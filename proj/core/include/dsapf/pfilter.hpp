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

#ifndef DSAPF_PFILTER_HPP
#define DSAPF_PFILTER_HPP

#include <dsapf/objectives.hpp>
#include <dsapf/rng.hpp>
#include <dsapf/types.hpp>

#include <span>
#include <vector>

/**
 * \file
 * \brief Per-agent particle filter over the agent's own band selection.
 *
 * Each particle is a candidate row of the allocation matrix. Per slot the
 * agent (1) moves every particle through a mutation kernel restricted to the
 * currently free bands, (2) scores every particle by the objective evaluated on
 * hypothetical rewards of all users, computed from last slot's broadcasts and
 * the predicted channel, and transmits on the best particle, then (3) reweights
 * particles by how well their predicted self-reward explains the realized one,
 * resampling when the effective sample size collapses.
 */

namespace dsapf {

struct Particle {
  BandSet selection;
  double weight{0.0};
};

struct ParticleSet {
  std::vector<Particle> particles;
  /// Exponentially smoothed observed reward, scales the likelihood width.
  double running_reward_mean{0.0};
  bool has_reward_mean{false};

  [[nodiscard]] std::size_t size() const { return particles.size(); }
  [[nodiscard]] std::vector<double> weights() const;
  /// True when no particle selects a band (no band was available).
  [[nodiscard]] bool idle() const;
};

/// Smoothing factor applied to running_reward_mean per observation.
inline constexpr double kRewardMeanSmoothing = 0.1;

/// Uniformly random `count`-subset of `pool` (all of `pool` when count >= its size).
[[nodiscard]] BandSet draw_subset(BandSet pool, int count, RngStream& rng);

/// `n_particles` selections drawn uniformly over the min(max_bands, |available|)-subsets of `available`.
[[nodiscard]] ParticleSet init_particles(int n_particles, int max_bands, BandSet available, RngStream& rng);

/// Transition kernel.
/**
 * Bands that became unavailable are dropped, each remaining band is dropped
 * with probability `mutation_prob`, and the selection is refilled to
 * min(max_bands, |available|) bands drawn uniformly from the free bands it
 * does not already hold. Weights are untouched.
 */
void predict(ParticleSet& set, BandSet available, int max_bands, double mutation_prob, RngStream& rng);

/// Physical constants an agent needs to turn a selection into rates.
struct LinkBudget {
  double bandwidth_hz{0.0};
  double noise_band_w{0.0};
  double p_total_w{0.0};
  double p_band_cap_w{0.0};
  double beta{0.0};
};

enum class PowerRule { kWaterFill, kUniform };

/// Read-only snapshot of the previous slot's broadcasts plus the predicted channel for this slot.
/**
 * Built once per slot and shared by all agents. Other users are assumed to
 * keep their previous selections and powers; their transmissions on bands
 * that are busy this slot are ignored.
 */
class NeighborView {
 public:
  NeighborView(AllocationMatrix previous_selection, PowerMatrix previous_power, std::vector<double> previous_rewards,
               GainTensor predicted_gains, BandSet available, std::vector<double> rate_thresholds,
               LinkBudget budget);

  [[nodiscard]] int n_users() const { return previous_selection_.n_users(); }
  [[nodiscard]] int n_bands() const { return previous_selection_.n_bands(); }
  [[nodiscard]] const AllocationMatrix& previous_selection() const { return previous_selection_; }
  [[nodiscard]] const PowerMatrix& previous_power() const { return previous_power_; }
  [[nodiscard]] std::span<const double> previous_rewards() const { return previous_rewards_; }
  [[nodiscard]] const GainTensor& predicted_gains() const { return predicted_gains_; }
  [[nodiscard]] BandSet available() const { return available_; }
  [[nodiscard]] std::span<const double> rate_thresholds() const { return rate_thresholds_; }
  [[nodiscard]] const LinkBudget& budget() const { return budget_; }

  /// Predicted interference at `user` on `band` from every other user's previous transmission.
  [[nodiscard]] double interference(int user, int band) const {
    return interference_[static_cast<std::size_t>(user) * n_bands() + band];
  }
  /// Predicted reward of every user if nobody changes selection.
  [[nodiscard]] std::span<const double> baseline_rewards() const { return baseline_rewards_; }

  /// Powers `user` would put on `selection` (length n_bands, zero off the selection).
  [[nodiscard]] std::vector<double> solve_power(int user, BandSet selection, PowerRule rule) const;

  /// Predicted reward of every user when `user` alone switches to (`selection`, `power`).
  [[nodiscard]] std::vector<double> hypothetical_rewards(int user, BandSet selection,
                                                         std::span<const double> power) const;

  /// Predicted rate of `user` on (`selection`, `power`) against the previous transmissions of the others.
  [[nodiscard]] double self_rate(int user, BandSet selection, std::span<const double> power) const;

 private:
  [[nodiscard]] double band_rate(double signal, double interference) const;

  AllocationMatrix previous_selection_;
  PowerMatrix previous_power_;
  std::vector<double> previous_rewards_;
  GainTensor predicted_gains_;
  BandSet available_;
  std::vector<double> rate_thresholds_;
  LinkBudget budget_;

  std::vector<double> interference_;
  /// Per (user, band) rate term under the unchanged previous allocation.
  std::vector<double> baseline_terms_;
  std::vector<double> baseline_rates_;
  std::vector<double> baseline_rewards_;
  /// Users whose previous selection includes the band, per available band.
  std::vector<std::vector<int>> occupants_;
};

struct Decision {
  BandSet selection;
  /// Length n_bands, zero off the selection.
  std::vector<double> power_w;
  int particle{-1};
  /// Objective value of each particle.
  std::vector<double> scores;
  /// Predicted own reward of each particle, used by the weight update.
  std::vector<double> self_rewards;
};

/// Scores every particle and returns the first one with the highest score.
[[nodiscard]] Decision decide(const ParticleSet& set, const NeighborView& view, int self, ObjectiveKind objective,
                              PowerRule power_rule = PowerRule::kWaterFill);

/// Multiplies each weight by exp(-(observed - predicted_k)^2 / (2 sigma^2)) and renormalizes.
/**
 * If every factor underflows the weights are reset to uniform.
 * \throws std::invalid_argument if sigma_r <= 0 or the sizes disagree.
 */
void update_weights(ParticleSet& set, double observed_reward, std::span<const double> predicted_rewards,
                    double sigma_r);

/// 1 / sum w^2 of normalized weights.
[[nodiscard]] double effective_sample_size(std::span<const double> weights);
[[nodiscard]] double effective_sample_size(const ParticleSet& set);

/// Systematic resampling: one uniform offset, stride 1/N over the cumulative weights.
void systematic_resample(ParticleSet& set, RngStream& rng);

/// Filtering parameters of the post-transmission update.
struct AssimilationParams {
  double likelihood_sigma_frac{0.25};
  double ess_threshold_frac{0.5};
};

/// Weight update, normalization and conditional resampling after one observed reward.
/**
 * sigma_r is likelihood_sigma_frac times the running mean reward (seeded
 * with the first observation). The update is skipped while that mean is zero.
 * Returns true if the set was resampled.
 */
bool assimilate(ParticleSet& set, double observed_reward, std::span<const double> predicted_rewards,
                const AssimilationParams& params, RngStream& resample_rng);

}  // namespace dsapf

#endif
