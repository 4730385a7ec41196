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

#include <dsapf/pfilter.hpp>
#include <dsapf/phy.hpp>
#include <dsapf/powerfill.hpp>

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dsapf {

std::vector<double> ParticleSet::weights() const {
  std::vector<double> out;
  out.reserve(particles.size());
  for (const auto& particle : particles) {
    out.push_back(particle.weight);
  }
  return out;
}

bool ParticleSet::idle() const {
  return std::all_of(particles.begin(), particles.end(), [](const Particle& p) { return p.selection.empty(); });
}

BandSet draw_subset(BandSet pool, int count, RngStream& rng) {
  std::array<int, kMaxBands> bands{};
  int n = 0;
  for (int band : pool) {
    bands[n++] = band;
  }
  count = std::min(count, n);
  BandSet subset;
  // Partial Fisher-Yates: the first `count` slots end up a uniform subset.
  for (int k = 0; k < count; ++k) {
    const int pick = k + rng.uniform_index(n - k);
    std::swap(bands[k], bands[pick]);
    subset.insert(bands[k]);
  }
  return subset;
}

ParticleSet init_particles(int n_particles, int max_bands, BandSet available, RngStream& rng) {
  ParticleSet set;
  set.particles.reserve(static_cast<std::size_t>(n_particles));
  const double weight = 1.0 / n_particles;
  for (int k = 0; k < n_particles; ++k) {
    set.particles.push_back({draw_subset(available, max_bands, rng), weight});
  }
  return set;
}

void predict(ParticleSet& set, BandSet available, int max_bands, double mutation_prob, RngStream& rng) {
  const int target = std::min(max_bands, available.size());
  for (auto& particle : set.particles) {
    BandSet kept = particle.selection & available;
    for (int band : kept) {
      if (rng.bernoulli(mutation_prob)) {
        kept.erase(band);
      }
    }
    while (kept.size() > target) {
      kept.erase(kept.nth(rng.uniform_index(kept.size())));
    }
    particle.selection = kept | draw_subset(available.without(kept), target - kept.size(), rng);
  }
}

NeighborView::NeighborView(AllocationMatrix previous_selection, PowerMatrix previous_power,
                           std::vector<double> previous_rewards, GainTensor predicted_gains, BandSet available,
                           std::vector<double> rate_thresholds, LinkBudget budget)
    : previous_selection_{std::move(previous_selection)},
      previous_power_{std::move(previous_power)},
      previous_rewards_{std::move(previous_rewards)},
      predicted_gains_{std::move(predicted_gains)},
      available_{available},
      rate_thresholds_{std::move(rate_thresholds)},
      budget_{budget} {
  const int n = n_users();
  const int m = n_bands();
  assert(previous_power_.n_users() == n && previous_power_.n_bands() == m);
  assert(predicted_gains_.n_users() == n && predicted_gains_.n_bands() == m);
  assert(static_cast<int>(rate_thresholds_.size()) == n);

  occupants_.assign(static_cast<std::size_t>(m), {});
  for (int k = 0; k < n; ++k) {
    for (int band : previous_selection_.row(k) & available_) {
      occupants_[band].push_back(k);
    }
  }

  interference_.assign(static_cast<std::size_t>(n) * m, 0.0);
  for (int band = 0; band < m; ++band) {
    for (int tx : occupants_[band]) {
      const double p = previous_power_.at(tx, band);
      for (int rx = 0; rx < n; ++rx) {
        if (rx != tx) {
          interference_[static_cast<std::size_t>(rx) * m + band] += p * predicted_gains_.at(rx, tx, band);
        }
      }
    }
  }

  baseline_terms_.assign(static_cast<std::size_t>(n) * m, 0.0);
  baseline_rates_.assign(static_cast<std::size_t>(n), 0.0);
  baseline_rewards_.assign(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    for (int band : previous_selection_.row(k) & available_) {
      const double term =
          band_rate(previous_power_.at(k, band) * predicted_gains_.at(k, k, band), interference(k, band));
      baseline_terms_[static_cast<std::size_t>(k) * m + band] = term;
      baseline_rates_[k] += term;
    }
    baseline_rewards_[k] = elastic_reward(baseline_rates_[k], rate_thresholds_[k], budget_.beta);
  }
}

double NeighborView::band_rate(double signal, double interference) const {
  return budget_.bandwidth_hz * std::log2(1.0 + signal / (std::max(interference, 0.0) + budget_.noise_band_w));
}

std::vector<double> NeighborView::solve_power(int user, BandSet selection, PowerRule rule) const {
  const auto usable = selection & available_;
  WaterFillProblem problem;
  problem.p_total = budget_.p_total_w;
  for (int band : usable) {
    problem.effective_gains.push_back(predicted_gains_.at(user, user, band) /
                                      (interference(user, band) + budget_.noise_band_w));
    problem.p_caps.push_back(budget_.p_band_cap_w);
  }
  const auto split = rule == PowerRule::kWaterFill ? water_fill(problem) : uniform_split(problem);
  std::vector<double> power(static_cast<std::size_t>(n_bands()), 0.0);
  std::size_t next = 0;
  for (int band : usable) {
    power[band] = split[next++];
  }
  return power;
}

double NeighborView::self_rate(int user, BandSet selection, std::span<const double> power) const {
  double rate = 0.0;
  for (int band : selection & available_) {
    rate += band_rate(power[band] * predicted_gains_.at(user, user, band), interference(user, band));
  }
  return rate;
}

std::vector<double> NeighborView::hypothetical_rewards(int user, BandSet selection,
                                                       std::span<const double> power) const {
  const int m = n_bands();
  std::vector<double> rewards = baseline_rewards_;
  rewards[user] = elastic_reward(self_rate(user, selection, power), rate_thresholds_[user], budget_.beta);

  const BandSet old_bands = previous_selection_.row(user) & available_;
  const BandSet new_bands = selection & available_;

  std::vector<std::pair<int, double>> deltas;
  for (int band : old_bands | new_bands) {
    const double old_p = old_bands.contains(band) ? previous_power_.at(user, band) : 0.0;
    const double new_p = new_bands.contains(band) ? power[band] : 0.0;
    if (old_p == new_p) {
      continue;
    }
    for (int k : occupants_[band]) {
      if (k == user) {
        continue;
      }
      const double cross = predicted_gains_.at(k, user, band);
      const double shifted = interference(k, band) + (new_p - old_p) * cross;
      const double term = band_rate(previous_power_.at(k, band) * predicted_gains_.at(k, k, band), shifted);
      const double delta = term - baseline_terms_[static_cast<std::size_t>(k) * m + band];
      auto it = std::find_if(deltas.begin(), deltas.end(), [k](const auto& d) { return d.first == k; });
      if (it == deltas.end()) {
        deltas.emplace_back(k, delta);
      } else {
        it->second += delta;
      }
    }
  }
  for (const auto& [k, delta] : deltas) {
    rewards[k] = elastic_reward(std::max(0.0, baseline_rates_[k] + delta), rate_thresholds_[k], budget_.beta);
  }
  return rewards;
}

Decision decide(const ParticleSet& set, const NeighborView& view, int self, ObjectiveKind objective,
                PowerRule power_rule) {
  Decision decision;
  decision.scores.resize(set.size());
  decision.self_rewards.resize(set.size());
  decision.power_w.assign(static_cast<std::size_t>(view.n_bands()), 0.0);

  struct Evaluated {
    BandSet selection;
    double score;
    double self_reward;
    std::vector<double> power;
  };
  // Resampled sets hold many copies of few selections; score each once.
  std::vector<Evaluated> cache;

  const auto thresholds = view.rate_thresholds();
  const double beta = view.budget().beta;
  for (std::size_t p = 0; p < set.size(); ++p) {
    const BandSet selection = set.particles[p].selection;
    auto it = std::find_if(cache.begin(), cache.end(), [selection](const Evaluated& e) {
      return e.selection == selection;
    });
    if (it == cache.end()) {
      Evaluated e{selection, 0.0, 0.0, view.solve_power(self, selection, power_rule)};
      if (objective == ObjectiveKind::kIntrinsic) {
        e.self_reward = elastic_reward(view.self_rate(self, selection, e.power), thresholds[self], beta);
        e.score = e.self_reward;
      } else {
        const auto rewards = view.hypothetical_rewards(self, selection, e.power);
        e.self_reward = rewards[self];
        e.score = evaluate(objective, rewards, self);
      }
      cache.push_back(std::move(e));
      it = std::prev(cache.end());
    }
    decision.scores[p] = it->score;
    decision.self_rewards[p] = it->self_reward;
    if (decision.particle < 0 || it->score > decision.scores[static_cast<std::size_t>(decision.particle)]) {
      decision.particle = static_cast<int>(p);
      decision.selection = selection;
      decision.power_w = it->power;
    }
  }
  return decision;
}

void update_weights(ParticleSet& set, double observed_reward, std::span<const double> predicted_rewards,
                    double sigma_r) {
  if (!(sigma_r > 0.0)) {
    throw std::invalid_argument{"update_weights: sigma_r must be positive"};
  }
  if (predicted_rewards.size() != set.size()) {
    throw std::invalid_argument{"update_weights: one predicted reward per particle is required"};
  }
  const double inv_two_var = 1.0 / (2.0 * sigma_r * sigma_r);
  double total = 0.0;
  for (std::size_t k = 0; k < set.size(); ++k) {
    const double residual = observed_reward - predicted_rewards[k];
    set.particles[k].weight *= std::exp(-residual * residual * inv_two_var);
    total += set.particles[k].weight;
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    const double uniform = 1.0 / static_cast<double>(set.size());
    for (auto& particle : set.particles) {
      particle.weight = uniform;
    }
    return;
  }
  for (auto& particle : set.particles) {
    particle.weight /= total;
  }
}

double effective_sample_size(std::span<const double> weights) {
  const double sum_sq = std::accumulate(weights.begin(), weights.end(), 0.0,
                                        [](double acc, double w) { return acc + w * w; });
  return sum_sq > 0.0 ? 1.0 / sum_sq : 0.0;
}

double effective_sample_size(const ParticleSet& set) {
  const auto w = set.weights();
  return effective_sample_size(std::span<const double>{w});
}

void systematic_resample(ParticleSet& set, RngStream& rng) {
  const auto n = set.size();
  if (n == 0) {
    return;
  }
  const double stride = 1.0 / static_cast<double>(n);
  const double offset = rng.uniform() * stride;

  std::vector<Particle> offspring;
  offspring.reserve(n);
  std::size_t parent = 0;
  double cumulative = set.particles[0].weight;
  for (std::size_t k = 0; k < n; ++k) {
    const double position = offset + static_cast<double>(k) * stride;
    while (cumulative < position && parent + 1 < n) {
      ++parent;
      cumulative += set.particles[parent].weight;
    }
    offspring.push_back({set.particles[parent].selection, stride});
  }
  set.particles = std::move(offspring);
}

bool assimilate(ParticleSet& set, double observed_reward, std::span<const double> predicted_rewards,
                const AssimilationParams& params, RngStream& resample_rng) {
  if (!set.has_reward_mean) {
    set.running_reward_mean = observed_reward;
    set.has_reward_mean = true;
  }
  const double sigma_r = params.likelihood_sigma_frac * set.running_reward_mean;
  set.running_reward_mean += kRewardMeanSmoothing * (observed_reward - set.running_reward_mean);
  if (!(sigma_r > 0.0)) {
    return false;
  }
  update_weights(set, observed_reward, predicted_rewards, sigma_r);
  if (effective_sample_size(set) < params.ess_threshold_frac * static_cast<double>(set.size())) {
    systematic_resample(set, resample_rng);
    return true;
  }
  return false;
}

}  // namespace dsapf
