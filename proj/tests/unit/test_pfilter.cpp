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

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <map>

namespace dsapf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Pearson statistic of subset frequencies against a uniform law over C(10, 2) = 45 subsets.
double pair_chi_square(const std::map<std::uint64_t, int>& counts, int draws) {
  const double expected = draws / 45.0;
  double chi2 = 0.0;
  int seen = 0;
  for (const auto& [mask, count] : counts) {
    chi2 += (count - expected) * (count - expected) / expected;
    ++seen;
  }
  return chi2 + (45 - seen) * expected;
}

LinkBudget unit_budget() {
  return {1.0, 1.0, 1.0, kInf, 0.5};
}

TEST(InitParticles, EqualWeights) {
  RngStream rng{1};
  const auto set = init_particles(4, 1, BandSet::all(5), rng);
  EXPECT_EQ(set.weights(), (std::vector<double>{0.25, 0.25, 0.25, 0.25}));
}

TEST(InitParticles, ForcedSubset) {
  RngStream rng{2};
  const auto set = init_particles(16, 3, BandSet::all(3), rng);
  for (const auto& particle : set.particles) {
    EXPECT_EQ(particle.selection, BandSet::all(3));
  }
}

TEST(InitParticles, NoAvailableBandIsIdle) {
  RngStream rng{3};
  EXPECT_TRUE(init_particles(5, 2, BandSet{}, rng).idle());
}

TEST(InitParticles, UniformOverPairs) {
  RngStream rng{4};
  constexpr int kDraws = 10000;
  std::map<std::uint64_t, int> counts;
  const auto set = init_particles(kDraws, 2, BandSet::all(10), rng);
  for (const auto& particle : set.particles) {
    ASSERT_EQ(particle.selection.size(), 2);
    ++counts[particle.selection.mask()];
  }
  EXPECT_EQ(counts.size(), 45U);
  const double p = 1.0 / 45.0;
  const double sigma = std::sqrt(kDraws * p * (1.0 - p));
  for (const auto& [mask, count] : counts) {
    EXPECT_NEAR(count, kDraws * p, 3.0 * sigma) << "mask " << mask;
  }
  // 44 degrees of freedom; 99.9th percentile is about 78.7.
  EXPECT_LT(pair_chi_square(counts, kDraws), 78.7);
}

TEST(Predict, FrozenKernel) {
  RngStream rng{5};
  auto set = init_particles(20, 2, BandSet::all(6), rng);
  const auto before = set.particles;
  predict(set, BandSet::all(6), 2, 0.0, rng);
  for (std::size_t k = 0; k < before.size(); ++k) {
    EXPECT_EQ(set.particles[k].selection, before[k].selection);
    EXPECT_EQ(set.particles[k].weight, before[k].weight);
  }
}

TEST(Predict, FullResetIsFreshDraw) {
  RngStream rng{6};
  constexpr int kDraws = 10000;
  ParticleSet set;
  set.particles.assign(kDraws, Particle{BandSet::from_mask(0b11), 1.0 / kDraws});
  predict(set, BandSet::all(10), 2, 1.0, rng);
  std::map<std::uint64_t, int> counts;
  for (const auto& particle : set.particles) {
    ASSERT_EQ(particle.selection.size(), 2);
    ++counts[particle.selection.mask()];
  }
  EXPECT_LT(pair_chi_square(counts, kDraws), 78.7);
}

TEST(Predict, DeadBandsNeverKept) {
  RngStream rng{7};
  auto set = init_particles(10, 3, BandSet::all(8), rng);
  for (int t = 0; t < 1000; ++t) {
    const auto available = BandSet::from_mask(static_cast<std::uint64_t>(rng.uniform_index(256)));
    predict(set, available, 3, 0.2, rng);
    for (const auto& particle : set.particles) {
      ASSERT_TRUE(particle.selection.is_subset_of(available));
      ASSERT_EQ(particle.selection.size(), std::min(3, available.size()));
    }
  }
}

TEST(Decide, PrefersStrongerBand) {
  AllocationMatrix previous{1, 2};
  GainTensor gains{1, 2};
  gains.at(0, 0, 0) = 2.0;
  gains.at(0, 0, 1) = 1.0;
  const NeighborView view{previous, PowerMatrix{1, 2}, {0.0}, gains, BandSet::all(2), {0.0}, unit_budget()};
  ParticleSet set;
  set.particles = {{BandSet::from_mask(0b10), 0.5}, {BandSet::from_mask(0b01), 0.5}};
  const auto decision = decide(set, view, 0, ObjectiveKind::kIntrinsic);
  EXPECT_EQ(decision.selection, BandSet::from_mask(0b01));
  EXPECT_EQ(decision.particle, 1);
  EXPECT_NEAR(decision.power_w[0], 1.0, 1e-9);
  EXPECT_EQ(decision.power_w[1], 0.0);
}

TEST(Decide, FirstMaximumWins) {
  AllocationMatrix previous{1, 3};
  GainTensor gains{1, 3};
  // Rates log2(1 + g) with g = 7, 127, 127 give scores 3, 7, 7.
  gains.at(0, 0, 0) = 7.0;
  gains.at(0, 0, 1) = 127.0;
  gains.at(0, 0, 2) = 127.0;
  const NeighborView view{previous, PowerMatrix{1, 3}, {0.0}, gains, BandSet::all(3), {0.0}, unit_budget()};
  ParticleSet set;
  set.particles = {{BandSet::from_mask(0b001), 1.0 / 3}, {BandSet::from_mask(0b010), 1.0 / 3},
                   {BandSet::from_mask(0b100), 1.0 / 3}};
  const auto decision = decide(set, view, 0, ObjectiveKind::kIntrinsic);
  EXPECT_NEAR(decision.scores[0], 3.0, 1e-9);
  EXPECT_NEAR(decision.scores[1], 7.0, 1e-9);
  EXPECT_EQ(decision.scores[1], decision.scores[2]);
  EXPECT_EQ(decision.particle, 1);
}

TEST(Decide, AvoidsCollisionUnderSum) {
  AllocationMatrix previous{2, 2};
  previous.set_row(1, BandSet::from_mask(0b01));
  PowerMatrix power{2, 2};
  power.at(1, 0) = 1.0;
  GainTensor gains{2, 2};
  for (int band = 0; band < 2; ++band) {
    gains.at(0, 0, band) = gains.at(1, 1, band) = 10.0;
    gains.at(0, 1, band) = gains.at(1, 0, band) = 5.0;
  }
  const NeighborView view{previous, power, {0.0, 0.0}, gains, BandSet::all(2), {0.0, 0.0}, unit_budget()};
  ParticleSet set;
  set.particles = {{BandSet::from_mask(0b01), 0.5}, {BandSet::from_mask(0b10), 0.5}};
  const auto decision = decide(set, view, 0, ObjectiveKind::kSum);

  for (int p = 0; p < 2; ++p) {
    AllocationMatrix alloc = previous;
    alloc.set_row(0, set.particles[static_cast<std::size_t>(p)].selection);
    PowerMatrix joint = power;
    joint.at(0, p) = 1.0;
    const auto rates = testing::brute_force_rates(alloc, joint, gains, BandSet::all(2), 1.0, 1.0);
    EXPECT_NEAR(decision.scores[static_cast<std::size_t>(p)], rates[0] + rates[1], 1e-9);
  }
  EXPECT_LT(decision.scores[0], decision.scores[1]);
  EXPECT_EQ(decision.selection, BandSet::from_mask(0b10));
}

TEST(Decide, AllIdleGivesEmptySelection) {
  const NeighborView view{AllocationMatrix{1, 2}, PowerMatrix{1, 2}, {0.0}, GainTensor{1, 2}, BandSet{}, {0.0},
                          unit_budget()};
  ParticleSet set;
  set.particles = {{BandSet{}, 0.5}, {BandSet{}, 0.5}};
  EXPECT_TRUE(decide(set, view, 0, ObjectiveKind::kSum).selection.empty());
}

TEST(HypotheticalRewards, MatchesDirectRecomputation) {
  RngStream rng{8};
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + rng.uniform_index(4);
    const int m = 1 + rng.uniform_index(4);
    AllocationMatrix previous{n, m};
    PowerMatrix power{n, m};
    GainTensor gains{n, m};
    std::vector<double> thresholds(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      previous.set_row(i, BandSet::from_mask(static_cast<std::uint64_t>(rng.uniform_index(1 << m))));
      for (int j : previous.row(i)) {
        power.at(i, j) = rng.uniform(0.0, 1.0);
      }
      for (int k = 0; k < n; ++k) {
        for (int j = 0; j < m; ++j) {
          gains.at(i, k, j) = rng.uniform(0.0, 2.0);
        }
      }
      thresholds[static_cast<std::size_t>(i)] = rng.uniform(0.0, 3.0);
    }
    const auto available = BandSet::from_mask(static_cast<std::uint64_t>(rng.uniform_index(1 << m)));
    const LinkBudget budget{1.0, 0.1, 1.0, kInf, 0.5};
    const NeighborView view{previous, power, std::vector<double>(static_cast<std::size_t>(n), 0.0), gains,
                            available, thresholds, budget};
    const int self = rng.uniform_index(n);
    const auto selection = BandSet::from_mask(static_cast<std::uint64_t>(rng.uniform_index(1 << m)));
    const auto own = view.solve_power(self, selection, PowerRule::kWaterFill);

    AllocationMatrix alloc = previous;
    alloc.set_row(self, selection);
    PowerMatrix joint = power;
    for (int j = 0; j < m; ++j) {
      joint.at(self, j) = selection.contains(j) ? own[static_cast<std::size_t>(j)] : 0.0;
    }
    const auto rates = testing::brute_force_rates(alloc, joint, gains, available, 1.0, 0.1);
    const auto rewards = view.hypothetical_rewards(self, selection, own);
    for (int i = 0; i < n; ++i) {
      const double expected = elastic_reward(rates[static_cast<std::size_t>(i)],
                                             thresholds[static_cast<std::size_t>(i)], 0.5);
      EXPECT_NEAR(rewards[static_cast<std::size_t>(i)], expected, 1e-9 * std::max(1.0, expected));
    }
  }
}

TEST(UpdateWeights, ZeroResidualIsMaximal) {
  ParticleSet set;
  set.particles = {{BandSet::from_mask(1), 0.5}, {BandSet::from_mask(2), 0.5}};
  const std::vector<double> predicted{4.0, 1.0};
  update_weights(set, 4.0, predicted, 1.0);
  EXPECT_GT(set.particles[0].weight, set.particles[1].weight);
}

TEST(UpdateWeights, KernelRatio) {
  ParticleSet set;
  set.particles = {{BandSet::from_mask(1), 0.5}, {BandSet::from_mask(2), 0.5}};
  const double sigma = 0.7;
  const std::vector<double> predicted{3.0, 3.0 + sigma};
  update_weights(set, 3.0, predicted, sigma);
  const double tail = std::exp(-0.5);
  EXPECT_NEAR(set.particles[0].weight, 1.0 / (1.0 + tail), 1e-12);
  EXPECT_NEAR(set.particles[1].weight, tail / (1.0 + tail), 1e-12);
  EXPECT_NEAR(set.particles[0].weight, 0.6225, 1e-4);
}

TEST(UpdateWeights, UnderflowResetsToUniform) {
  ParticleSet set;
  set.particles = {{BandSet::from_mask(1), 0.9}, {BandSet::from_mask(2), 0.1}};
  const std::vector<double> predicted{1e6, 2e6};
  update_weights(set, 0.0, predicted, 1.0);
  EXPECT_EQ(set.weights(), (std::vector<double>{0.5, 0.5}));
}

TEST(UpdateWeights, RejectsBadArguments) {
  ParticleSet set;
  set.particles = {{BandSet::from_mask(1), 1.0}};
  const std::vector<double> one{1.0};
  const std::vector<double> two{1.0, 2.0};
  EXPECT_THROW(update_weights(set, 1.0, one, 0.0), std::invalid_argument);
  EXPECT_THROW(update_weights(set, 1.0, two, 1.0), std::invalid_argument);
}

TEST(EffectiveSampleSize, Examples) {
  const std::vector<double> uniform(7, 1.0 / 7.0);
  EXPECT_NEAR(effective_sample_size(uniform), 7.0, 1e-12);
  EXPECT_EQ(effective_sample_size(std::vector<double>{1.0, 0.0, 0.0}), 1.0);
  EXPECT_NEAR(effective_sample_size(std::vector<double>{0.5, 0.25, 0.25}), 8.0 / 3.0, 1e-12);
}

ParticleSet labeled(const std::vector<double>& weights) {
  ParticleSet set;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    set.particles.push_back({BandSet::from_mask(std::uint64_t{1} << k), weights[k]});
  }
  return set;
}

std::vector<int> offspring(const ParticleSet& set, std::size_t parents) {
  std::vector<int> counts(parents, 0);
  for (const auto& particle : set.particles) {
    ++counts[static_cast<std::size_t>(particle.selection.nth(0))];
  }
  return counts;
}

TEST(SystematicResample, PointMass) {
  RngStream rng{9};
  auto set = labeled({1.0, 0.0, 0.0});
  systematic_resample(set, rng);
  EXPECT_EQ(offspring(set, 3), (std::vector<int>{3, 0, 0}));
  for (const auto& particle : set.particles) {
    EXPECT_NEAR(particle.weight, 1.0 / 3.0, 1e-15);
  }
}

TEST(SystematicResample, UniformKeepsEveryParent) {
  RngStream rng{10};
  for (int trial = 0; trial < 100; ++trial) {
    auto set = labeled(std::vector<double>(8, 0.125));
    systematic_resample(set, rng);
    EXPECT_EQ(offspring(set, 8), std::vector<int>(8, 1));
  }
}

TEST(SystematicResample, MeanOffspringCounts) {
  RngStream rng{11};
  std::vector<double> weights{0.5, 0.3, 0.2};
  weights.resize(10, 0.0);
  std::vector<double> mean(3, 0.0);
  constexpr int kTrials = 10000;
  for (int trial = 0; trial < kTrials; ++trial) {
    auto set = labeled(weights);
    systematic_resample(set, rng);
    const auto counts = offspring(set, 10);
    for (std::size_t k = 0; k < 3; ++k) {
      mean[k] += counts[k] / static_cast<double>(kTrials);
    }
  }
  EXPECT_NEAR(mean[0], 5.0, 0.05);
  EXPECT_NEAR(mean[1], 3.0, 0.05);
  EXPECT_NEAR(mean[2], 2.0, 0.05);
}

TEST(Assimilate, ResamplesOnlyBelowThreshold) {
  RngStream rng{12};
  auto set = labeled({0.25, 0.25, 0.25, 0.25});
  const AssimilationParams params{0.25, 0.5};
  const std::vector<double> close{10.0, 10.0, 10.0, 10.0};
  EXPECT_FALSE(assimilate(set, 10.0, close, params, rng));
  const std::vector<double> spread{10.0, 40.0, 40.0, 40.0};
  EXPECT_TRUE(assimilate(set, 10.0, spread, params, rng));
  EXPECT_EQ(offspring(set, 4), (std::vector<int>{4, 0, 0, 0}));
}

TEST(Assimilate, SkipsWhileMeanRewardIsZero) {
  RngStream rng{13};
  auto set = labeled({0.5, 0.5});
  const std::vector<double> predicted{0.0, 5.0};
  EXPECT_FALSE(assimilate(set, 0.0, predicted, {}, rng));
  EXPECT_EQ(set.weights(), (std::vector<double>{0.5, 0.5}));
}

}  // namespace
}  // namespace dsapf
