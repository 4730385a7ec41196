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

#include <dsapf/rng.hpp>

#include <gtest/gtest.h>

#include <array>

namespace dsapf {
namespace {

TEST(RngStream, SameSeedSameStream) {
  RngStream a{5};
  RngStream b{5};
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a(), b());
  }
}

TEST(RngStream, DifferentSeedsDiffer) {
  RngStream a{5};
  RngStream b{6};
  int equal = 0;
  for (int i = 0; i < 100; ++i) {
    equal += a() == b();
  }
  EXPECT_EQ(equal, 0);
}

TEST(DeriveSubstream, DependsOnlyOnParentKeyAndTag) {
  RngStream parent{42};
  const StreamTag tag{StreamModule::kParticlePredict, 3, 17};
  auto first = derive_substream(parent, tag);
  for (int i = 0; i < 50; ++i) {
    (void)parent();
  }
  auto second = derive_substream(parent, tag);
  for (int i = 0; i < 100; ++i) {
    ASSERT_EQ(first(), second());
  }
}

TEST(DeriveSubstream, TagsAreDistinct) {
  RngStream parent{42};
  const std::array<StreamTag, 4> tags{StreamTag{StreamModule::kParticlePredict, 3, 17},
                                      StreamTag{StreamModule::kParticlePredict, 17, 3},
                                      StreamTag{StreamModule::kParticleResample, 3, 17},
                                      StreamTag{StreamModule::kParticlePredict, 3, 18}};
  for (std::size_t a = 0; a < tags.size(); ++a) {
    for (std::size_t b = a + 1; b < tags.size(); ++b) {
      EXPECT_NE(derive_substream(parent, tags[a]).key(), derive_substream(parent, tags[b]).key());
    }
  }
}

// Pearson chi-square on a 16 x 16 contingency table of paired draws from two sibling streams.
TEST(DeriveSubstream, SiblingStreamsLookIndependent) {
  RngStream parent{2718};
  auto x = derive_substream(parent, {StreamModule::kChannelStep, 0, 1});
  auto y = derive_substream(parent, {StreamModule::kChannelStep, 0, 2});
  constexpr int kCells = 16;
  constexpr int kDraws = 100000;
  std::array<std::array<double, kCells>, kCells> table{};
  for (int i = 0; i < kDraws; ++i) {
    table[x.uniform_index(kCells)][y.uniform_index(kCells)] += 1.0;
  }
  const double expected = static_cast<double>(kDraws) / (kCells * kCells);
  double chi2 = 0.0;
  for (const auto& row : table) {
    for (double count : row) {
      chi2 += (count - expected) * (count - expected) / expected;
    }
  }
  // 255 degrees of freedom; 99.9th percentile is about 330.
  EXPECT_LT(chi2, 330.0);
}

TEST(RngStream, UniformIndexCoversRange) {
  RngStream rng{1};
  std::array<int, 7> seen{};
  for (int i = 0; i < 7000; ++i) {
    ++seen[static_cast<std::size_t>(rng.uniform_index(7))];
  }
  for (int count : seen) {
    EXPECT_GT(count, 850);
    EXPECT_LT(count, 1150);
  }
}

}  // namespace
}  // namespace dsapf
