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

#include "properties.hpp"

#include <gtest/gtest.h>

namespace dsapf::testing {
namespace {

TEST(Properties, WeightSimplex) {
  const auto result = check_weight_simplex(2000);
  EXPECT_TRUE(result.pass) << result.detail;
}

TEST(Properties, ResampleUnbiased) {
  const auto result = check_resample_unbiased(20000);
  EXPECT_TRUE(result.pass) << result.detail;
}

TEST(Properties, WaterFillOptimal) {
  const auto result = check_water_fill(100);
  EXPECT_TRUE(result.pass) << result.detail;
}

TEST(Properties, ArAutocorrelation) {
  const auto result = check_ar_autocorrelation(10000);
  EXPECT_TRUE(result.pass) << result.detail;
}

TEST(Properties, AvailabilityCompliance) {
  const auto result = check_availability_compliance(1000);
  EXPECT_TRUE(result.pass) << result.detail;
}

TEST(Properties, MessageCount) {
  const auto result = check_message_count();
  EXPECT_TRUE(result.pass) << result.detail;
}

TEST(Properties, BitIdenticalReruns) {
  const auto result = check_bit_identical_reruns();
  EXPECT_TRUE(result.pass) << result.detail;
}

}  // namespace
}  // namespace dsapf::testing
