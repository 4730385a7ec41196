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

#include <dsapf/types.hpp>

#include <numeric>
#include <ostream>

namespace dsapf {

int BandSet::nth(int k) const {
  assert(k >= 0 && k < size());
  auto rest = mask_;
  for (int skipped = 0; skipped < k; ++skipped) {
    rest &= rest - 1;
  }
  return std::countr_zero(rest);
}

std::vector<int> BandSet::to_vector() const {
  return {begin(), end()};
}

std::ostream& operator<<(std::ostream& os, BandSet set) {
  os << '{';
  bool first = true;
  for (int band : set) {
    os << (first ? "" : ",") << band;
    first = false;
  }
  return os << '}';
}

double PowerMatrix::row_total(int user) const {
  const auto values = row(user);
  return std::accumulate(values.begin(), values.end(), 0.0);
}

}  // namespace dsapf
