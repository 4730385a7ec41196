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

namespace dsapf {

RngStream derive_substream(const RngStream& parent, StreamTag tag) {
  auto key = mix64(parent.key() ^ 0x5851f42d4c957f2dULL);
  key = mix64(key ^ static_cast<std::uint64_t>(tag.module));
  key = mix64(key ^ tag.agent);
  key = mix64(key ^ tag.slot);
  return RngStream{RngStream::FromKey{}, key};
}

}  // namespace dsapf
