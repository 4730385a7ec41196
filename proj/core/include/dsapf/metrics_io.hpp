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

#ifndef DSAPF_METRICS_IO_HPP
#define DSAPF_METRICS_IO_HPP

#include <dsapf/engine.hpp>

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace dsapf {

inline constexpr const char* kSlotsFileName = "slots.csv";
inline constexpr const char* kSummaryFileName = "summary.csv";
inline constexpr const char* kSweepFileName = "sweep.csv";

/// One line of slots.csv.
struct SlotRow {
  int slot{0};
  double occupancy{0.0};
  double jain{0.0};
  std::uint64_t messages{0};
  double mean_rate_bps{0.0};
  double min_rate_bps{0.0};
  double max_rate_bps{0.0};

  bool operator==(const SlotRow&) const = default;
};

/// One line of summary.csv.
struct SummaryRow {
  std::uint64_t seed{0};
  std::string objective;
  int n_users{0};
  int n_bands{0};
  int ell{0};
  int n_particles{0};
  double pu_busy_prob{0.0};
  double avg_throughput_bps{0.0};
  double avg_jain{0.0};
  std::uint64_t total_messages{0};

  bool operator==(const SummaryRow&) const = default;
};

[[nodiscard]] SlotRow slot_row(const SlotRecord& record);
[[nodiscard]] SummaryRow summary_row(const RunSummary& summary);

/// Shortest-exact decimal text for a double (17 significant digits).
[[nodiscard]] std::string format_double(double value);

struct RunPaths {
  std::filesystem::path slots;
  std::filesystem::path summary;
};

/// Writes slots.csv and summary.csv into `out_dir`, creating it if needed. Throws IoError.
RunPaths write_run(std::span<const SlotRecord> records, const RunSummary& summary,
                   const std::filesystem::path& out_dir);

[[nodiscard]] std::vector<SlotRow> read_slots_csv(const std::filesystem::path& path);
[[nodiscard]] std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& path);

/// Long-format sweep row.
struct SweepRow {
  std::string parameter;
  std::string value;
  std::string metric;
  double mean{0.0};
  double std{0.0};

  bool operator==(const SweepRow&) const = default;
};

/// Groups runs by the value of `parameter` and reports mean/std of each summary metric.
/**
 * Metrics, in order: avg_throughput_bps, avg_jain, total_messages. Groups
 * are sorted ascending by value, numerically when every value is a number.
 * Throws std::invalid_argument for an unknown parameter, no runs, or runs
 * whose configs differ in any field other than `parameter` and `seed`.
 */
[[nodiscard]] std::vector<SweepRow> sweep_table(const std::string& parameter, std::span<const RunSummary> runs);

void write_sweep_csv(std::span<const SweepRow> rows, const std::filesystem::path& path);
[[nodiscard]] std::vector<SweepRow> read_sweep_csv(const std::filesystem::path& path);

}  // namespace dsapf

#endif
