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

#include <dsapf/metrics_io.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace dsapf {

namespace {

constexpr const char* kSlotsHeader = "slot,occupancy,jain,messages,mean_rate_bps,min_rate_bps,max_rate_bps";
constexpr const char* kSummaryHeader =
    "seed,objective,n_users,n_bands,ell,n_particles,pu_busy_prob,avg_throughput_bps,avg_jain,total_messages";
constexpr const char* kSweepHeader = "parameter,value,metric,mean,std";

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out{path, std::ios::binary | std::ios::trunc};
  if (!out) {
    throw IoError{path.string(), "cannot open for writing"};
  }
  out << content;
  out.flush();
  if (!out) {
    throw IoError{path.string(), "write failed"};
  }
}

std::vector<std::vector<std::string>> read_table(const std::filesystem::path& path, const char* header) {
  std::ifstream in{path, std::ios::binary};
  if (!in) {
    throw IoError{path.string(), "cannot open for reading"};
  }
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw IoError{path.string(), "unexpected header"};
  }
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream stream{line};
    std::string cell;
    while (std::getline(stream, cell, ',')) {
      cells.push_back(cell);
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

template <class T>
T parse_cell(const std::filesystem::path& path, const std::string& cell) {
  T value{};
  const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || end != cell.data() + cell.size()) {
    throw IoError{path.string(), "malformed field '" + cell + "'"};
  }
  return value;
}

void expect_width(const std::filesystem::path& path, const std::vector<std::string>& cells, std::size_t width) {
  if (cells.size() != width) {
    throw IoError{path.string(), "expected " + std::to_string(width) + " fields, got " +
                                     std::to_string(cells.size())};
  }
}

std::optional<double> as_number(const std::string& text) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  char buffer[32];
  const int n = std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return std::string(buffer, static_cast<std::size_t>(n));
}

SlotRow slot_row(const SlotRecord& record) {
  return {record.slot,      record.occupancy, record.jain,    record.messages,
          record.mean_rate(), record.min_rate(), record.max_rate()};
}

SummaryRow summary_row(const RunSummary& summary) {
  const auto& c = summary.config;
  return {summary.seed,        std::string{to_string(c.objective)},
          c.n_users,           c.n_bands,
          c.max_bands_per_user, c.n_particles,
          c.pu_busy_prob,      summary.per_user_avg_throughput_bps,
          summary.avg_jain,    summary.total_messages};
}

RunPaths write_run(std::span<const SlotRecord> records, const RunSummary& summary,
                   const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw IoError{out_dir.string(), "cannot create directory (" + ec.message() + ")"};
  }

  std::string slots = std::string{kSlotsHeader} + "\n";
  for (const auto& record : records) {
    const auto row = slot_row(record);
    slots += std::to_string(row.slot) + "," + format_double(row.occupancy) + "," + format_double(row.jain) + "," +
             std::to_string(row.messages) + "," + format_double(row.mean_rate_bps) + "," +
             format_double(row.min_rate_bps) + "," + format_double(row.max_rate_bps) + "\n";
  }

  const auto row = summary_row(summary);
  std::string summary_text = std::string{kSummaryHeader} + "\n";
  summary_text += std::to_string(row.seed) + "," + row.objective + "," + std::to_string(row.n_users) + "," +
                  std::to_string(row.n_bands) + "," + std::to_string(row.ell) + "," +
                  std::to_string(row.n_particles) + "," + format_double(row.pu_busy_prob) + "," +
                  format_double(row.avg_throughput_bps) + "," + format_double(row.avg_jain) + "," +
                  std::to_string(row.total_messages) + "\n";

  RunPaths paths{out_dir / kSlotsFileName, out_dir / kSummaryFileName};
  write_file(paths.slots, slots);
  write_file(paths.summary, summary_text);
  return paths;
}

std::vector<SlotRow> read_slots_csv(const std::filesystem::path& path) {
  std::vector<SlotRow> rows;
  for (const auto& cells : read_table(path, kSlotsHeader)) {
    expect_width(path, cells, 7);
    rows.push_back({parse_cell<int>(path, cells[0]), parse_cell<double>(path, cells[1]),
                    parse_cell<double>(path, cells[2]), parse_cell<std::uint64_t>(path, cells[3]),
                    parse_cell<double>(path, cells[4]), parse_cell<double>(path, cells[5]),
                    parse_cell<double>(path, cells[6])});
  }
  return rows;
}

std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& path) {
  std::vector<SummaryRow> rows;
  for (const auto& cells : read_table(path, kSummaryHeader)) {
    expect_width(path, cells, 10);
    rows.push_back({parse_cell<std::uint64_t>(path, cells[0]), cells[1], parse_cell<int>(path, cells[2]),
                    parse_cell<int>(path, cells[3]), parse_cell<int>(path, cells[4]),
                    parse_cell<int>(path, cells[5]), parse_cell<double>(path, cells[6]),
                    parse_cell<double>(path, cells[7]), parse_cell<double>(path, cells[8]),
                    parse_cell<std::uint64_t>(path, cells[9])});
  }
  return rows;
}

std::vector<SweepRow> sweep_table(const std::string& parameter, std::span<const RunSummary> runs) {
  const auto* field = find_config_field(parameter);
  if (field == nullptr || parameter == "seed") {
    throw std::invalid_argument{"sweep_table: '" + parameter + "' is not a sweepable field"};
  }
  if (runs.empty()) {
    throw std::invalid_argument{"sweep_table: no runs"};
  }

  // Non-swept fields must agree; compare against the first run with parameter and seed aligned.
  const auto reference_value = field->get(runs.front().config);
  for (const auto& run : runs) {
    SystemConfig aligned = run.config;
    field->set(aligned, reference_value);
    aligned.seed = runs.front().config.seed;
    if (!(aligned == runs.front().config)) {
      for (const auto& other : config_fields()) {
        if (other.get(aligned) != other.get(runs.front().config)) {
          throw std::invalid_argument{"sweep_table: runs differ in non-swept field '" + std::string{other.name} +
                                      "'"};
        }
      }
      throw std::invalid_argument{"sweep_table: runs differ in a non-swept field"};
    }
  }

  std::map<std::string, std::vector<const RunSummary*>> groups;
  std::vector<std::string> order;
  for (const auto& run : runs) {
    auto value = field->get(run.config);
    if (value.find(',') != std::string::npos) {
      throw std::invalid_argument{"sweep_table: '" + parameter + "' values are not representable in one CSV cell"};
    }
    auto [it, inserted] = groups.try_emplace(value);
    if (inserted) {
      order.push_back(value);
    }
    it->second.push_back(&run);
  }
  const bool numeric = std::all_of(order.begin(), order.end(), [](const auto& v) { return as_number(v).has_value(); });
  if (numeric) {
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return *as_number(a) < *as_number(b); });
  } else {
    std::sort(order.begin(), order.end());
  }

  std::vector<SweepRow> rows;
  for (const auto& value : order) {
    const auto& members = groups.at(value);
    std::vector<double> throughput;
    std::vector<double> jain;
    std::vector<double> messages;
    for (const auto* run : members) {
      throughput.push_back(run->per_user_avg_throughput_bps);
      jain.push_back(run->avg_jain);
      messages.push_back(static_cast<double>(run->total_messages));
    }
    const std::pair<const char*, std::vector<double>*> metrics[] = {
        {"avg_throughput_bps", &throughput}, {"avg_jain", &jain}, {"total_messages", &messages}};
    for (const auto& [name, values] : metrics) {
      const auto stats = mean_std(*values);
      rows.push_back({parameter, value, name, stats.mean, stats.std});
    }
  }
  return rows;
}

void write_sweep_csv(std::span<const SweepRow> rows, const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError{path.parent_path().string(), "cannot create directory (" + ec.message() + ")"};
    }
  }
  std::string text = std::string{kSweepHeader} + "\n";
  for (const auto& row : rows) {
    text += row.parameter + "," + row.value + "," + row.metric + "," + format_double(row.mean) + "," +
            format_double(row.std) + "\n";
  }
  write_file(path, text);
}

std::vector<SweepRow> read_sweep_csv(const std::filesystem::path& path) {
  std::vector<SweepRow> rows;
  for (const auto& cells : read_table(path, kSweepHeader)) {
    expect_width(path, cells, 5);
    rows.push_back({cells[0], cells[1], cells[2], parse_cell<double>(path, cells[3]),
                    parse_cell<double>(path, cells[4])});
  }
  return rows;
}

}  // namespace dsapf
