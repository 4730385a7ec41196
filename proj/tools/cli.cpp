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

#include <cli.hpp>

#include <dsapf/engine.hpp>
#include <dsapf/metrics_io.hpp>
#include <dsapf/oracle.hpp>
#include <dsapf/scenario.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <mutex>
#include <optional>
#include <thread>

namespace dsapf::cli {

namespace {

namespace fs = std::filesystem;

/// Raised for user errors that map to kExitConfig.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string default_out_dir() {
  if (const char* env = std::getenv("DSA_PF_OUT"); env != nullptr && *env != '\0') {
    return env;
  }
  return "dsa_pf_out";
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw UsageError{"invalid seed '" + text + "'"};
  }
  return value;
}

SystemConfig load_config(const std::string& path) {
  return path.empty() ? SystemConfig{} : load_scenario(path);
}

std::string field_names() {
  std::string names;
  for (const auto& field : config_fields()) {
    if (field.name == "seed") {
      continue;
    }
    names += names.empty() ? "" : ", ";
    names += field.name;
  }
  return names;
}

struct RunOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  int threads{1};
};

int cmd_run(const RunOptions& options, std::ostream& out) {
  auto raw = load_config(options.config);
  if (options.seed) {
    raw.seed = *options.seed;
  }
  const auto config = validate(raw);
  const auto result = run(config, EngineOptions{.threads = options.threads});
  const auto paths = write_run(result.records, result.summary, options.out);
  const auto row = summary_row(result.summary);
  out << "command=run seed=" << row.seed << " objective=" << row.objective << " n_users=" << row.n_users
      << " n_bands=" << row.n_bands << " ell=" << row.ell << " n_particles=" << row.n_particles
      << " n_slots=" << result.summary.n_slots << " avg_throughput_bps=" << format_double(row.avg_throughput_bps)
      << " avg_jain=" << format_double(row.avg_jain) << " total_messages=" << row.total_messages
      << " slots_csv=" << paths.slots.string() << " summary_csv=" << paths.summary.string() << "\n";
  return kExitOk;
}

struct SweepOptions {
  std::string config;
  std::string param;
  std::string values;
  std::string seeds{"1"};
  std::string out;
  int jobs{1};
};

int cmd_sweep(const SweepOptions& options, std::ostream& out) {
  const auto* field = find_config_field(options.param);
  if (field == nullptr || options.param == "seed") {
    throw UsageError{"unknown sweep parameter '" + options.param + "'; valid names: " + field_names()};
  }
  const auto base = load_config(options.config);
  const auto values = expand_values(options.values);
  std::vector<std::uint64_t> seeds;
  for (const auto& text : expand_values(options.seeds)) {
    seeds.push_back(parse_seed(text));
  }
  if (values.empty() || seeds.empty()) {
    throw UsageError{"sweep needs at least one value and one seed"};
  }

  struct Cell {
    ValidatedConfig config;
    fs::path dir;
  };
  std::vector<Cell> cells;
  for (const auto& value : values) {
    SystemConfig raw = base;
    field->set(raw, value);
    for (const auto seed : seeds) {
      raw.seed = seed;
      const auto dir = fs::path{options.out} / (options.param + "-" + field->get(raw)) /
                       ("seed-" + std::to_string(seed));
      cells.push_back({validate(raw), dir});
    }
  }

  std::vector<RunSummary> summaries(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        const auto result = run(cells[i].config);
        write_run(result.records, result.summary, cells[i].dir);
        summaries[i] = result.summary;
      } catch (...) {
        const std::lock_guard lock{failure_mutex};
        if (!failure) {
          failure = std::current_exception();
        }
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const auto workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(options.jobs, 1)), 1, cells.size());
    for (std::size_t w = 1; w < workers; ++w) {
      pool.emplace_back(worker);
    }
    worker();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  const auto rows = sweep_table(options.param, summaries);
  const auto sweep_path = fs::path{options.out} / kSweepFileName;
  write_sweep_csv(rows, sweep_path);
  for (const auto& row : rows) {
    out << "parameter=" << row.parameter << " value=" << row.value << " metric=" << row.metric
        << " mean=" << format_double(row.mean) << " std=" << format_double(row.std) << "\n";
  }
  out << "command=sweep cells=" << cells.size() << " sweep_csv=" << sweep_path.string() << "\n";
  return kExitOk;
}

struct OracleOptions {
  std::string config;
  int slots{50};
  std::optional<std::uint64_t> seed;
};

double score_ratio(double pf, double oracle) {
  if (oracle == 0.0) {
    return pf == 0.0 ? 1.0 : 0.0;
  }
  return pf / oracle;
}

int cmd_oracle_check(const OracleOptions& options, std::ostream& out) {
  auto raw = load_config(options.config);
  if (options.seed) {
    raw.seed = *options.seed;
  }
  if (options.slots < 1) {
    throw UsageError{"--slots must be positive"};
  }
  const auto config = validate(raw);

  TinyInstance probe;
  probe.max_bands_per_user = config->max_bands_per_user;
  probe.gains = GainTensor{config->n_users, config->n_bands};
  probe.availability = BandSet::all(config->n_bands);
  probe.rate_thresholds.assign(static_cast<std::size_t>(config->n_users), 0.0);
  try {
    check_enumerable(probe);
  } catch (const OracleRefused& refused) {
    throw UsageError{refused.what()};
  }

  Simulation* sim_ptr = nullptr;
  std::optional<OracleSolution> cached;
  GainTensor cached_gains;
  BandSet cached_availability;
  double final_ratio = 0.0;
  EngineOptions engine_options;
  engine_options.observer = [&](const SlotTrace& trace) {
    const bool reuse = cached && cached_gains == trace.realized_gains && cached_availability == trace.availability;
    if (!reuse) {
      TinyInstance instance;
      instance.max_bands_per_user = config->max_bands_per_user;
      instance.gains = trace.realized_gains;
      instance.availability = trace.availability;
      instance.rate_thresholds = sim_ptr->requirements().rate_threshold_bps;
      instance.budget = sim_ptr->budget();
      instance.power_rule = engine_options.power_rule;
      cached = solve_exhaustive(instance, config->objective);
      cached_gains = trace.realized_gains;
      cached_availability = trace.availability;
    }
    const double pf = global_score(config->objective, trace.record.realized_rewards);
    final_ratio = score_ratio(pf, cached->score);
    out << "slot=" << trace.slot << " pf_score=" << format_double(pf)
        << " oracle_score=" << format_double(cached->score) << " ratio=" << format_double(final_ratio) << "\n";
  };

  Simulation sim{config, engine_options};
  sim_ptr = &sim;
  for (int t = 0; t < options.slots; ++t) {
    sim.step();
  }
  out << "command=oracle-check slots=" << options.slots << " objective=" << to_string(config->objective)
      << " final_ratio=" << format_double(final_ratio) << "\n";
  return kExitOk;
}

}  // namespace

std::vector<std::string> expand_values(const std::string& list) {
  std::vector<std::string> values;
  std::size_t start = 0;
  while (start <= list.size()) {
    auto end = list.find(',', start);
    if (end == std::string::npos) {
      end = list.size();
    }
    auto item = list.substr(start, end - start);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (const auto dots = item.find(".."); dots != std::string::npos) {
      long long lo = 0;
      long long hi = 0;
      const auto lo_text = item.substr(0, dots);
      const auto hi_text = item.substr(dots + 2);
      const auto [lo_end, lo_ec] = std::from_chars(lo_text.data(), lo_text.data() + lo_text.size(), lo);
      const auto [hi_end, hi_ec] = std::from_chars(hi_text.data(), hi_text.data() + hi_text.size(), hi);
      if (lo_ec != std::errc{} || hi_ec != std::errc{} || lo_end != lo_text.data() + lo_text.size() ||
          hi_end != hi_text.data() + hi_text.size() || hi < lo) {
        throw UsageError{"invalid range '" + item + "'"};
      }
      for (auto v = lo; v <= hi; ++v) {
        values.push_back(std::to_string(v));
      }
    } else if (!item.empty()) {
      values.push_back(item);
    }
    start = end + 1;
  }
  return values;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distributed particle-filter spectrum and power allocation simulator", "dsa_pf"};
  app.require_subcommand(1);

  RunOptions run_options;
  run_options.out = default_out_dir();
  auto* run_cmd = app.add_subcommand("run", "Run one simulation and write slots.csv and summary.csv");
  run_cmd->add_option("--config", run_options.config, "Scenario file (key = value); defaults when omitted");
  run_cmd->add_option("--seed", run_options.seed, "Override the scenario seed");
  run_cmd->add_option("--out", run_options.out, "Output directory (default: $DSA_PF_OUT or dsa_pf_out)");
  run_cmd->add_option("--threads", run_options.threads, "Worker threads per run")->check(CLI::PositiveNumber);

  SweepOptions sweep_options;
  sweep_options.out = default_out_dir();
  auto* sweep_cmd = app.add_subcommand("sweep", "Run values x seeds and write a long-format sweep.csv");
  sweep_cmd->add_option("--config", sweep_options.config, "Base scenario file");
  sweep_cmd->add_option("--param", sweep_options.param, "Field to sweep")->required();
  sweep_cmd->add_option("--values", sweep_options.values, "Comma list; integer ranges as a..b")->required();
  sweep_cmd->add_option("--seeds", sweep_options.seeds, "Comma list or a..b range of seeds");
  sweep_cmd->add_option("--out", sweep_options.out, "Output directory (default: $DSA_PF_OUT or dsa_pf_out)");
  sweep_cmd->add_option("--jobs", sweep_options.jobs, "Cells run concurrently")->check(CLI::PositiveNumber);

  OracleOptions oracle_options;
  auto* oracle_cmd =
      app.add_subcommand("oracle-check", "Compare realized scores with the exhaustive optimum on a tiny scenario");
  oracle_cmd->add_option("--config", oracle_options.config, "Tiny scenario file");
  oracle_cmd->add_option("--slots", oracle_options.slots, "Slots to simulate");
  oracle_cmd->add_option("--seed", oracle_options.seed, "Override the scenario seed");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& arg : args) {
    argv.push_back(arg.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run_cmd->parsed()) {
      return cmd_run(run_options, out);
    }
    if (sweep_cmd->parsed()) {
      return cmd_sweep(sweep_options, out);
    }
    return cmd_oracle_check(oracle_options, out);
  } catch (const IoError& error) {
    err << "dsa_pf: " << error.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& error) {
    err << "dsa_pf: invalid config (" << error.field() << "): " << error.what() << "\n";
    return kExitConfig;
  } catch (const UsageError& error) {
    err << "dsa_pf: " << error.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& error) {
    err << "dsa_pf: " << error.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace dsapf::cli
