// Copyright 2026 The tnnsim Authors
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

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "tnn/learner.hpp"
#include "tnn/state_prep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotConverged = 2;

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string format_word_set(const std::vector<tnn::Word>& words, int arity) {
  std::string out = "{";
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ", ";
    out += tnn::word_to_string(words[i], arity);
  }
  return out + "}";
}

struct TrainOptions {
  int arity = 0;
  std::string function_text;
  std::string mode = "ideal";
  std::string source;  // empty: uniform for ideal, down for sampled
  std::string policy = "exact";
  std::uint64_t shots = 1;
  std::uint64_t seed = 0;
  int max_updates = 0;
  int mask_depth = 0;
  bool floor_rounding = false;
  bool no_two_phase = false;
  bool no_confirm = false;
};

tnn::QtMode make_mode(const TrainOptions& opt) {
  tnn::QtMode mode;
  if (opt.mode == "ideal")
    mode.kind = tnn::QtMode::Kind::Ideal;
  else if (opt.mode == "sampled")
    mode.kind = tnn::QtMode::Kind::Sampled;
  else
    throw CLI::ValidationError("--mode", "expected 'ideal' or 'sampled'");

  std::string source = opt.source;
  if (source.empty())
    source = (mode.kind == tnn::QtMode::Kind::Ideal) ? "uniform" : "down";
  if (source == "down")
    mode.source = tnn::SuperpositionSource::PsiDown;
  else if (source == "up")
    mode.source = tnn::SuperpositionSource::PsiUp;
  else if (source == "uniform")
    mode.source = tnn::SuperpositionSource::Uniform;
  else
    throw CLI::ValidationError("--source", "expected 'down', 'up' or 'uniform'");

  if (opt.policy == "paper")
    mode.policy = tnn::ShotPolicy::Paper;
  else if (opt.policy == "exact")
    mode.policy = tnn::ShotPolicy::Exact;
  else if (opt.policy == "fixed")
    mode.policy = tnn::ShotPolicy::Fixed;
  else
    throw CLI::ValidationError("--policy", "expected 'paper', 'exact' or 'fixed'");

  mode.fixed_shots = opt.shots;
  mode.seed = opt.seed;
  if (opt.mask_depth > 0) mode.mask_depth = opt.mask_depth;
  mode.floor_rounding = opt.floor_rounding;
  mode.two_phase = !opt.no_two_phase;
  mode.confirm_convergence = !opt.no_confirm;
  return mode;
}

int run_train(const TrainOptions& opt) {
  const tnn::BooleanFunction f = tnn::parse_function(opt.function_text, opt.arity);
  const tnn::QtMode mode = make_mode(opt);
  const tnn::TrainReport report = tnn::train(f, mode, opt.max_updates);

  const bool sampled = mode.kind == tnn::QtMode::Kind::Sampled;
  for (std::size_t k = 0; k < report.error_sets.size(); ++k) {
    std::string line = "step " + std::to_string(k);
    if (sampled && k < report.shots_per_update.size())
      line += " (" + std::to_string(report.shots_per_update[k]) + " shots)";
    line += ": errors = " + format_word_set(report.error_sets[k], opt.arity);
    std::cout << line << "\n";
  }
  std::cout << "converged: " << (report.converged ? "yes" : "no") << "\n";
  std::cout << "updates: " << report.updates << "\n";
  std::cout << "error rate: " << format_real(report.error_rate) << "\n";
  std::cout << "config: " << report.final_config.to_string() << "\n";
  std::cout << "anf: " << tnn::to_anf_string(report.learned_anf) << "\n";
  return report.converged ? kExitOk : kExitNotConverged;
}

struct SweepOptions {
  int arity = 0;
  int trials = 100;
  std::string mode = "both";
  std::uint64_t seed_base = 1;
  int sample_count = 100;  // arity-4 function subsample
  std::string output = "-";
  std::string policy = "exact";
  std::uint64_t shots = 1;
  int max_updates = 0;
};

struct SweepRow {
  std::uint64_t function_index = 0;
  std::string mode;
  int trials = 0;
  double mean_updates = 0.0;
  double mean_error_rate = 0.0;
  double convergence_fraction = 0.0;
};

unsigned worker_count() {
  if (const char* env = std::getenv("TNN_WORKERS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed >= 1) return static_cast<unsigned>(parsed);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

int run_sweep(const SweepOptions& opt) {
  if (opt.arity < 2 || opt.arity > 4)
    throw CLI::ValidationError("-n", "sweeps support n in {2, 3, 4}");
  if (opt.trials < 1) throw CLI::ValidationError("--trials", "need at least one trial");

  std::vector<std::string> modes;
  if (opt.mode == "both")
    modes = {"ideal", "sampled"};
  else if (opt.mode == "ideal" || opt.mode == "sampled")
    modes = {opt.mode};
  else
    throw CLI::ValidationError("--mode", "expected 'ideal', 'sampled' or 'both'");

  std::vector<std::uint64_t> function_indices;
  if (opt.arity <= 3) {
    const std::uint64_t count = std::uint64_t{1} << (std::uint64_t{1} << opt.arity);
    function_indices.resize(count);
    std::iota(function_indices.begin(), function_indices.end(), 0);
  } else {
    // Deterministic subsample of the 65,536 arity-4 functions.
    std::vector<std::uint64_t> all(65536);
    std::iota(all.begin(), all.end(), 0);
    std::mt19937_64 rng(tnn::derive_seed(opt.seed_base, 0xA11Fu));
    const std::size_t count =
        std::min<std::size_t>(static_cast<std::size_t>(std::max(opt.sample_count, 1)),
                              all.size());
    std::shuffle(all.begin(), all.end(), rng);
    function_indices.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(count));
    std::sort(function_indices.begin(), function_indices.end());
  }

  struct Task {
    std::uint64_t function_index;
    std::string mode;
  };
  std::vector<Task> tasks;
  for (std::uint64_t index : function_indices)
    for (const std::string& mode : modes) tasks.push_back({index, mode});

  std::vector<SweepRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& task = tasks[i];
      const tnn::BooleanFunction f =
          tnn::BooleanFunction::from_index(opt.arity, task.function_index);
      double total_updates = 0.0;
      double total_error = 0.0;
      int converged = 0;
      for (int t = 0; t < opt.trials; ++t) {
        tnn::QtMode mode;
        mode.kind = (task.mode == "ideal") ? tnn::QtMode::Kind::Ideal
                                           : tnn::QtMode::Kind::Sampled;
        mode.source = (task.mode == "ideal") ? tnn::SuperpositionSource::Uniform
                                             : tnn::SuperpositionSource::PsiDown;
        mode.policy = (opt.policy == "paper")   ? tnn::ShotPolicy::Paper
                      : (opt.policy == "fixed") ? tnn::ShotPolicy::Fixed
                                                : tnn::ShotPolicy::Exact;
        mode.fixed_shots = opt.shots;
        mode.seed = tnn::derive_seed(opt.seed_base, static_cast<std::uint64_t>(t));
        const tnn::TrainReport report = tnn::train(f, mode, opt.max_updates);
        total_updates += report.updates;
        total_error += report.error_rate;
        converged += report.converged ? 1 : 0;
      }
      rows[i] = {task.function_index,
                 task.mode,
                 opt.trials,
                 total_updates / opt.trials,
                 total_error / opt.trials,
                 static_cast<double>(converged) / opt.trials};
    }
  };

  const unsigned workers =
      std::min<std::size_t>(worker_count(), std::max<std::size_t>(tasks.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  // Tasks were generated function-major with modes in lexical order, so the
  // rows are already sorted by (function_index, mode).
  std::ostringstream csv;
  csv << "function_index,mode,trials,mean_updates,mean_error_rate,convergence_fraction\n";
  for (const SweepRow& row : rows) {
    csv << row.function_index << ',' << row.mode << ',' << row.trials << ','
        << format_real(row.mean_updates) << ',' << format_real(row.mean_error_rate)
        << ',' << format_real(row.convergence_fraction) << '\n';
  }
  if (opt.output == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream out(opt.output, std::ios::binary);
    if (!out) throw CLI::ValidationError("--output", "cannot open output file");
    out << csv.str();
  }
  return kExitOk;
}

struct PrepDumpOptions {
  int arity = 0;
  std::string direction = "down";
};

int run_prep_dump(const PrepDumpOptions& opt) {
  tnn::Direction dir;
  if (opt.direction == "down")
    dir = tnn::Direction::Down;
  else if (opt.direction == "up")
    dir = tnn::Direction::Up;
  else
    throw CLI::ValidationError("--direction", "expected 'down' or 'up'");

  const tnn::PrepResult prep = tnn::prepare(opt.arity, dir);
  std::cout << tnn::dump_circuit(prep.circuit);
  std::cout << "amplitudes:\n";
  const std::uint64_t inputs = std::uint64_t{1} << opt.arity;
  for (std::uint64_t x = 0; x < inputs; ++x) {
    std::cout << tnn::word_to_string(static_cast<tnn::Word>(x), opt.arity) << ' '
              << format_real(prep.state.amplitude(x << 1)) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tunable-network training and state-preparation toolkit"};
  app.require_subcommand(1);

  TrainOptions train_opt;
  CLI::App* train = app.add_subcommand("train", "learn one Boolean function");
  train->add_option("-n,--arity", train_opt.arity, "number of inputs")
      ->required()
      ->check(CLI::Range(0, 10));
  train->add_option("-f,--function", train_opt.function_text,
                    "truth table bits or ANF expression")
      ->required();
  train->add_option("--mode", train_opt.mode, "ideal | sampled");
  train->add_option("--source", train_opt.source, "down | up | uniform");
  train->add_option("--policy", train_opt.policy, "paper | exact | fixed");
  train->add_option("--shots", train_opt.shots, "shot count for --policy fixed");
  train->add_option("--seed", train_opt.seed, "sampling seed");
  train->add_option("--max-updates", train_opt.max_updates,
                    "update cap (default 4*(n+1))");
  train->add_option("--mask-depth", train_opt.mask_depth,
                    "decode only the top weight classes");
  train->add_flag("--floor-decode", train_opt.floor_rounding,
                  "truncate instead of rounding when decoding");
  train->add_flag("--no-two-phase", train_opt.no_two_phase,
                  "keep the starting superposition for the whole run");
  train->add_flag("--no-confirm", train_opt.no_confirm,
                  "stop on the first empty decode");

  SweepOptions sweep_opt;
  CLI::App* sweep = app.add_subcommand("sweep", "train across many functions");
  sweep->add_option("-n,--arity", sweep_opt.arity, "number of inputs (2-4)")->required();
  sweep->add_option("--trials", sweep_opt.trials, "seeded trials per function");
  sweep->add_option("--mode", sweep_opt.mode, "ideal | sampled | both");
  sweep->add_option("--seed-base", sweep_opt.seed_base, "base for per-trial seeds");
  sweep->add_option("--count", sweep_opt.sample_count,
                    "functions to sample when n = 4");
  sweep->add_option("-o,--output", sweep_opt.output, "CSV path ('-' = stdout)");
  sweep->add_option("--policy", sweep_opt.policy, "paper | exact | fixed");
  sweep->add_option("--shots", sweep_opt.shots, "shot count for --policy fixed");
  sweep->add_option("--max-updates", sweep_opt.max_updates,
                    "update cap (default 4*(n+1))");

  PrepDumpOptions prep_opt;
  CLI::App* prep = app.add_subcommand("prep-dump", "print a preparation circuit");
  prep->add_option("-n,--arity", prep_opt.arity, "number of inputs")
      ->required()
      ->check(CLI::Range(0, 8));
  prep->add_option("--direction", prep_opt.direction, "down | up");

  try {
    app.parse(argc, argv);
    if (train->parsed()) return run_train(train_opt);
    if (sweep->parsed()) return run_sweep(sweep_opt);
    if (prep->parsed()) return run_prep_dump(prep_opt);
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
