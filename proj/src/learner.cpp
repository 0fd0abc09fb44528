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

#include "tnn/learner.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace tnn {

namespace {

constexpr double kAmplitudeZeroTolerance = 1e-12;

void check_arity(int arity) {
  if (arity < 0 || arity > kMaxArity)
    throw std::invalid_argument("arity out of supported range");
}

Direction source_direction(SuperpositionSource source) {
  return source == SuperpositionSource::PsiUp ? Direction::Up : Direction::Down;
}

Eigen::VectorXd ideal_amplitudes(int arity, SuperpositionSource source) {
  if (source == SuperpositionSource::Uniform) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << arity);
    return Eigen::VectorXd::Constant(dim, std::exp2(-0.5 * arity));
  }
  return reference_amplitudes(arity, source_direction(source));
}

/// One sampled measurement with an externally owned generator.
std::vector<Word> sampled_error_set(const BooleanFunction& f,
                                    const TnnConfig& config,
                                    const Oracle& oracle, const QtMode& mode,
                                    Direction dir, std::mt19937_64& rng,
                                    std::uint64_t& shots_out) {
  const int n = f.arity();
  shots_out = shot_count(n, mode.policy, mode.fixed_shots);
  StateVector state = prepare_direct(n, dir);
  apply_tnn(config, state);
  apply_oracle(oracle, state);
  const std::uint64_t ones = sample_counts(state, n, shots_out, rng);
  const double p1 = static_cast<double>(ones) / static_cast<double>(shots_out);
  return decode_subset(p1, n, dir, mode.mask_depth, mode.floor_rounding);
}

}  // namespace

std::vector<Word> qt_ideal(const BooleanFunction& f, const TnnConfig& config,
                           const Eigen::VectorXd& amplitudes) {
  if (config.arity() != f.arity())
    throw std::invalid_argument("qt_ideal: configuration arity mismatch");
  const std::size_t dim = std::size_t{1} << f.arity();
  if (static_cast<std::size_t>(amplitudes.size()) != dim)
    throw std::invalid_argument("qt_ideal: amplitude vector length mismatch");
  const BooleanFunction induced = truth_table_from_anf(phi_inverse(config));
  std::vector<Word> errors;
  for (std::size_t x = 0; x < dim; ++x) {
    if (std::abs(amplitudes[static_cast<Eigen::Index>(x)]) <= kAmplitudeZeroTolerance)
      continue;
    if (induced.value(static_cast<Word>(x)) != f.value(static_cast<Word>(x)))
      errors.push_back(static_cast<Word>(x));
  }
  return errors;
}

std::uint64_t shot_count(int arity, ShotPolicy policy, std::uint64_t fixed_shots) {
  check_arity(arity);
  if (policy == ShotPolicy::Fixed) return std::max<std::uint64_t>(1, fixed_shots);
  if (arity == 0 || arity > 6) {
    if (arity == 0) return 1;
    throw std::invalid_argument("shot_count: formula arities are limited to 6");
  }
  const int m = 1 << arity;
  using u128 = unsigned __int128;
  const u128 total = (m == 64) ? ~std::uint64_t{0} : ((u128{1} << m) - 1);
  const u128 numerator = total * total;
  const u128 denominator =
      (policy == ShotPolicy::Paper) ? (u128{16} << m) : u128{4};
  // Remainder form of the ceiling: numerator + denominator can wrap 128 bits.
  const u128 shots = numerator / denominator + (numerator % denominator != 0 ? 1 : 0);
  const u128 cap = ~std::uint64_t{0};
  const std::uint64_t out =
      static_cast<std::uint64_t>(shots > cap ? cap : shots);
  return std::max<std::uint64_t>(1, out);
}

std::vector<Word> decode_subset(double p1_estimate, int arity, Direction dir,
                                std::optional<int> mask_depth,
                                bool floor_rounding) {
  check_arity(arity);
  if (arity > 6)
    throw std::invalid_argument("decode_subset: subset integers are limited to 64 bits");
  if (!(p1_estimate >= 0.0 && p1_estimate <= 1.0))
    throw std::invalid_argument("decode_subset: estimate must lie in [0, 1]");
  if (mask_depth && (*mask_depth < 1 || *mask_depth > arity + 1))
    throw std::invalid_argument("decode_subset: mask depth out of range");

  const int m = 1 << arity;
  // 2^m - 1 is exact in 80-bit long double up to m = 64.
  const long double total = std::ldexp(1.0L, m) - 1.0L;
  const long double scaled = static_cast<long double>(p1_estimate) * total;
  long double rounded = floor_rounding ? std::floor(scaled) : std::floor(scaled + 0.5L);
  if (rounded < 0.0L) rounded = 0.0L;
  if (rounded > total) rounded = total;
  const std::uint64_t subset_int = static_cast<std::uint64_t>(rounded);

  const Ranking r = ranking(arity);
  std::vector<Word> out;
  for (int x = 0; x < m; ++x) {
    const int rank = static_cast<int>(r.rank_of[static_cast<std::size_t>(x)]);
    const int bit = (dir == Direction::Down) ? (m - 1 - rank) : rank;
    if (((subset_int >> bit) & 1u) == 0) continue;
    if (mask_depth) {
      const int weight = hamming_weight(static_cast<Word>(x));
      const bool in_mask = (dir == Direction::Down)
                               ? (weight < *mask_depth)
                               : (weight > arity - *mask_depth);
      if (!in_mask) continue;
    }
    out.push_back(static_cast<Word>(x));
  }
  return out;
}

std::vector<Word> qt_sampled(const BooleanFunction& f, const TnnConfig& config,
                             const QtMode& mode) {
  if (mode.kind != QtMode::Kind::Sampled)
    throw std::invalid_argument("qt_sampled: mode is not sampled");
  if (mode.source == SuperpositionSource::Uniform)
    throw std::invalid_argument(
        "qt_sampled: a uniform superposition cannot be decoded");
  if (config.arity() != f.arity())
    throw std::invalid_argument("qt_sampled: configuration arity mismatch");
  std::mt19937_64 rng(mode.seed);
  const Oracle oracle(f);
  std::uint64_t shots = 0;
  return sampled_error_set(f, config, oracle, mode, source_direction(mode.source),
                           rng, shots);
}

TrainReport train(const BooleanFunction& f, const QtMode& mode, int max_updates) {
  const int n = f.arity();
  if (max_updates <= 0) max_updates = 4 * (n + 1);

  const bool sampled = mode.kind == QtMode::Kind::Sampled;
  if (sampled && mode.source == SuperpositionSource::Uniform)
    throw std::invalid_argument(
        "train: a uniform superposition cannot be decoded in sampled mode");

  TnnConfig config(n);
  TrainReport report{0, {}, config, Anf::zero(n), 0.0, false, {}};

  std::mt19937_64 rng(mode.seed);
  std::optional<Oracle> oracle;
  Eigen::VectorXd amplitudes;
  if (sampled)
    oracle.emplace(f);
  else
    amplitudes = ideal_amplitudes(n, mode.source);

  const bool two_phase =
      sampled && mode.two_phase && mode.source == SuperpositionSource::PsiDown;
  Direction current = source_direction(mode.source);
  const int low_weight_bound = n / 2;
  const int switch_update_cap = (n + 2) / 2;  // ceil((n+1)/2)

  int consecutive_empty = 0;
  bool halted_on_empty = false;
  while (true) {
    std::vector<Word> errors;
    if (sampled) {
      std::uint64_t shots = 0;
      errors = sampled_error_set(f, config, *oracle, mode, current, rng, shots);
      report.shots_per_update.push_back(shots);
    } else {
      errors = qt_ideal(f, config, amplitudes);
    }
    report.error_sets.push_back(errors);

    if (errors.empty()) {
      ++consecutive_empty;
      const int needed = (sampled && mode.confirm_convergence) ? 2 : 1;
      if (consecutive_empty >= needed) {
        halted_on_empty = true;
        break;
      }
      // Re-check under the complementary superposition where the schedule
      // allows; a lone empty decode can be a sampling artifact.
      if (two_phase)
        current = (current == Direction::Down) ? Direction::Up : Direction::Down;
      continue;
    }
    consecutive_empty = 0;

    for (Word u : errors) config.toggle(u);
    ++report.updates;

    if (two_phase && current == Direction::Down) {
      const bool has_low_weight =
          std::any_of(errors.begin(), errors.end(), [&](Word u) {
            return hamming_weight(u) <= low_weight_bound;
          });
      if (!has_low_weight || report.updates >= switch_update_cap)
        current = Direction::Up;
    }
    if (report.updates >= max_updates) break;
  }

  report.final_config = config;
  report.learned_anf = phi_inverse(config);
  const BooleanFunction induced = truth_table_from_anf(report.learned_anf);
  std::size_t wrong = 0;
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t x = 0; x < dim; ++x)
    if (induced.value(static_cast<Word>(x)) != f.value(static_cast<Word>(x))) ++wrong;
  report.error_rate = static_cast<double>(wrong) / static_cast<double>(dim);
  report.converged = halted_on_empty && wrong == 0;
  return report;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 over golden-ratio-spaced stream positions.
  std::uint64_t z = base + index * 0x9E3779B97F4A7C15ull + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace tnn
