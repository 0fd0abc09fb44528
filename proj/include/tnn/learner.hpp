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

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tnn/boolean.hpp"
#include "tnn/network.hpp"
#include "tnn/state_prep.hpp"

namespace tnn {

enum class ShotPolicy {
  Paper,  // ceil((2^m-1)^2 / (16 * 2^m)) with m = 2^n; coarse, pair with masked decoding
  Exact,  // ceil((2^m-1)^2 / 4); resolves every subset weight
  Fixed,  // caller-supplied count
};

enum class SuperpositionSource { PsiDown, PsiUp, Uniform };

/// How the learner queries the network for its error set.
struct QtMode {
  enum class Kind { Ideal, Sampled };

  Kind kind = Kind::Ideal;
  SuperpositionSource source = SuperpositionSource::PsiDown;
  ShotPolicy policy = ShotPolicy::Exact;
  std::uint64_t fixed_shots = 1;  // ShotPolicy::Fixed only
  std::uint64_t seed = 0;

  /// Decode only the top `mask_depth` weight classes of the active
  /// direction; the remaining bits of the decoded integer are noise at
  /// coarse shot counts and are discarded.
  std::optional<int> mask_depth;

  /// Truncate instead of rounding to the nearest subset integer.
  bool floor_rounding = false;

  /// Sampled runs starting from PsiDown move to PsiUp once the decoded
  /// error set carries no word of weight <= floor(n/2), or after
  /// ceil((n+1)/2) updates, whichever comes first.
  bool two_phase = true;

  /// Sampled runs stop only after two consecutive empty decodes (taken
  /// under complementary superpositions when two_phase allows), since a
  /// single empty decode can be a sampling artifact.
  bool confirm_convergence = true;
};

struct TrainReport {
  /// Number of toggle rounds performed (measurements that decoded an empty
  /// set do not count).
  int updates = 0;

  /// Decoded error set of every measurement, in order, the final empty
  /// set(s) included. Words ascending.
  std::vector<std::vector<Word>> error_sets;

  TnnConfig final_config;
  Anf learned_anf;

  /// Fraction of inputs where the induced function disagrees with the
  /// target.
  double error_rate = 0.0;

  /// True only when training halted on an empty error set and the induced
  /// function equals the target on every input.
  bool converged = false;

  /// Shot count of each sampled measurement, aligned with error_sets;
  /// empty in ideal mode.
  std::vector<std::uint64_t> shots_per_update;
};

/// Exact error set: words x with nonzero amplitude (|a_x| > 1e-12) where the
/// induced function disagrees with the target. Pure table comparison; no
/// state vector is built, so it scales to large arity.
std::vector<Word> qt_ideal(const BooleanFunction& f, const TnnConfig& config,
                           const Eigen::VectorXd& amplitudes);

/// Shots for one measurement. Never less than 1; exact integer arithmetic,
/// saturating at the 64-bit limit for arities whose count cannot fit.
std::uint64_t shot_count(int arity, ShotPolicy policy,
                         std::uint64_t fixed_shots = 1);

/// Reads the subset encoded in a probability estimate: scale by 2^(2^n)-1,
/// round (or floor) to the subset integer M, then include x when bit
/// 2^n-1-p(x) of M is set (Down; bit p(x) for Up). Requires arity <= 6 so M
/// fits 64 bits.
std::vector<Word> decode_subset(double p1_estimate, int arity, Direction dir,
                                std::optional<int> mask_depth = std::nullopt,
                                bool floor_rounding = false);

/// One sampled measurement: prepare the configured superposition
/// (direct-amplitude), run the network and the target oracle, estimate the
/// readout-1 probability from shots, decode. Deterministic per seed.
std::vector<Word> qt_sampled(const BooleanFunction& f, const TnnConfig& config,
                             const QtMode& mode);

/// Gate-toggle training from the all-identity configuration: measure the
/// error set, toggle every gate it names, repeat until the stop rule or
/// max_updates (default 4*(arity+1)) is hit.
TrainReport train(const BooleanFunction& f, const QtMode& mode,
                  int max_updates = 0);

/// Stream-splitting seed derivation for independent reproducible trials.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace tnn
