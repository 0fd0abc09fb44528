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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "tnn/learner.hpp"

using namespace tnn;

namespace {

Eigen::VectorXd uniform_amplitudes(int arity) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << arity);
  return Eigen::VectorXd::Constant(dim, std::exp2(-0.5 * arity));
}

QtMode ideal_mode(SuperpositionSource source) {
  QtMode mode;
  mode.kind = QtMode::Kind::Ideal;
  mode.source = source;
  return mode;
}

QtMode sampled_mode(std::uint64_t seed, ShotPolicy policy = ShotPolicy::Exact) {
  QtMode mode;
  mode.kind = QtMode::Kind::Sampled;
  mode.source = SuperpositionSource::PsiDown;
  mode.policy = policy;
  mode.seed = seed;
  return mode;
}

BooleanFunction random_function(int arity, std::mt19937_64& rng) {
  BooleanFunction f = BooleanFunction::zero(arity);
  for (Word x = 0; x < (Word{1} << arity); ++x) f.set_value(x, rng() & 1u);
  return f;
}

}  // namespace

TEST_CASE("ideal error sets along the worked trace") {
  const BooleanFunction f = parse_function("00101001", 3);
  const Eigen::VectorXd amps = reference_amplitudes(3, Direction::Down);

  TnnConfig config(3);
  const std::vector<Word> first = qt_ideal(f, config, amps);
  CHECK(first == std::vector<Word>{0b010, 0b100, 0b111});

  for (Word u : first) config.toggle(u);
  const std::vector<Word> second = qt_ideal(f, config, amps);
  CHECK(second == std::vector<Word>{0b011, 0b101});

  for (Word u : second) config.toggle(u);
  CHECK(qt_ideal(f, config, amps).empty());
  CHECK(truth_table_from_anf(phi_inverse(config)) == f);
}

TEST_CASE("ideal error sets respect the amplitude support") {
  const BooleanFunction f = parse_function("1111", 2);
  const TnnConfig config(2);
  Eigen::VectorXd amps(4);
  amps << 0.0, 0.5, 1e-13, 0.5;
  // Words with (near-)zero amplitude can never be read out as errors.
  CHECK(qt_ideal(f, config, amps) == std::vector<Word>{0b01, 0b11});
  CHECK_THROWS_AS(qt_ideal(f, TnnConfig(3), amps), std::invalid_argument);
  CHECK_THROWS_AS(qt_ideal(f, config, Eigen::VectorXd::Ones(3)),
                  std::invalid_argument);
}

TEST_CASE("shot counts") {
  CHECK(shot_count(2, ShotPolicy::Paper) == 1);
  CHECK(shot_count(3, ShotPolicy::Paper) == 16);
  CHECK(shot_count(2, ShotPolicy::Exact) == 57);
  CHECK(shot_count(3, ShotPolicy::Exact) == 16257);
  CHECK(shot_count(1, ShotPolicy::Paper) == 1);
  CHECK(shot_count(1, ShotPolicy::Exact) == 3);
  CHECK(shot_count(0, ShotPolicy::Paper) == 1);
  // The count grows monotonically with the arity.
  for (int n = 1; n <= 5; ++n)
    CHECK(shot_count(n, ShotPolicy::Exact) > shot_count(n - 1, ShotPolicy::Exact));
  // At six inputs the exact policy overflows 64 bits and saturates.
  CHECK(shot_count(6, ShotPolicy::Exact) == ~std::uint64_t{0});
  CHECK(shot_count(6, ShotPolicy::Paper) > (std::uint64_t{1} << 56));
  CHECK(shot_count(4, ShotPolicy::Fixed, 9) == 9);
  CHECK(shot_count(4, ShotPolicy::Fixed, 0) == 1);
  CHECK(shot_count(19, ShotPolicy::Fixed, 5) == 5);
  CHECK_THROWS_AS(shot_count(7, ShotPolicy::Exact), std::invalid_argument);
  CHECK_THROWS_AS(shot_count(7, ShotPolicy::Paper), std::invalid_argument);
  CHECK_THROWS_AS(shot_count(-1, ShotPolicy::Fixed), std::invalid_argument);
}

TEST_CASE("decoding the worked probability") {
  // {010, 100, 111} encodes as 2^5 + 2^4 + 2^0 = 49 out of 255.
  const std::vector<Word> got = decode_subset(49.0 / 255.0, 3, Direction::Down);
  CHECK(got == std::vector<Word>{0b010, 0b100, 0b111});
  CHECK(decode_subset(0.0, 3, Direction::Down).empty());
  const std::vector<Word> all = decode_subset(1.0, 3, Direction::Down);
  CHECK(all.size() == 8);
}

TEST_CASE("decode inverts the subset encoding for every subset") {
  for (int n = 1; n <= 3; ++n) {
    const int m = 1 << n;
    for (Direction dir : {Direction::Down, Direction::Up}) {
      const Eigen::VectorXd amps = reference_amplitudes(n, dir);
      for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << m); ++subset) {
        double p1 = 0.0;
        std::vector<Word> members;
        for (int x = 0; x < m; ++x) {
          if (((subset >> x) & 1u) == 0) continue;
          p1 += amps[x] * amps[x];
          members.push_back(static_cast<Word>(x));
        }
        CHECK(decode_subset(std::min(p1, 1.0), n, dir) == members);
      }
    }
  }
}

TEST_CASE("decode rounding modes") {
  // 3.7/15 scales to 3.7: nearest is 4 = 0b0100, truncation is 3 = 0b0011.
  CHECK(decode_subset(3.7 / 15.0, 2, Direction::Down) ==
        std::vector<Word>{0b01});
  CHECK(decode_subset(3.7 / 15.0, 2, Direction::Down, std::nullopt, true) ==
        std::vector<Word>{0b10, 0b11});
}

TEST_CASE("decode mask depth") {
  // 11/15 = 0b1011 carries {00, 10, 11}; keeping two weight classes drops 11.
  const double p1 = 11.0 / 15.0;
  CHECK(decode_subset(p1, 2, Direction::Down) ==
        std::vector<Word>{0b00, 0b10, 0b11});
  CHECK(decode_subset(p1, 2, Direction::Down, 2) ==
        std::vector<Word>{0b00, 0b10});
  CHECK(decode_subset(p1, 2, Direction::Down, 1) == std::vector<Word>{0b00});
  CHECK(decode_subset(p1, 2, Direction::Down, 3) ==
        std::vector<Word>{0b00, 0b10, 0b11});
  // Up direction masks from the top weight instead.
  const double q1 = 11.0 / 15.0;  // bits 0,1,3 are ranks 0,1,3: {00, 01, 11}
  CHECK(decode_subset(q1, 2, Direction::Up) ==
        std::vector<Word>{0b00, 0b01, 0b11});
  CHECK(decode_subset(q1, 2, Direction::Up, 1) == std::vector<Word>{0b11});
}

TEST_CASE("decode validation") {
  CHECK_THROWS_AS(decode_subset(-0.1, 2, Direction::Down), std::invalid_argument);
  CHECK_THROWS_AS(decode_subset(1.1, 2, Direction::Down), std::invalid_argument);
  CHECK_THROWS_AS(decode_subset(std::nan(""), 2, Direction::Down),
                  std::invalid_argument);
  CHECK_THROWS_AS(decode_subset(0.5, 7, Direction::Down), std::invalid_argument);
  CHECK_THROWS_AS(decode_subset(0.5, 2, Direction::Down, 0), std::invalid_argument);
  CHECK_THROWS_AS(decode_subset(0.5, 2, Direction::Down, 4), std::invalid_argument);
}

TEST_CASE("sampled measurement is silent on a tuned network") {
  const BooleanFunction f = parse_function("0111", 2);
  const TnnConfig tuned = phi(anf_from_truth_table(f));
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    CHECK(qt_sampled(f, tuned, sampled_mode(seed)).empty());
}

TEST_CASE("sampled measurement is deterministic per seed") {
  const BooleanFunction f = parse_function("1011", 2);
  const TnnConfig config(2);
  CHECK(qt_sampled(f, config, sampled_mode(12)) ==
        qt_sampled(f, config, sampled_mode(12)));
}

TEST_CASE("sampled measurement recovers the first error set") {
  // Target 1011 disagrees with the identity network on {00, 10, 11}. One
  // eight-shot-class measurement recovers that set exactly whenever the
  // estimate rounds to 11/15; that happens for a healthy share of seeds.
  const BooleanFunction f = parse_function("1011", 2);
  const TnnConfig config(2);
  const std::vector<Word> expected = {0b00, 0b10, 0b11};
  int exact = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    if (qt_sampled(f, config, sampled_mode(seed)) == expected) ++exact;
  CHECK(exact >= 3);
}

TEST_CASE("coarse policy with mask depth stays in the low weights") {
  // One shot resolves only empty-or-everything; the mask keeps the part of
  // the readout that a single shot can actually support.
  const BooleanFunction f = parse_function("1011", 2);
  const TnnConfig config(2);
  bool saw_low = false;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    QtMode mode = sampled_mode(seed, ShotPolicy::Paper);
    mode.mask_depth = 2;
    const std::vector<Word> got = qt_sampled(f, config, mode);
    for (Word u : got) CHECK(hamming_weight(u) <= 1);
    if (got == std::vector<Word>{0b00, 0b01, 0b10}) saw_low = true;
  }
  CHECK(saw_low);
}

TEST_CASE("sampled measurement validation") {
  const BooleanFunction f = parse_function("1011", 2);
  const TnnConfig config(2);
  QtMode ideal = ideal_mode(SuperpositionSource::PsiDown);
  CHECK_THROWS_AS(qt_sampled(f, config, ideal), std::invalid_argument);
  QtMode uniform = sampled_mode(0);
  uniform.source = SuperpositionSource::Uniform;
  CHECK_THROWS_AS(qt_sampled(f, config, uniform), std::invalid_argument);
  CHECK_THROWS_AS(qt_sampled(f, TnnConfig(3), sampled_mode(0)),
                  std::invalid_argument);
}

TEST_CASE("training follows the worked trace") {
  const BooleanFunction f = parse_function("00101001", 3);
  const TrainReport report = train(f, ideal_mode(SuperpositionSource::PsiDown));
  REQUIRE(report.error_sets.size() == 3);
  CHECK(report.error_sets[0] == std::vector<Word>{0b010, 0b100, 0b111});
  CHECK(report.error_sets[1] == std::vector<Word>{0b011, 0b101});
  CHECK(report.error_sets[2].empty());
  CHECK(report.updates == 2);
  CHECK(report.converged);
  CHECK(report.error_rate == 0.0);
  CHECK(report.learned_anf == anf_from_truth_table(f));
  CHECK(report.final_config == phi(anf_from_truth_table(f)));
  CHECK(report.shots_per_update.empty());
}

TEST_CASE("training the zero function") {
  const TrainReport report = train(BooleanFunction::zero(3),
                                   ideal_mode(SuperpositionSource::PsiDown));
  CHECK(report.updates == 0);
  CHECK(report.converged);
  REQUIRE(report.error_sets.size() == 1);
  CHECK(report.error_sets[0].empty());
  CHECK(report.final_config == TnnConfig(3));
}

TEST_CASE("ideal training converges within two updates exhaustively") {
  // Toggling the full disagreement set twice always lands on the target: the
  // residual evolves by a nilpotent-of-order-two map. Along the way every
  // residual after k updates lives on words of weight at least k.
  for (int n = 0; n <= 3; ++n) {
    const std::uint64_t functions = std::uint64_t{1} << (std::uint64_t{1} << n);
    for (std::uint64_t index = 0; index < functions; ++index) {
      const BooleanFunction f = BooleanFunction::from_index(n, index);
      const TrainReport report = train(f, ideal_mode(SuperpositionSource::Uniform));
      CHECK(report.converged);
      CHECK(report.updates <= 2);
      CHECK(report.final_config == phi(anf_from_truth_table(f)));
      CHECK(report.error_sets.back().empty());
      for (std::size_t k = 0; k < report.error_sets.size(); ++k)
        for (Word u : report.error_sets[k])
          CHECK(hamming_weight(u) >= static_cast<int>(k));
    }
  }
}

TEST_CASE("ideal training on random four-input functions") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    const BooleanFunction f = BooleanFunction::from_index(4, rng() & 0xFFFF);
    const TrainReport report = train(f, ideal_mode(SuperpositionSource::Uniform));
    CHECK(report.converged);
    CHECK(report.updates <= 2);
    CHECK(truth_table_from_anf(report.learned_anf) == f);
  }
}

TEST_CASE("ideal training scales to ten inputs") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    BooleanFunction f = BooleanFunction::zero(10);
    for (int ones = 0; ones < 8; ++ones)
      f.set_value(static_cast<Word>(rng() & 1023), true);
    const TrainReport report = train(f, ideal_mode(SuperpositionSource::Uniform));
    CHECK(report.converged);
    CHECK(report.updates <= 2);
    CHECK(truth_table_from_anf(report.learned_anf) == f);
  }
}

TEST_CASE("ideal training with the weighted superpositions") {
  for (std::uint64_t index = 0; index < 16; ++index) {
    const BooleanFunction f = BooleanFunction::from_index(2, index);
    for (SuperpositionSource source :
         {SuperpositionSource::PsiDown, SuperpositionSource::PsiUp}) {
      const TrainReport report = train(f, ideal_mode(source));
      CHECK(report.converged);
      CHECK(report.updates <= 2);
    }
  }
}

TEST_CASE("toggles only disturb supersets of the reported errors") {
  std::mt19937_64 rng(59);
  const Eigen::VectorXd amps = uniform_amplitudes(4);
  for (int trial = 0; trial < 200; ++trial) {
    const BooleanFunction f = random_function(4, rng);
    TnnConfig config(4);
    for (Word u = 0; u < 16; ++u)
      if (rng() & 1u) config.toggle(u);
    const BooleanFunction before = truth_table_from_anf(phi_inverse(config));
    const std::vector<Word> errors = qt_ideal(f, config, amps);

    TnnConfig toggled = config;
    for (Word u : errors) toggled.toggle(u);
    const BooleanFunction after = truth_table_from_anf(phi_inverse(toggled));

    for (Word x = 0; x < 16; ++x) {
      const bool superset = std::any_of(
          errors.begin(), errors.end(), [&](Word u) { return (x & u) == u; });
      if (!superset) CHECK(after.value(x) == before.value(x));
    }
    // A minimal reported error is repaired by its own toggle alone.
    for (Word x : errors) {
      const bool minimal =
          std::none_of(errors.begin(), errors.end(),
                       [&](Word u) { return u != x && (x & u) == u; });
      if (minimal) CHECK(after.value(x) == f.value(x));
    }
  }
}

TEST_CASE("the update cap halts training") {
  const BooleanFunction f = parse_function("00101001", 3);
  const TrainReport report =
      train(f, ideal_mode(SuperpositionSource::PsiDown), 1);
  CHECK(report.updates == 1);
  CHECK_FALSE(report.converged);
  CHECK(report.error_rate > 0.0);
  REQUIRE(report.error_sets.size() == 1);
  CHECK_FALSE(report.error_sets[0].empty());
}

TEST_CASE("sampled training converges on every two-input function") {
  int converged = 0;
  int trials = 0;
  for (std::uint64_t index = 0; index < 16; ++index) {
    const BooleanFunction f = BooleanFunction::from_index(2, index);
    for (int t = 0; t < 20; ++t) {
      const QtMode mode = sampled_mode(derive_seed(900 + index, static_cast<std::uint64_t>(t)));
      const TrainReport report = train(f, mode, 12);
      ++trials;
      if (report.converged) {
        ++converged;
        CHECK(truth_table_from_anf(report.learned_anf) == f);
        CHECK(report.error_rate == 0.0);
        CHECK(report.error_sets.back().empty());
      }
      CHECK(report.shots_per_update.size() == report.error_sets.size());
      std::size_t nonempty = 0;
      for (const auto& set : report.error_sets)
        if (!set.empty()) ++nonempty;
      CHECK(static_cast<std::size_t>(report.updates) == nonempty);
      for (std::uint64_t shots : report.shots_per_update) CHECK(shots == 57);
    }
  }
  // The protocol is designed to clear 95 percent comfortably; 90 here keeps
  // the smaller sample size honest.
  CHECK(converged * 10 >= trials * 9);
}

TEST_CASE("sampled training spot check on three inputs") {
  const char* tables[4] = {"00101001", "11111111", "01100110", "00011101"};
  int converged = 0;
  int trials = 0;
  for (int fi = 0; fi < 4; ++fi) {
    const BooleanFunction f = parse_function(tables[fi], 3);
    for (std::uint64_t t = 0; t < 6; ++t) {
      const QtMode mode =
          sampled_mode(derive_seed(7000 + static_cast<std::uint64_t>(fi), t));
      const TrainReport report = train(f, mode, 16);
      ++trials;
      if (report.converged) {
        ++converged;
        CHECK(truth_table_from_anf(report.learned_anf) == f);
      }
    }
  }
  CHECK(converged * 10 >= trials * 8);
}

TEST_CASE("sampled training without confirmation still reports honestly") {
  // With single-empty stopping the run may halt early on a sampling artifact,
  // but a run that claims convergence must actually match the target.
  for (std::uint64_t t = 0; t < 30; ++t) {
    QtMode mode = sampled_mode(derive_seed(31337, t));
    mode.confirm_convergence = false;
    mode.two_phase = false;
    const BooleanFunction f = parse_function("0111", 2);
    const TrainReport report = train(f, mode, 12);
    if (report.converged) {
      CHECK(report.error_rate == 0.0);
      CHECK(truth_table_from_anf(report.learned_anf) == f);
    }
  }
}

TEST_CASE("seed derivation") {
  CHECK(derive_seed(0, 0) == derive_seed(0, 0));
  CHECK(derive_seed(0, 0) != derive_seed(0, 1));
  CHECK(derive_seed(0, 5) != derive_seed(1, 5));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
  CHECK(seen.size() == 1000);
}
