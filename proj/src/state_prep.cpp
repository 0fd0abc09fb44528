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

#include "tnn/state_prep.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace tnn {

namespace {

void check_arity(int arity) {
  if (arity < 0 || arity > kMaxArity)
    throw std::invalid_argument("arity out of supported range");
}

std::uint64_t binomial(int a, int b) {
  if (b < 0 || b > a) return 0;
  std::uint64_t out = 1;
  for (int i = 0; i < b; ++i) out = out * static_cast<std::uint64_t>(a - i) / (i + 1);
  return out;
}

}  // namespace

int weight_rank(Word x, int arity) {
  check_arity(arity);
  if (arity < 32 && (x >> arity) != 0)
    throw std::out_of_range("word does not fit the arity");
  // Count same-weight words below x: for each set bit, the words that clear
  // it and spread the remaining ones over the lower positions.
  int ones_left = hamming_weight(x);
  std::uint64_t below = 0;
  for (int bit = arity - 1; bit >= 0; --bit) {
    if ((x >> bit) & 1u) {
      below += binomial(bit, ones_left);
      --ones_left;
    }
  }
  return static_cast<int>(below) + 1;
}

Ranking ranking(int arity) {
  check_arity(arity);
  const std::size_t dim = std::size_t{1} << arity;
  Ranking r{arity, std::vector<Word>(dim, 0), std::vector<Word>(dim, 0)};
  Word next = 0;
  for (int weight = 0; weight <= arity; ++weight) {
    for (std::size_t x = 0; x < dim; ++x) {
      if (std::popcount(x) != weight) continue;
      r.rank_of[x] = next;
      r.word_of[next] = static_cast<Word>(x);
      ++next;
    }
  }
  return r;
}

double theta(int k) {
  if (k < 0) throw std::invalid_argument("theta: negative stage");
  // arccos(sqrt(A/(A+1))) with A = 2^(2^k) equals atan(1/sqrt(A)).
  return std::atan(std::exp2(-std::ldexp(1.0, k - 1)));
}

std::vector<GateOp> rotation_stage(int arity, Direction dir) {
  check_arity(arity);
  std::vector<GateOp> gates;
  gates.reserve(static_cast<std::size_t>(arity));
  for (int qubit = 0; qubit < arity; ++qubit) {
    double angle = theta(arity - 1 - qubit);
    if (dir == Direction::Up) angle = std::numbers::pi / 2.0 - angle;
    gates.push_back(GateOp::ry(qubit, 2.0 * angle));
  }
  return gates;
}

std::vector<Word> sigma(int arity) { return ranking(arity).word_of; }

std::vector<Transposition> decompose_transpositions(std::span<const Word> perm) {
  std::vector<Word> work(perm.begin(), perm.end());
  for (std::size_t i = 0; i < work.size(); ++i)
    if (work[i] >= work.size())
      throw std::invalid_argument("decompose_transpositions: not a permutation");
  std::vector<Transposition> found;
  for (std::size_t x = 0; x < work.size(); ++x) {
    if (work[x] == x) continue;
    const Word y = work[x];
    found.push_back({static_cast<Word>(x), y});
    // Compose the transposition (x y) on the left: swap the preimages.
    for (std::size_t z = x; z < work.size(); ++z) {
      if (work[z] == x)
        work[z] = y;
      else if (work[z] == y)
        work[z] = static_cast<Word>(x);
    }
    work[x] = static_cast<Word>(x);
  }
  // Discovery order composes right-to-left; the caller applies the list
  // first-listed-first, so hand it back reversed.
  return {found.rbegin(), found.rend()};
}

std::vector<GateOp> gray_circuit(Word a, Word b, int arity) {
  check_arity(arity);
  if (arity < 32 && (((a | b) >> arity) != 0))
    throw std::out_of_range("word does not fit the arity");
  if (a == b) throw std::invalid_argument("gray_circuit: words must differ");

  const std::uint32_t all = (arity >= 32) ? ~0u : ((1u << arity) - 1u);
  auto step_gate = [&](Word source, int var) {
    const std::uint32_t flip_bit = 1u << var;
    const std::uint32_t source_mask = input_qubit_mask(source, arity);
    const std::uint32_t others = all & ~flip_bit;
    return GateOp::mcx(source_mask & others, ~source_mask & others, var);
  };

  // Walk from a to b flipping differing variables most significant first.
  std::vector<GateOp> forward;
  GateOp pivot{};
  Word current = a;
  std::vector<std::pair<Word, int>> steps;
  for (int var = 0; var < arity; ++var) {
    if (word_bit(a, var, arity) == word_bit(b, var, arity)) continue;
    steps.emplace_back(current, var);
    current ^= Word{1} << (arity - 1 - var);
  }
  for (std::size_t i = 0; i + 1 < steps.size(); ++i)
    forward.push_back(step_gate(steps[i].first, steps[i].second));
  pivot = step_gate(steps.back().first, steps.back().second);

  std::vector<GateOp> gates = forward;
  gates.push_back(pivot);
  gates.insert(gates.end(), forward.rbegin(), forward.rend());
  return gates;
}

PrepResult prepare(int arity, Direction dir) {
  check_arity(arity);
  PrepCircuit circuit{rotation_stage(arity, dir), {}};
  const std::vector<Word> perm = sigma(arity);
  for (const Transposition& t : decompose_transpositions(perm)) {
    const std::vector<GateOp> block = gray_circuit(t.a, t.b, arity);
    circuit.permutation.insert(circuit.permutation.end(), block.begin(), block.end());
  }
  StateVector state = StateVector::basis(arity + 1, 0);
  for (const GateOp& g : circuit.rotation) apply_gate(state, g);
  for (const GateOp& g : circuit.permutation) apply_gate(state, g);
  return {std::move(circuit), std::move(state)};
}

Eigen::VectorXd reference_amplitudes(int arity, Direction dir) {
  check_arity(arity);
  if (arity > 10)
    throw std::invalid_argument(
        "reference_amplitudes: weights underflow beyond arity 10");
  const int m = 1 << arity;
  const Ranking r = ranking(arity);
  // log2(2^m - 1); for m >= 64 the -1 is below double resolution.
  const double denom_log2 =
      (m >= 64) ? static_cast<double>(m) : std::log2(std::ldexp(1.0, m) - 1.0);
  Eigen::VectorXd amps(m);
  for (int x = 0; x < m; ++x) {
    const int rank = static_cast<int>(r.rank_of[static_cast<std::size_t>(x)]);
    const int exponent = (dir == Direction::Down) ? (m - 1 - rank) : rank;
    amps[x] = std::exp2(0.5 * (static_cast<double>(exponent) - denom_log2));
  }
  return amps;
}

StateVector prepare_direct(int arity, Direction dir) {
  return StateVector::from_input_amplitudes(reference_amplitudes(arity, dir));
}

std::string dump_circuit(const PrepCircuit& circuit) {
  std::string out;
  char line[128];
  auto emit = [&](const GateOp& g) {
    if (g.kind == GateKind::Ry) {
      std::snprintf(line, sizeof line, "RY target=%d theta=%.6g\n", g.target, g.angle);
    } else {
      std::snprintf(line, sizeof line, "MCX target=%d pos=%u neg=%u\n", g.target,
                    g.pos_controls, g.neg_controls);
    }
    out += line;
  };
  for (const GateOp& g : circuit.rotation) emit(g);
  for (const GateOp& g : circuit.permutation) emit(g);
  return out;
}

}  // namespace tnn
