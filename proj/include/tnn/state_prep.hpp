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

#include <span>
#include <string>
#include <vector>

#include "tnn/boolean.hpp"
#include "tnn/statevector.hpp"

namespace tnn {

/// Weighted superposition family: Down gives low-Hamming-weight words the
/// large amplitudes, Up gives them to high-weight words.
enum class Direction { Down, Up };

/// 1-based position of x among the words of its Hamming weight class,
/// ordered by integer value.
int weight_rank(Word x, int arity);

/// The rank p orders words by (Hamming weight, integer value): p(0...0) = 0,
/// and within each weight class ranks continue from the previous class's
/// maximum in weight_rank order.
struct Ranking {
  int arity = 0;
  std::vector<Word> rank_of;  // x -> p(x)
  std::vector<Word> word_of;  // p(x) -> x
};

Ranking ranking(int arity);

/// Mixing angle of stage k: arccos(sqrt(2^(2^k) / (2^(2^k) + 1))), computed
/// as atan(2^(-2^(k-1))) so large k underflows to 0 instead of overflowing.
double theta(int k);

/// One Ry per input qubit; qubit i turns by 2*theta(arity-1-i) for Down and
/// by the complementary angle for Up. From |0...0> this yields amplitude
/// sqrt(2^(2^n-1-x) / (2^(2^n)-1)) on |x> (Down; exponent x for Up).
std::vector<GateOp> rotation_stage(int arity, Direction dir);

/// Basis permutation sending rank r to the word of rank r, i.e. the inverse
/// of p as a map on integers. Applying it after the rotation stage replaces
/// the exponent x by p(x). The same permutation serves both directions.
std::vector<Word> sigma(int arity);

struct Transposition {
  Word a = 0;
  Word b = 0;
  friend bool operator==(const Transposition&, const Transposition&) = default;
};

/// Splits a permutation into transpositions by repeatedly fixing the
/// smallest unfixed point. Applying the returned list to basis states
/// first-listed-first composes to exactly `perm`.
std::vector<Transposition> decompose_transpositions(std::span<const Word> perm);

/// Multi-controlled-X realization of the transposition (a b) on the input
/// register: walk a Gray path from a to b flipping one differing variable
/// per step (most significant first), emit the forward gates, the pivot,
/// then the forward gates reversed. Controls sit on every other variable
/// with polarity matching the step's source word. Basis states other than a
/// and b are left fixed.
std::vector<GateOp> gray_circuit(Word a, Word b, int arity);

struct PrepCircuit {
  std::vector<GateOp> rotation;
  std::vector<GateOp> permutation;
};

struct PrepResult {
  PrepCircuit circuit;
  StateVector state;  // arity+1 qubits, readout cleared
};

/// Compiles rotation stage plus permutation stage and simulates the circuit
/// from |0...0>|0>.
PrepResult prepare(int arity, Direction dir);

/// Closed-form target amplitudes over the input words:
/// sqrt(2^(2^n-1-p(x)) / (2^(2^n)-1)) for Down, exponent p(x) for Up.
/// Supported for arity <= 10; below that the smallest weights stay normal.
Eigen::VectorXd reference_amplitudes(int arity, Direction dir);

/// Writes reference_amplitudes straight into a fresh (arity+1)-qubit state,
/// bypassing the circuit.
StateVector prepare_direct(int arity, Direction dir);

/// Text listing, one gate per line:
///   RY target=<qubit> theta=<angle>
///   MCX target=<qubit> pos=<qubit mask> neg=<qubit mask>
std::string dump_circuit(const PrepCircuit& circuit);

}  // namespace tnn
