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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "tnn/boolean.hpp"

namespace tnn {

inline constexpr int kMaxQubits = 24;

enum class GateKind { Mcx, Ry, Hadamard };

/// One primitive gate. Control masks are qubit-index masks (bit q means a
/// control on qubit q); positive controls fire on |1>, negative on |0>.
/// Masks must be disjoint and must not include the target.
struct GateOp {
  GateKind kind = GateKind::Mcx;
  std::uint32_t pos_controls = 0;
  std::uint32_t neg_controls = 0;
  int target = 0;
  double angle = 0.0;  // Ry only

  static GateOp mcx(std::uint32_t pos, std::uint32_t neg, int target) {
    if ((pos & neg) != 0)
      throw std::invalid_argument("GateOp: control masks overlap");
    if (target < 0 || (((pos | neg) >> target) & 1u) != 0)
      throw std::invalid_argument("GateOp: target collides with a control");
    return GateOp{GateKind::Mcx, pos, neg, target, 0.0};
  }
  static GateOp ry(int target, double angle) {
    if (target < 0) throw std::invalid_argument("GateOp: negative target");
    return GateOp{GateKind::Ry, 0, 0, target, angle};
  }
  static GateOp hadamard(int target) {
    if (target < 0) throw std::invalid_argument("GateOp: negative target");
    return GateOp{GateKind::Hadamard, 0, 0, target, 0.0};
  }
};

/// Qubit-index mask for the variables selected by an input word: variable i
/// of u controls qubit i.
inline std::uint32_t input_qubit_mask(Word u, int arity) {
  std::uint32_t mask = 0;
  for (int i = 0; i < arity; ++i)
    if (word_bit(u, i, arity)) mask |= (1u << i);
  return mask;
}

/// Real-amplitude state vector. Qubit i occupies bit (num_qubits-1-i) of the
/// basis index, so a basis label reads as the binary number of its qubit
/// values in qubit order. Every supported gate has a real matrix, so real
/// storage is closed under application by construction.
template <typename Scalar>
class BasicStateVector {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  static BasicStateVector basis(int num_qubits, std::uint64_t index) {
    check_qubit_count(num_qubits);
    const std::uint64_t dim = std::uint64_t{1} << num_qubits;
    if (index >= dim)
      throw std::out_of_range("BasicStateVector: basis index out of range");
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(dim));
    amps[static_cast<Eigen::Index>(index)] = Scalar{1};
    return BasicStateVector(num_qubits, std::move(amps));
  }

  /// Builds an (n+1)-qubit state from amplitudes over the 2^n input words,
  /// placing each one on |x>|0> (readout qubit last, cleared).
  static BasicStateVector from_input_amplitudes(const Vector& input) {
    const auto len = static_cast<std::uint64_t>(input.size());
    int n = 0;
    while ((std::uint64_t{1} << n) < len) ++n;
    if ((std::uint64_t{1} << n) != len)
      throw std::invalid_argument("BasicStateVector: length is not a power of two");
    check_qubit_count(n + 1);
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(len * 2));
    for (std::uint64_t x = 0; x < len; ++x)
      amps[static_cast<Eigen::Index>(x << 1)] = input[static_cast<Eigen::Index>(x)];
    return BasicStateVector(n + 1, std::move(amps));
  }

  int num_qubits() const { return num_qubits_; }
  std::uint64_t dim() const { return std::uint64_t{1} << num_qubits_; }

  const Vector& amplitudes() const { return amps_; }
  Vector& amplitudes() { return amps_; }
  Scalar amplitude(std::uint64_t index) const {
    return amps_[static_cast<Eigen::Index>(index)];
  }

  Scalar norm_squared() const { return amps_.squaredNorm(); }

  std::uint64_t index_bit(int qubit) const {
    if (qubit < 0 || qubit >= num_qubits_)
      throw std::out_of_range("BasicStateVector: qubit index out of range");
    return std::uint64_t{1} << (num_qubits_ - 1 - qubit);
  }

  friend bool operator==(const BasicStateVector& a, const BasicStateVector& b) {
    return a.num_qubits_ == b.num_qubits_ && a.amps_ == b.amps_;
  }

 private:
  BasicStateVector(int num_qubits, Vector amps)
      : num_qubits_(num_qubits), amps_(std::move(amps)) {}

  static void check_qubit_count(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
      throw std::invalid_argument("BasicStateVector: unsupported qubit count");
  }

  int num_qubits_;
  Vector amps_;
};

using StateVector = BasicStateVector<double>;

namespace detail {

template <typename Scalar>
std::uint64_t qubit_mask_to_index_mask(const BasicStateVector<Scalar>& state,
                                       std::uint32_t qubit_mask) {
  if (qubit_mask >> state.num_qubits())
    throw std::out_of_range("gate touches a qubit outside the register");
  std::uint64_t mask = 0;
  for (int q = 0; q < state.num_qubits(); ++q)
    if ((qubit_mask >> q) & 1u) mask |= state.index_bit(q);
  return mask;
}

}  // namespace detail

/// Multi-controlled X: flips the target amplitude pair wherever all positive
/// controls read 1 and all negative controls read 0. A pure amplitude
/// permutation, hence exact.
template <typename Scalar>
void apply_mcx(BasicStateVector<Scalar>& state, std::uint32_t pos_controls,
               std::uint32_t neg_controls, int target) {
  if ((pos_controls & neg_controls) != 0)
    throw std::invalid_argument("apply_mcx: control masks overlap");
  if (((pos_controls | neg_controls) >> target) & 1u)
    throw std::invalid_argument("apply_mcx: target collides with a control");
  const std::uint64_t pos = detail::qubit_mask_to_index_mask(state, pos_controls);
  const std::uint64_t neg = detail::qubit_mask_to_index_mask(state, neg_controls);
  const std::uint64_t t = state.index_bit(target);
  auto& a = state.amplitudes();
  const std::uint64_t dim = state.dim();
  for (std::uint64_t b = 0; b < dim; ++b) {
    if ((b & t) == 0 && (b & pos) == pos && (b & neg) == 0)
      std::swap(a[static_cast<Eigen::Index>(b)],
                a[static_cast<Eigen::Index>(b | t)]);
  }
}

/// Ry(theta) = ((cos t/2, -sin t/2), (sin t/2, cos t/2)) on one qubit.
template <typename Scalar>
void apply_ry(BasicStateVector<Scalar>& state, int qubit, double theta) {
  const auto c = static_cast<Scalar>(std::cos(theta / 2.0));
  const auto s = static_cast<Scalar>(std::sin(theta / 2.0));
  const std::uint64_t t = state.index_bit(qubit);
  auto& a = state.amplitudes();
  const std::uint64_t dim = state.dim();
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (b & t) continue;
    const auto i0 = static_cast<Eigen::Index>(b);
    const auto i1 = static_cast<Eigen::Index>(b | t);
    const Scalar a0 = a[i0];
    const Scalar a1 = a[i1];
    a[i0] = c * a0 - s * a1;
    a[i1] = s * a0 + c * a1;
  }
}

template <typename Scalar>
void apply_h(BasicStateVector<Scalar>& state, int qubit) {
  const Scalar inv_sqrt2 = Scalar{1} / std::sqrt(Scalar{2});
  const std::uint64_t t = state.index_bit(qubit);
  auto& a = state.amplitudes();
  const std::uint64_t dim = state.dim();
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (b & t) continue;
    const auto i0 = static_cast<Eigen::Index>(b);
    const auto i1 = static_cast<Eigen::Index>(b | t);
    const Scalar a0 = a[i0];
    const Scalar a1 = a[i1];
    a[i0] = inv_sqrt2 * (a0 + a1);
    a[i1] = inv_sqrt2 * (a0 - a1);
  }
}

template <typename Scalar>
void apply_gate(BasicStateVector<Scalar>& state, const GateOp& gate) {
  switch (gate.kind) {
    case GateKind::Mcx:
      apply_mcx(state, gate.pos_controls, gate.neg_controls, gate.target);
      return;
    case GateKind::Ry:
      apply_ry(state, gate.target, gate.angle);
      return;
    case GateKind::Hadamard:
      apply_h(state, gate.target);
      return;
  }
  throw std::logic_error("apply_gate: unknown gate kind");
}

/// Probability of reading 1 on the given qubit: sum of squared amplitudes
/// over basis states with that qubit set.
template <typename Scalar>
Scalar prob_one(const BasicStateVector<Scalar>& state, int qubit) {
  const std::uint64_t t = state.index_bit(qubit);
  const auto& a = state.amplitudes();
  Scalar sum{0};
  const std::uint64_t dim = state.dim();
  for (std::uint64_t b = 0; b < dim; ++b)
    if (b & t) sum += a[static_cast<Eigen::Index>(b)] * a[static_cast<Eigen::Index>(b)];
  return sum;
}

/// Number of 1 readings over `shots` independent Bernoulli(prob_one) draws.
/// Deterministic for a fixed generator state.
template <typename Scalar>
std::uint64_t sample_counts(const BasicStateVector<Scalar>& state, int qubit,
                            std::uint64_t shots, std::mt19937_64& rng) {
  if (shots < 1) throw std::invalid_argument("sample_counts: shots must be >= 1");
  if (shots > (std::uint64_t{1} << 62))
    throw std::invalid_argument("sample_counts: shot count too large");
  const double p =
      std::clamp(static_cast<double>(prob_one(state, qubit)), 0.0, 1.0);
  std::binomial_distribution<std::int64_t> draw(
      static_cast<std::int64_t>(shots), p);
  return static_cast<std::uint64_t>(draw(rng));
}

}  // namespace tnn
