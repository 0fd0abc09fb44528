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

#include "tnn/network.hpp"

#include <stdexcept>
#include <utility>

namespace tnn {

namespace {

// Validate before the shift: a bad arity must never reach the allocator.
std::size_t checked_gate_count(int arity) {
  if (arity < 0 || arity > kMaxArity)
    throw std::invalid_argument("TnnConfig: arity out of supported range");
  return std::size_t{1} << arity;
}

}  // namespace

TnnConfig::TnnConfig(int arity)
    : arity_(arity), gates_(checked_gate_count(arity)) {}

TnnConfig::TnnConfig(int arity, BitVec gates) : TnnConfig(arity) {
  if (gates.size() != gates_.size())
    throw std::invalid_argument("TnnConfig: gate vector length must be 2^arity");
  gates_ = std::move(gates);
}

bool TnnConfig::gate(Word u) const { return gates_.get(u); }

void TnnConfig::toggle(Word u) { gates_.flip(u); }

std::string TnnConfig::to_string() const { return gates_.to_string(); }

TnnConfig TnnConfig::from_string(std::string_view text, int arity) {
  return TnnConfig(arity, BitVec::parse(text));
}

TnnConfig phi(const Anf& a) { return TnnConfig(a.arity(), a.coefficients()); }

Anf phi_inverse(const TnnConfig& c) { return Anf(c.arity(), c.gates()); }

TnnConfig toggle_gate(TnnConfig c, Word u) {
  c.toggle(u);
  return c;
}

void apply_tnn(const TnnConfig& c, StateVector& s) {
  if (s.num_qubits() != c.arity() + 1)
    throw std::invalid_argument("apply_tnn: state must have arity+1 qubits");
  const int readout = c.arity();
  const std::size_t gates = std::size_t{1} << c.arity();
  for (std::size_t u = 0; u < gates; ++u) {
    if (!c.gate(static_cast<Word>(u))) continue;
    apply_mcx(s, input_qubit_mask(static_cast<Word>(u), c.arity()), 0, readout);
  }
}

Oracle::Oracle(BooleanFunction f)
    : f_(std::move(f)), circuit_(phi(anf_from_truth_table(f_))) {}

void apply_oracle(const Oracle& o, StateVector& s) {
  apply_tnn(o.circuit(), s);
}

}  // namespace tnn
