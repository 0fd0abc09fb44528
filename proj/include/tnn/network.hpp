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

#include <string>
#include <string_view>

#include "tnn/boolean.hpp"
#include "tnn/statevector.hpp"

namespace tnn {

/// Gate configuration of a tunable network over n inputs plus one readout
/// qubit: bit u on means gate u is the X on the readout controlled
/// (positively) by the input qubits selected by u. Gate 0...0 is the bare X.
/// All gates commute, so the configuration is a set, not a sequence.
class TnnConfig {
 public:
  /// All-identity configuration (every gate off).
  explicit TnnConfig(int arity);
  TnnConfig(int arity, BitVec gates);

  int arity() const { return arity_; }
  const BitVec& gates() const { return gates_; }
  bool gate(Word u) const;
  void toggle(Word u);

  /// 2^arity '0'/'1' characters, entry order u.
  std::string to_string() const;
  static TnnConfig from_string(std::string_view text, int arity);

  friend bool operator==(const TnnConfig&, const TnnConfig&) = default;

 private:
  int arity_;
  BitVec gates_;
};

/// The index-preserving identification between ANF coefficients and gate
/// bits: gate u is on exactly when coefficient c_u is 1.
TnnConfig phi(const Anf& a);
Anf phi_inverse(const TnnConfig& c);

TnnConfig toggle_gate(TnnConfig c, Word u);

/// Applies every active gate in ascending u order to an (arity+1)-qubit
/// state; the readout qubit is the last one. On a basis state |x>|q> this
/// XORs the induced function's value at x into q.
void apply_tnn(const TnnConfig& c, StateVector& s);

/// Oracle for a target function: the basis map |x>|q> -> |x>|q XOR f(x)>,
/// realized as the tunable network whose configuration encodes f's ANF.
class Oracle {
 public:
  explicit Oracle(BooleanFunction f);
  const BooleanFunction& target() const { return f_; }
  const TnnConfig& circuit() const { return circuit_; }

 private:
  BooleanFunction f_;
  TnnConfig circuit_;
};

void apply_oracle(const Oracle& o, StateVector& s);

}  // namespace tnn
