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
#include <string>
#include <string_view>
#include <vector>

#include "tnn/bitvec.hpp"

namespace tnn {

/// An n-bit input word u_0 ... u_{n-1}. Variable u_0 is the most significant
/// bit, so the stored integer equals the word read as a binary numeral and
/// ascending integer order is the canonical enumeration order everywhere.
using Word = std::uint32_t;

/// Largest supported arity; truth tables stay a few words long below this.
inline constexpr int kMaxArity = 20;

int hamming_weight(Word u);

/// Value of variable i (0-based from the most significant end) of u.
bool word_bit(Word u, int var, int arity);

std::string word_to_string(Word u, int arity);
Word word_from_string(std::string_view text);

/// Monomial evaluation m_u(x): 1 iff every variable selected by u is set in
/// x, i.e. (x AND u) == u. Throws if u or x does not fit the arity.
bool eval_monomial(Word u, Word x, int arity);

/// Truth table of a Boolean function over n-bit words, entry x = f(x).
class BooleanFunction {
 public:
  BooleanFunction(int arity, BitVec table);
  static BooleanFunction zero(int arity);

  /// Builds the function whose table, read with entry x as bit x of the
  /// integer, equals `index`. Requires arity <= 6 so the index fits 64 bits.
  static BooleanFunction from_index(int arity, std::uint64_t index);

  int arity() const { return arity_; }
  std::size_t table_size() const { return table_.size(); }
  bool value(Word x) const;
  void set_value(Word x, bool v);
  const BitVec& table() const { return table_; }

  /// Inverse of from_index; requires arity <= 6.
  std::uint64_t index() const;

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

 private:
  int arity_;
  BitVec table_;
};

/// Pointwise XOR; arities must match.
BooleanFunction operator^(const BooleanFunction& f, const BooleanFunction& g);

/// Algebraic normal form: coefficient c_u per monomial m_u, entry order u.
class Anf {
 public:
  Anf(int arity, BitVec coefficients);
  static Anf zero(int arity);

  int arity() const { return arity_; }
  bool coefficient(Word u) const;
  void set_coefficient(Word u, bool v);
  void flip_coefficient(Word u);
  const BitVec& coefficients() const { return coefficients_; }

  /// Words with a set coefficient, ascending.
  std::vector<Word> monomials() const;

  friend bool operator==(const Anf&, const Anf&) = default;

 private:
  int arity_;
  BitVec coefficients_;
};

Anf operator^(const Anf& a, const Anf& b);

/// In-place subset-XOR butterfly: bits[x] ^= bits[x without one set index
/// bit], folded over every index bit. Self-inverse over GF(2); it converts a
/// truth table into ANF coefficients and back.
void moebius_transform(BitVec& bits);

Anf anf_from_truth_table(const BooleanFunction& f);
BooleanFunction truth_table_from_anf(const Anf& a);

/// Dense GF(2) matrix T with T[x][u] = m_u(x), one 64-bit row per x.
/// Kept as an independently constructed cross-check for the butterfly
/// transform; only sensible for small arity.
struct TransformMatrix {
  int arity = 0;
  std::vector<std::uint64_t> rows;  // bit u of rows[x] is T[x][u]
};

TransformMatrix transform_matrix(int arity, int max_arity = 6);
TransformMatrix multiply(const TransformMatrix& a, const TransformMatrix& b);
bool is_identity(const TransformMatrix& t);

/// c = T v over GF(2); v.size() must equal 2^arity.
BitVec apply(const TransformMatrix& t, const BitVec& v);

/// ANF expression text: terms separated by '^'; a term is "1" or a
/// '.'-separated product of "x<decimal>"; whitespace is ignored; a lone "0"
/// denotes the empty coefficient set (matching to_anf_string output).
Anf parse_anf(std::string_view text, int arity);

/// Accepts either a 2^arity-character binary truth table (entry order x) or
/// an ANF expression, and returns the function either way.
BooleanFunction parse_function(std::string_view text, int arity);

std::string to_anf_string(const Anf& a);
std::string to_table_string(const BooleanFunction& f);

}  // namespace tnn
