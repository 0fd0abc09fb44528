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

#include "tnn/boolean.hpp"

#include <bit>
#include <cctype>
#include <stdexcept>

namespace tnn {

namespace {

void check_arity(int arity) {
  if (arity < 0 || arity > kMaxArity)
    throw std::invalid_argument("arity out of supported range");
}

void check_word(Word u, int arity) {
  check_arity(arity);
  if (arity < 32 && (u >> arity) != 0)
    throw std::out_of_range("word does not fit the arity");
}

std::size_t table_length(int arity) {
  return std::size_t{1} << arity;
}

}  // namespace

int hamming_weight(Word u) { return std::popcount(u); }

bool word_bit(Word u, int var, int arity) {
  check_word(u, arity);
  if (var < 0 || var >= arity) throw std::out_of_range("variable index out of range");
  return (u >> (arity - 1 - var)) & 1u;
}

std::string word_to_string(Word u, int arity) {
  check_word(u, arity);
  std::string out(static_cast<std::size_t>(arity), '0');
  for (int i = 0; i < arity; ++i)
    if ((u >> (arity - 1 - i)) & 1u) out[static_cast<std::size_t>(i)] = '1';
  return out;
}

Word word_from_string(std::string_view text) {
  if (text.empty() || text.size() > static_cast<std::size_t>(kMaxArity))
    throw std::invalid_argument("word string has unsupported length");
  Word u = 0;
  for (char c : text) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("word string must be binary");
    u = (u << 1) | static_cast<Word>(c == '1');
  }
  return u;
}

bool eval_monomial(Word u, Word x, int arity) {
  check_word(u, arity);
  check_word(x, arity);
  return (x & u) == u;
}

BooleanFunction::BooleanFunction(int arity, BitVec table) : arity_(arity), table_(std::move(table)) {
  check_arity(arity);
  if (table_.size() != table_length(arity))
    throw std::invalid_argument("truth table length must be 2^arity");
}

BooleanFunction BooleanFunction::zero(int arity) {
  check_arity(arity);
  return BooleanFunction(arity, BitVec(table_length(arity)));
}

BooleanFunction BooleanFunction::from_index(int arity, std::uint64_t index) {
  check_arity(arity);
  if (arity > 6) throw std::invalid_argument("from_index requires arity <= 6");
  const std::size_t len = table_length(arity);
  if (arity < 6 && (index >> len) != 0)
    throw std::out_of_range("function index out of range");
  BitVec table(len);
  for (std::size_t x = 0; x < len; ++x)
    if ((index >> x) & 1u) table.set(x, true);
  return BooleanFunction(arity, std::move(table));
}

bool BooleanFunction::value(Word x) const {
  check_word(x, arity_);
  return table_.get(x);
}

void BooleanFunction::set_value(Word x, bool v) {
  check_word(x, arity_);
  table_.set(x, v);
}

std::uint64_t BooleanFunction::index() const {
  if (arity_ > 6) throw std::invalid_argument("index requires arity <= 6");
  std::uint64_t out = 0;
  for (std::size_t x = 0; x < table_.size(); ++x)
    if (table_.get(x)) out |= std::uint64_t{1} << x;
  return out;
}

BooleanFunction operator^(const BooleanFunction& f, const BooleanFunction& g) {
  if (f.arity() != g.arity())
    throw std::invalid_argument("XOR of functions with different arity");
  return BooleanFunction(f.arity(), f.table() ^ g.table());
}

Anf::Anf(int arity, BitVec coefficients) : arity_(arity), coefficients_(std::move(coefficients)) {
  check_arity(arity);
  if (coefficients_.size() != table_length(arity))
    throw std::invalid_argument("coefficient vector length must be 2^arity");
}

Anf Anf::zero(int arity) {
  check_arity(arity);
  return Anf(arity, BitVec(table_length(arity)));
}

bool Anf::coefficient(Word u) const {
  check_word(u, arity_);
  return coefficients_.get(u);
}

void Anf::set_coefficient(Word u, bool v) {
  check_word(u, arity_);
  coefficients_.set(u, v);
}

void Anf::flip_coefficient(Word u) {
  check_word(u, arity_);
  coefficients_.flip(u);
}

std::vector<Word> Anf::monomials() const {
  std::vector<Word> out;
  for (std::size_t u = 0; u < coefficients_.size(); ++u)
    if (coefficients_.get(u)) out.push_back(static_cast<Word>(u));
  return out;
}

Anf operator^(const Anf& a, const Anf& b) {
  if (a.arity() != b.arity())
    throw std::invalid_argument("XOR of ANFs with different arity");
  return Anf(a.arity(), a.coefficients() ^ b.coefficients());
}

void moebius_transform(BitVec& bits) {
  const std::size_t n = bits.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("moebius_transform: length must be a power of two");
  auto words = bits.words();
  for (std::size_t stride = 1; stride < n; stride <<= 1) {
    if (stride < 64) {
      // Mask of the in-word positions whose stride bit is clear.
      const std::uint64_t low = ~std::uint64_t{0} / ((std::uint64_t{1} << stride) + 1);
      for (auto& w : words) w ^= (w & low) << stride;
    } else {
      const std::size_t word_stride = stride / 64;
      for (std::size_t base = 0; base < words.size(); base += 2 * word_stride)
        for (std::size_t j = 0; j < word_stride; ++j)
          words[base + word_stride + j] ^= words[base + j];
    }
  }
}

Anf anf_from_truth_table(const BooleanFunction& f) {
  BitVec bits = f.table();
  moebius_transform(bits);
  return Anf(f.arity(), std::move(bits));
}

BooleanFunction truth_table_from_anf(const Anf& a) {
  BitVec bits = a.coefficients();
  moebius_transform(bits);
  return BooleanFunction(a.arity(), std::move(bits));
}

TransformMatrix transform_matrix(int arity, int max_arity) {
  check_arity(arity);
  if (max_arity > 6)
    throw std::invalid_argument("transform_matrix: rows are limited to 64 columns");
  if (arity > max_arity)
    throw std::invalid_argument("transform_matrix: arity above the configured bound");
  const std::size_t dim = table_length(arity);
  TransformMatrix t{arity, std::vector<std::uint64_t>(dim, 0)};
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t u = 0; u < dim; ++u)
      if ((x & u) == u) t.rows[x] |= std::uint64_t{1} << u;
  return t;
}

TransformMatrix multiply(const TransformMatrix& a, const TransformMatrix& b) {
  if (a.arity != b.arity)
    throw std::invalid_argument("multiply: arity mismatch");
  const std::size_t dim = a.rows.size();
  TransformMatrix c{a.arity, std::vector<std::uint64_t>(dim, 0)};
  for (std::size_t x = 0; x < dim; ++x) {
    std::uint64_t row = 0;
    std::uint64_t picks = a.rows[x];
    while (picks) {
      const int u = std::countr_zero(picks);
      picks &= picks - 1;
      row ^= b.rows[static_cast<std::size_t>(u)];
    }
    c.rows[x] = row;
  }
  return c;
}

bool is_identity(const TransformMatrix& t) {
  for (std::size_t x = 0; x < t.rows.size(); ++x)
    if (t.rows[x] != (std::uint64_t{1} << x)) return false;
  return true;
}

BitVec apply(const TransformMatrix& t, const BitVec& v) {
  if (v.size() != t.rows.size())
    throw std::invalid_argument("apply: vector length mismatch");
  BitVec out(v.size());
  for (std::size_t x = 0; x < t.rows.size(); ++x) {
    std::uint64_t row = t.rows[x];
    int parity = 0;
    while (row) {
      const int u = std::countr_zero(row);
      row &= row - 1;
      parity ^= static_cast<int>(v.get(static_cast<std::size_t>(u)));
    }
    if (parity) out.set(x, true);
  }
  return out;
}

namespace {

std::string strip_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

Word parse_term(std::string_view term, int arity) {
  if (term.empty()) throw std::invalid_argument("ANF: empty term");
  if (term == "1") return 0;
  Word mask = 0;
  std::size_t pos = 0;
  while (pos < term.size()) {
    if (term[pos] != 'x')
      throw std::invalid_argument("ANF: expected 'x<index>' factor");
    ++pos;
    std::size_t digits = 0;
    int var = 0;
    while (pos < term.size() && std::isdigit(static_cast<unsigned char>(term[pos]))) {
      var = var * 10 + (term[pos] - '0');
      if (var > kMaxArity) throw std::out_of_range("ANF: variable index too large");
      ++pos;
      ++digits;
    }
    if (digits == 0) throw std::invalid_argument("ANF: variable without index");
    if (var >= arity) throw std::out_of_range("ANF: variable index exceeds arity");
    mask |= Word{1} << (arity - 1 - var);
    if (pos < term.size()) {
      if (term[pos] != '.')
        throw std::invalid_argument("ANF: factors must be '.'-separated");
      ++pos;
      if (pos == term.size()) throw std::invalid_argument("ANF: dangling '.'");
    }
  }
  return mask;
}

}  // namespace

Anf parse_anf(std::string_view text, int arity) {
  check_arity(arity);
  const std::string compact = strip_whitespace(text);
  if (compact.empty()) throw std::invalid_argument("ANF: empty expression");
  Anf out = Anf::zero(arity);
  if (compact == "0") return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t sep = compact.find('^', start);
    const std::string_view term =
        std::string_view(compact).substr(start, sep == std::string::npos ? sep : sep - start);
    out.flip_coefficient(parse_term(term, arity));
    if (sep == std::string::npos) break;
    start = sep + 1;
  }
  return out;
}

BooleanFunction parse_function(std::string_view text, int arity) {
  check_arity(arity);
  const std::string compact = strip_whitespace(text);
  const bool binary_only =
      !compact.empty() &&
      compact.find_first_not_of("01") == std::string::npos;
  if (binary_only && compact.size() == table_length(arity))
    return BooleanFunction(arity, BitVec::parse(compact));
  return truth_table_from_anf(parse_anf(compact, arity));
}

std::string to_anf_string(const Anf& a) {
  std::string out;
  for (Word u : a.monomials()) {
    if (!out.empty()) out.push_back('^');
    if (u == 0) {
      out.push_back('1');
      continue;
    }
    bool first = true;
    for (int i = 0; i < a.arity(); ++i) {
      if (!word_bit(u, i, a.arity())) continue;
      if (!first) out.push_back('.');
      out.push_back('x');
      out += std::to_string(i);
      first = false;
    }
  }
  return out.empty() ? "0" : out;
}

std::string to_table_string(const BooleanFunction& f) { return f.table().to_string(); }

}  // namespace tnn
