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

#include "tnn/bitvec.hpp"

#include <bit>
#include <stdexcept>

namespace tnn {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t size) {
  return (size + kWordBits - 1) / kWordBits;
}

}  // namespace

BitVec::BitVec(std::size_t size, bool value)
    : size_(size), words_(word_count(size), value ? ~std::uint64_t{0} : 0) {
  if (value && size_ % kWordBits != 0)
    words_.back() &= (std::uint64_t{1} << (size_ % kWordBits)) - 1;
}

void BitVec::check_index(std::size_t i) const {
  if (i >= size_) throw std::out_of_range("BitVec: index out of range");
}

bool BitVec::get(std::size_t i) const {
  check_index(i);
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
}

void BitVec::set(std::size_t i, bool v) {
  check_index(i);
  const std::uint64_t bit = std::uint64_t{1} << (i % kWordBits);
  if (v)
    words_[i / kWordBits] |= bit;
  else
    words_[i / kWordBits] &= ~bit;
}

void BitVec::flip(std::size_t i) {
  check_index(i);
  words_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits);
}

std::size_t BitVec::count() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BitVec::any() const {
  for (std::uint64_t w : words_)
    if (w) return true;
  return false;
}

BitVec& BitVec::operator^=(const BitVec& other) {
  if (size_ != other.size_)
    throw std::invalid_argument("BitVec: size mismatch in XOR");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

std::string BitVec::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if (get(i)) out[i] = '1';
  return out;
}

BitVec BitVec::parse(std::string_view text) {
  BitVec out(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1')
      out.set(i, true);
    else if (text[i] != '0')
      throw std::invalid_argument("BitVec: expected only '0'/'1' characters");
  }
  return out;
}

}  // namespace tnn
