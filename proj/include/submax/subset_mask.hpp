// Copyright 2026 The Submax Authors.
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

#ifndef SUBMAX_SUBSET_MASK_HPP_
#define SUBMAX_SUBSET_MASK_HPP_

#include <bit>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace submax {

// Element identifier inside a ground set [n] = {0, ..., n-1}.
using Element = std::uint32_t;

// A finite ground set. Elements are the dense indices 0..n-1.
class GroundSet {
 public:
  explicit GroundSet(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("ground set must be nonempty");
  }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
};

// Fixed-width membership bit vector over [n]. Storage is inline for
// n <= 256 so that copies in solver inner loops do not allocate.
class SubsetMask {
 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  SubsetMask() = default;
  explicit SubsetMask(std::size_t n)
      : n_(n), words_((n + kWordBits - 1) / kWordBits, 0) {}

  static SubsetMask full(std::size_t n) {
    SubsetMask m(n);
    for (auto& w : m.words_) w = ~word_type{0};
    m.trim();
    return m;
  }
  // Low 64 bits given as an integer; bit i is element i.
  static SubsetMask from_bits(std::size_t n, std::uint64_t bits) {
    SubsetMask m(n);
    if (!m.words_.empty()) m.words_[0] = bits;
    m.trim();
    return m;
  }
  static SubsetMask of(std::size_t n, std::initializer_list<Element> members) {
    SubsetMask m(n);
    for (Element j : members) m.insert(j);
    return m;
  }
  static SubsetMask of(std::size_t n, std::span<const Element> members) {
    SubsetMask m(n);
    for (Element j : members) m.insert(j);
    return m;
  }

  std::size_t size() const { return n_; }
  std::size_t count() const {
    std::size_t c = 0;
    for (word_type w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (word_type w : words_)
      if (w != 0) return false;
    return true;
  }

  bool contains(Element j) const {
    return j < n_ && ((words_[j / kWordBits] >> (j % kWordBits)) & 1U) != 0;
  }
  void insert(Element j) {
    check(j);
    words_[j / kWordBits] |= word_type{1} << (j % kWordBits);
  }
  void erase(Element j) {
    check(j);
    words_[j / kWordBits] &= ~(word_type{1} << (j % kWordBits));
  }
  SubsetMask with(Element j) const {
    SubsetMask m = *this;
    m.insert(j);
    return m;
  }
  SubsetMask without(Element j) const {
    SubsetMask m = *this;
    m.erase(j);
    return m;
  }

  SubsetMask& operator|=(const SubsetMask& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  SubsetMask& operator&=(const SubsetMask& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  // Set difference.
  SubsetMask& operator-=(const SubsetMask& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend SubsetMask operator|(SubsetMask a, const SubsetMask& b) { return a |= b; }
  friend SubsetMask operator&(SubsetMask a, const SubsetMask& b) { return a &= b; }
  friend SubsetMask operator-(SubsetMask a, const SubsetMask& b) { return a -= b; }
  friend bool operator==(const SubsetMask& a, const SubsetMask& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

  bool is_subset_of(const SubsetMask& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    return true;
  }

  // Visits members in ascending index order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      word_type w = words_[i];
      while (w != 0) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(w));
        fn(static_cast<Element>(i * kWordBits + bit));
        w &= w - 1;
      }
    }
  }
  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(count());
    for_each([&](Element j) { out.push_back(j); });
    return out;
  }

  std::span<const word_type> words() const { return {words_.data(), words_.size()}; }
  std::size_t hash() const {
    std::size_t h = n_ * 0x9e3779b97f4a7c15ULL;
    for (word_type w : words_) h = (h ^ (w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
    return h;
  }
  std::string to_string() const;

 private:
  void check(Element j) const {
    if (j >= n_) throw std::out_of_range("element " + std::to_string(j) + " outside [0, " +
                                         std::to_string(n_) + ")");
  }
  void same_universe(const SubsetMask& o) const {
    if (o.n_ != n_) throw std::invalid_argument("subset masks over different ground sets");
  }
  void trim() {
    const std::size_t tail = n_ % kWordBits;
    if (tail != 0 && !words_.empty()) words_.back() &= (word_type{1} << tail) - 1;
  }

  std::size_t n_ = 0;
  boost::container::small_vector<word_type, 4> words_;
};

// A subset of a ground set with at most 32 elements, packed in one word.
// Used by exhaustive enumeration paths where masks double as table indices.
class SmallMask {
 public:
  static constexpr std::size_t kMaxElements = 32;

  SmallMask() = default;
  explicit SmallMask(std::size_t n) : n_(static_cast<std::uint8_t>(n)) {
    if (n > kMaxElements) throw std::invalid_argument("SmallMask supports at most 32 elements");
  }
  static SmallMask full(std::size_t n) {
    return from_bits(n, n == 32 ? 0xffffffffULL : ((std::uint64_t{1} << n) - 1));
  }
  static SmallMask from_bits(std::size_t n, std::uint64_t bits) {
    SmallMask m(n);
    m.bits_ = static_cast<std::uint32_t>(bits) & full_bits(n);
    return m;
  }
  static SmallMask of(std::size_t n, std::initializer_list<Element> members) {
    SmallMask m(n);
    for (Element j : members) m.insert(j);
    return m;
  }

  std::size_t size() const { return n_; }
  std::size_t count() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool empty() const { return bits_ == 0; }
  std::uint32_t bits() const { return bits_; }

  bool contains(Element j) const { return j < n_ && ((bits_ >> j) & 1U) != 0; }
  void insert(Element j) { bits_ |= std::uint32_t{1} << j; }
  void erase(Element j) { bits_ &= ~(std::uint32_t{1} << j); }
  SmallMask with(Element j) const { return raw(n_, bits_ | (std::uint32_t{1} << j)); }
  SmallMask without(Element j) const { return raw(n_, bits_ & ~(std::uint32_t{1} << j)); }

  friend SmallMask operator|(SmallMask a, SmallMask b) { return raw(a.n_, a.bits_ | b.bits_); }
  friend SmallMask operator&(SmallMask a, SmallMask b) { return raw(a.n_, a.bits_ & b.bits_); }
  friend SmallMask operator-(SmallMask a, SmallMask b) { return raw(a.n_, a.bits_ & ~b.bits_); }
  friend bool operator==(SmallMask a, SmallMask b) = default;

  bool is_subset_of(SmallMask o) const { return (bits_ & ~o.bits_) == 0; }

  template <class Fn>
  void for_each(Fn&& fn) const {
    std::uint32_t w = bits_;
    while (w != 0) {
      fn(static_cast<Element>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  std::vector<Element> elements() const {
    std::vector<Element> out;
    for_each([&](Element j) { out.push_back(j); });
    return out;
  }
  std::size_t hash() const { return std::hash<std::uint32_t>{}(bits_); }

 private:
  static std::uint32_t full_bits(std::size_t n) {
    return n >= 32 ? 0xffffffffU : ((std::uint32_t{1} << n) - 1);
  }
  static SmallMask raw(std::uint8_t n, std::uint32_t bits) {
    SmallMask m;
    m.n_ = n;
    m.bits_ = bits;
    return m;
  }

  std::uint8_t n_ = 0;
  std::uint32_t bits_ = 0;
};

// Requirements shared by SubsetMask and SmallMask.
template <class M>
concept Mask = std::regular<M> && requires(const M& m, M& mut, Element j, std::size_t n,
                                           std::uint64_t bits) {
  { m.size() } -> std::convertible_to<std::size_t>;
  { m.count() } -> std::convertible_to<std::size_t>;
  { m.contains(j) } -> std::same_as<bool>;
  { m.with(j) } -> std::same_as<M>;
  { m.without(j) } -> std::same_as<M>;
  { m | m } -> std::same_as<M>;
  { m & m } -> std::same_as<M>;
  { m - m } -> std::same_as<M>;
  { m.is_subset_of(m) } -> std::same_as<bool>;
  { M::from_bits(n, bits) } -> std::same_as<M>;
  { M::full(n) } -> std::same_as<M>;
  mut.insert(j);
  mut.erase(j);
};

struct MaskHash {
  template <Mask M>
  std::size_t operator()(const M& m) const {
    return m.hash();
  }
};

// Renders "{0,2,5}".
template <Mask M>
std::string format_set(const M& m) {
  std::string s = "{";
  bool first = true;
  m.for_each([&](Element j) {
    if (!first) s += ',';
    s += std::to_string(j);
    first = false;
  });
  return s + "}";
}

inline std::string SubsetMask::to_string() const { return format_set(*this); }

}  // namespace submax

#endif  // SUBMAX_SUBSET_MASK_HPP_
