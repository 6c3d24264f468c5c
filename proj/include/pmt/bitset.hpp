#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pmt/kernels/bitops.hpp"

namespace pmt {

/// Fixed-length packed bitset. Bits past size() are always zero, so word
/// comparisons double as set comparisons.
class Bitset {
 public:
  using Word = kernels::Word;
  static constexpr std::size_t kWordBits = 64;

  Bitset() = default;
  explicit Bitset(std::size_t nbits, bool value = false);

  static Bitset full(std::size_t nbits) { return Bitset(nbits, true); }

  std::size_t size() const { return nbits_; }
  std::size_t word_count() const { return words_.size(); }
  const std::vector<Word> &words() const { return words_; }

  bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i, bool v = true);
  void reset(std::size_t i) { set(i, false); }

  bool any() const;
  bool none() const { return !any(); }
  std::size_t count() const;

  bool is_subset_of(const Bitset &other) const;
  bool intersects(const Bitset &other) const;

  Bitset operator&(const Bitset &o) const;
  Bitset operator|(const Bitset &o) const;
  /// Set difference: this minus o.
  Bitset operator-(const Bitset &o) const;
  Bitset operator~() const;
  Bitset &operator&=(const Bitset &o);
  Bitset &operator|=(const Bitset &o);

  bool operator==(const Bitset &o) const;

  /// Order used for canonical element lists: bit strings compared
  /// lexicographically with bit 0 most significant. The empty set is least
  /// and the full set greatest.
  std::strong_ordering lex_compare(const Bitset &o) const;

  /// Indices of set bits, ascending.
  std::vector<std::size_t> indices() const;
  /// "0110..." with bit 0 first.
  std::string to_string() const;
  static Bitset from_string(const std::string &s);

  std::size_t hash() const;

 private:
  void trim();

  std::size_t nbits_ = 0;
  std::vector<Word> words_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset &b) const { return b.hash(); }
};

struct BitsetLexLess {
  bool operator()(const Bitset &a, const Bitset &b) const { return a.lex_compare(b) < 0; }
};

}  // namespace pmt
