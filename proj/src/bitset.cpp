#include "pmt/bitset.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>

namespace pmt {

Bitset::Bitset(std::size_t nbits, bool value)
    : nbits_(nbits), words_((nbits + kWordBits - 1) / kWordBits, value ? ~Word{0} : Word{0}) {
  trim();
}

void Bitset::trim() {
  if (nbits_ % kWordBits != 0 && !words_.empty())
    words_.back() &= (Word{1} << (nbits_ % kWordBits)) - 1;
}

void Bitset::set(std::size_t i, bool v) {
  assert(i < nbits_);
  Word mask = Word{1} << (i % kWordBits);
  if (v)
    words_[i / kWordBits] |= mask;
  else
    words_[i / kWordBits] &= ~mask;
}

bool Bitset::any() const { return kernels::active().any(words_.data(), words_.size()); }

std::size_t Bitset::count() const { return kernels::active().popcount(words_.data(), words_.size()); }

bool Bitset::is_subset_of(const Bitset &o) const {
  assert(nbits_ == o.nbits_);
  return kernels::active().is_subset(words_.data(), o.words_.data(), words_.size());
}

bool Bitset::intersects(const Bitset &o) const {
  assert(nbits_ == o.nbits_);
  return kernels::active().intersects(words_.data(), o.words_.data(), words_.size());
}

Bitset Bitset::operator&(const Bitset &o) const {
  Bitset r = *this;
  r &= o;
  return r;
}

Bitset Bitset::operator|(const Bitset &o) const {
  Bitset r = *this;
  r |= o;
  return r;
}

Bitset Bitset::operator-(const Bitset &o) const {
  assert(nbits_ == o.nbits_);
  Bitset r(nbits_);
  kernels::active().andnot_into(r.words_.data(), words_.data(), o.words_.data(), words_.size());
  return r;
}

Bitset Bitset::operator~() const {
  Bitset r = *this;
  for (auto &w : r.words_) w = ~w;
  r.trim();
  return r;
}

Bitset &Bitset::operator&=(const Bitset &o) {
  assert(nbits_ == o.nbits_);
  kernels::active().and_into(words_.data(), words_.data(), o.words_.data(), words_.size());
  return *this;
}

Bitset &Bitset::operator|=(const Bitset &o) {
  assert(nbits_ == o.nbits_);
  kernels::active().or_into(words_.data(), words_.data(), o.words_.data(), words_.size());
  return *this;
}

bool Bitset::operator==(const Bitset &o) const {
  return nbits_ == o.nbits_ && kernels::active().equal(words_.data(), o.words_.data(), words_.size());
}

std::strong_ordering Bitset::lex_compare(const Bitset &o) const {
  if (nbits_ != o.nbits_) return nbits_ <=> o.nbits_;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    Word diff = words_[w] ^ o.words_[w];
    if (diff == 0) continue;
    // lowest differing bit decides, since bit 0 is the most significant
    Word low = diff & (~diff + 1);
    return (words_[w] & low) ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

std::vector<std::size_t> Bitset::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    Word x = words_[w];
    while (x) {
      out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
  return out;
}

std::string Bitset::to_string() const {
  std::string s(nbits_, '0');
  for (std::size_t i = 0; i < nbits_; ++i)
    if (test(i)) s[i] = '1';
  return s;
}

Bitset Bitset::from_string(const std::string &s) {
  Bitset b(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      b.set(i);
    else if (s[i] != '0')
      throw std::invalid_argument("bitset string must contain only '0' and '1'");
  }
  return b;
}

std::size_t Bitset::hash() const {
  std::size_t h = std::hash<std::size_t>{}(nbits_);
  for (Word w : words_) h ^= std::hash<Word>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace pmt
