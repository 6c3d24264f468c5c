#include "pmt/models.hpp"

#include <algorithm>
#include <numeric>

#include "pmt/error.hpp"
#include "pmt/homomorphism.hpp"

namespace pmt::semantics {

namespace {

std::vector<std::size_t> offsets(const Signature &sig, std::size_t size) {
  std::vector<std::size_t> out;
  std::size_t acc = 0;
  for (const auto &s : sig.symbols()) {
    out.push_back(acc);
    acc += tuple_count(size, s.arity);
  }
  out.push_back(acc);
  return out;
}

// Encoding of the copy of m obtained by renaming element e to perm[e].
Bitset permuted_encoding(const FiniteStructure &m, const std::vector<std::size_t> &off,
                         const std::vector<Element> &perm) {
  Bitset out(off.back());
  for (std::size_t s = 0; s < m.signature().size(); ++s)
    for (const auto &t : m.tuples(s)) {
      Tuple u(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) u[i] = perm[t[i]];
      out.set(off[s] + tuple_index(u, m.size()));
    }
  return out;
}

FiniteStructure decode(const Signature &sig, std::size_t size, const std::vector<std::size_t> &off,
                       const Bitset &code) {
  FiniteStructure m(sig, size);
  for (std::size_t s = 0; s < sig.size(); ++s) {
    std::size_t arity = sig.symbols()[s].arity;
    for (std::size_t i = off[s]; i < off[s + 1]; ++i)
      if (code.test(i)) m.add_tuple(s, tuple_at(i - off[s], arity, size));
  }
  return m;
}

}  // namespace

Bitset encoding(const FiniteStructure &m) {
  std::vector<Element> id(m.size());
  std::iota(id.begin(), id.end(), Element{0});
  return permuted_encoding(m, offsets(m.signature(), m.size()), id);
}

bool encoding_less(const Bitset &a, const Bitset &b) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a.test(i) != b.test(i)) return b.test(i);
  return false;
}

FiniteStructure canonical_form(const FiniteStructure &m) {
  auto off = offsets(m.signature(), m.size());
  std::vector<Element> perm(m.size());
  std::iota(perm.begin(), perm.end(), Element{0});
  Bitset best = permuted_encoding(m, off, perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    Bitset e = permuted_encoding(m, off, perm);
    if (encoding_less(e, best)) best = e;
  }
  FiniteStructure out = decode(m.signature(), m.size(), off, best);
  out.set_name(m.name());
  return out;
}

bool isomorphic(const FiniteStructure &a, const FiniteStructure &b) {
  if (!(a.signature() == b.signature()) || a.size() != b.size()) return false;
  if (encoding(a).count() != encoding(b).count()) return false;
  return encoding(canonical_form(a)) == encoding(canonical_form(b));
}

std::vector<FiniteStructure> find_models(const std::vector<HInductiveSentence> &axioms, const Signature &sig,
                                         std::size_t max_size) {
  if (max_size == 0) throw Error("find_models: max_size must be at least 1");
  std::vector<FiniteStructure> out;
  for (std::size_t size = 1; size <= max_size; ++size) {
    auto off = offsets(sig, size);
    std::size_t nbits = off.back();
    if (nbits > 30) throw Error("find_models: size " + std::to_string(size) + " needs " + std::to_string(nbits) +
                                " relation bits (limit 30)");
    std::vector<std::vector<Element>> perms;
    std::vector<Element> perm(size);
    std::iota(perm.begin(), perm.end(), Element{0});
    while (std::next_permutation(perm.begin(), perm.end())) perms.push_back(perm);

    std::size_t found = 0;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << nbits); ++code) {
      Bitset bits(nbits);
      for (std::size_t i = 0; i < nbits; ++i)
        if ((code >> i) & 1U) bits.set(i);
      FiniteStructure m = decode(sig, size, off, bits);
      bool canonical = true;
      for (const auto &p : perms)
        if (encoding_less(permuted_encoding(m, off, p), bits)) {
          canonical = false;
          break;
        }
      if (!canonical) continue;
      bool ok = true;
      Evaluator ev(m);
      for (const auto &ax : axioms)
        if (!ev.satisfies(ax)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      m.set_name("M" + std::to_string(size) + "_" + std::to_string(found++));
      out.push_back(std::move(m));
    }
  }
  return out;
}

}  // namespace pmt::semantics
