#pragma once

// Bounded model enumeration up to isomorphism.

#include <cstddef>
#include <vector>

#include "pmt/semantics.hpp"

namespace pmt::semantics {

/// Relation bits of a structure, symbol by symbol in signature order, each
/// symbol's table in tuple order. Read as a binary number with the last bit
/// most significant.
Bitset encoding(const FiniteStructure &m);

/// Compare encodings as binary numbers (highest index most significant).
bool encoding_less(const Bitset &a, const Bitset &b);

/// The isomorphic copy of m whose encoding is least.
FiniteStructure canonical_form(const FiniteStructure &m);

bool isomorphic(const FiniteStructure &a, const FiniteStructure &b);

/// Every structure of size 1..max_size satisfying the axioms, one per
/// isomorphism class (the canonical representative), ordered by size and
/// then by encoding. Names are "M<size>_<k>". Throws Error when a size
/// needs more than 30 relation bits.
std::vector<FiniteStructure> find_models(const std::vector<HInductiveSentence> &axioms, const Signature &sig,
                                         std::size_t max_size);

}  // namespace pmt::semantics
