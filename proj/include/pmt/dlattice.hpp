#pragma once

// Finite bounded distributive lattices, either concrete (elements are
// set-vectors over a list of carriers, operations are pointwise) or
// abstract (explicit meet/join tables).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pmt/bitset.hpp"
#include "pmt/error.hpp"
#include "pmt/syntax.hpp"

namespace pmt::lattice {

using Index = std::uint32_t;
using syntax::Formula;

constexpr std::size_t kDefaultElementCap = 4096;

/// Table validation failure. `identity` names the law, `witness` holds the
/// offending element indices (one to three of them).
class LatticeError : public Error {
 public:
  LatticeError(std::string identity, std::vector<Index> witness, const std::string &msg)
      : Error(msg), identity_(std::move(identity)), witness_(std::move(witness)) {}
  const std::string &identity() const { return identity_; }
  const std::vector<Index> &witness() const { return witness_; }

 private:
  std::string identity_;
  std::vector<Index> witness_;
};

class DLattice {
 public:
  /// Checks every lattice law plus distributivity and the bounds. Throws
  /// LatticeError naming the first failure.
  static DLattice validate(std::vector<std::vector<Index>> meet, std::vector<std::vector<Index>> join, Index bottom,
                           Index top, std::vector<std::string> labels = {});

  /// Elements must already form a family closed under intersection and union
  /// containing the empty and full vectors. They are stored in canonical
  /// (lexicographic) order; witnesses follow their sets.
  static DLattice from_closed_family(std::vector<std::size_t> carriers, std::vector<Bitset> sets,
                                     std::vector<std::optional<Formula>> witnesses = {});

  std::size_t size() const { return n_; }
  Index bottom() const { return bottom_; }
  Index top() const { return top_; }
  Index meet(Index a, Index b) const;
  Index join(Index a, Index b) const;
  bool leq(Index a, Index b) const;

  bool has_sets() const { return !sets_.empty(); }
  const Bitset &set(Index a) const { return sets_[a]; }
  const std::vector<std::size_t> &carriers() const { return carriers_; }
  std::optional<Index> find(const Bitset &s) const;

  const std::optional<Formula> &witness(Index a) const { return witnesses_[a]; }
  /// Printed witness if present, else the explicit label, else "e<i>".
  std::string label(Index a) const;

  /// Non-bottom elements that are not the join of two strictly smaller ones.
  std::vector<Index> join_irreducibles() const;
  /// Prime filters as bitsets over element indices, via the principal
  /// filters of join-irreducibles; sorted by lexicographic bitset order.
  std::vector<Bitset> prime_filters() const;
  bool is_prime_filter(const Bitset &f) const;
  std::optional<Index> complement(Index a) const;

  /// Order dual: same element indices, meet and join exchanged. Concrete
  /// lattices stay concrete by complementing every set.
  DLattice opposite() const;

  std::vector<std::vector<Index>> meet_table() const;
  std::vector<std::vector<Index>> join_table() const;

 private:
  DLattice() = default;
  std::size_t n_ = 0;
  Index bottom_ = 0;
  Index top_ = 0;
  // abstract form
  std::vector<Index> meet_;
  std::vector<Index> join_;
  // concrete form
  std::vector<std::size_t> carriers_;
  std::vector<Bitset> sets_;
  std::unordered_map<Bitset, Index, BitsetHash> index_;
  std::vector<std::optional<Formula>> witnesses_;
  std::vector<std::string> labels_;
};

using LatticePtr = std::shared_ptr<const DLattice>;

/// Smallest family containing the generators, the empty and the full vector,
/// closed under pointwise intersection and union. Witnesses combine as
/// conjunction and disjunction. Throws CapExceeded(arity_tag, cap).
DLattice from_set_family(const std::vector<std::size_t> &carriers, const std::vector<Bitset> &generators,
                         const std::vector<std::optional<Formula>> &witnesses = {},
                         std::size_t cap = kDefaultElementCap, std::size_t arity_tag = 0);

struct LatticeHom {
  LatticePtr source;
  LatticePtr target;
  std::vector<Index> map;
};

/// Preserves meet, join, bottom and top.
bool is_lattice_hom(const LatticeHom &h);
/// Maps are composed as functions: (g after f).
LatticeHom compose(const LatticeHom &g, const LatticeHom &f);

}  // namespace pmt::lattice
