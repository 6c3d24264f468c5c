#pragma once

// The spectral space of a finite distributive lattice: points are prime
// filters, the basic opens are [a] = {p : a in p}.

#include <cstddef>
#include <optional>
#include <vector>

#include "pmt/bitset.hpp"
#include "pmt/dlattice.hpp"

namespace pmt::spectrum {

using lattice::DLattice;
using lattice::Index;
using lattice::LatticePtr;

struct SpectralSpace {
  LatticePtr lattice;
  std::vector<Bitset> points;  // prime filters over lattice elements
  std::vector<Bitset> basic;   // per lattice element, a set of points

  std::size_t size() const { return points.size(); }
  /// q lies in the closure of p, i.e. q is contained in p as filters.
  bool specializes(std::size_t q, std::size_t p) const { return points[q].is_subset_of(points[p]); }
  Bitset empty_set() const { return Bitset(points.size()); }
  Bitset all_points() const { return Bitset::full(points.size()); }
};

SpectralSpace spec(LatticePtr L);

Bitset closure(const SpectralSpace &s, const Bitset &a);
Bitset interior(const SpectralSpace &s, const Bitset &a);
bool is_open(const SpectralSpace &s, const Bitset &a);
bool is_closed(const SpectralSpace &s, const Bitset &a);
/// Nonempty and any two basic opens meeting it meet inside it.
bool is_irreducible(const SpectralSpace &s, const Bitset &a);

struct Component {
  std::size_t generic;
  Bitset points;
};

/// Closures of the inclusion-maximal points, ordered by generic point.
std::vector<Component> irreducible_components(const SpectralSpace &s);
/// Throws Error when c is not an irreducible closed set.
std::size_t generic_point(const SpectralSpace &s, const Bitset &c);

bool is_t0(const SpectralSpace &s);
/// Every irreducible closed set has exactly one generic point, checked over
/// all closed sets (complements of basic opens).
bool is_sober(const SpectralSpace &s);

/// Pairwise separation by disjoint basic opens. Also computes whether every
/// lattice element has a complement and throws std::logic_error if the two
/// disagree.
bool is_hausdorff(const SpectralSpace &s);
bool points_separated(const SpectralSpace &s);
bool all_complemented(const DLattice &L);

/// Lattice of opens generated by the basis, as sets of points. element_map
/// receives, for each source lattice element a, the index of [a].
DLattice compact_opens(const SpectralSpace &s, std::vector<Index> *element_map = nullptr);

SpectralSpace hochster_dual(const SpectralSpace &s);

struct SpectralMap {
  const SpectralSpace *source = nullptr;
  const SpectralSpace *target = nullptr;
  std::vector<std::size_t> map;
};

/// Preimage of every basic open of the target is open.
bool is_spectral(const SpectralMap &f);
/// Image of every basic open of the source is open.
bool is_open_map(const SpectralMap &f);
/// Bijective, continuous, with continuous inverse.
bool is_homeomorphism(const SpectralMap &f);
Bitset preimage(const SpectralMap &f, const Bitset &b);
Bitset image(const SpectralMap &f, const Bitset &a);
/// g after f.
SpectralMap compose(const SpectralMap &g, const SpectralMap &f);

struct InducedMap {
  SpectralMap map;
  bool spectral = false;
  bool open = false;
};

/// For h : L -> L', the map spec(L') -> spec(L), p' |-> h^-1(p'). The two
/// spaces must be spec(h.source) and spec(h.target). Throws logic_error if
/// a pulled back filter is not a point.
InducedMap spectral_map_from_hom(const lattice::LatticeHom &h, const SpectralSpace &spec_source,
                                 const SpectralSpace &spec_target);

}  // namespace pmt::spectrum
