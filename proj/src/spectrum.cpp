#include "pmt/spectrum.hpp"

#include <algorithm>
#include <unordered_set>
#include <stdexcept>

namespace pmt::spectrum {

SpectralSpace spec(LatticePtr L) {
  SpectralSpace s;
  s.lattice = L;
  s.points = L->prime_filters();
  for (Index a = 0; a < L->size(); ++a) {
    Bitset b(s.points.size());
    for (std::size_t p = 0; p < s.points.size(); ++p)
      if (s.points[p].test(a)) b.set(p);
    s.basic.push_back(std::move(b));
  }
  return s;
}

Bitset closure(const SpectralSpace &s, const Bitset &a) {
  Bitset outside = s.empty_set();
  for (const auto &u : s.basic)
    if (!u.intersects(a)) outside |= u;
  return ~outside;
}

Bitset interior(const SpectralSpace &s, const Bitset &a) {
  Bitset in = s.empty_set();
  for (const auto &u : s.basic)
    if (u.is_subset_of(a)) in |= u;
  return in;
}

bool is_open(const SpectralSpace &s, const Bitset &a) { return interior(s, a) == a; }
bool is_closed(const SpectralSpace &s, const Bitset &a) { return closure(s, a) == a; }

namespace {

// Smallest open around each point. Every open meeting a set A contains the
// neighbourhood of some point of A, so A is irreducible iff the
// neighbourhoods of any two of its points meet inside A.
std::vector<Bitset> neighbourhoods(const SpectralSpace &s) {
  std::vector<Bitset> out(s.size(), s.all_points());
  for (const auto &u : s.basic)
    for (std::size_t p : u.indices()) out[p] &= u;
  return out;
}

bool irreducible_with(const std::vector<Bitset> &nbhd, const Bitset &a) {
  if (a.none()) return false;
  auto pts = a.indices();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i; j < pts.size(); ++j)
      if (!(nbhd[pts[i]] & nbhd[pts[j]]).intersects(a)) return false;
  return true;
}

std::vector<Bitset> point_closures(const SpectralSpace &s) {
  std::vector<Bitset> out;
  for (std::size_t p = 0; p < s.size(); ++p) {
    Bitset single = s.empty_set();
    single.set(p);
    out.push_back(closure(s, single));
  }
  return out;
}

}  // namespace

bool is_irreducible(const SpectralSpace &s, const Bitset &a) { return irreducible_with(neighbourhoods(s), a); }

std::vector<Component> irreducible_components(const SpectralSpace &s) {
  std::vector<Component> out;
  for (std::size_t p = 0; p < s.size(); ++p) {
    bool maximal = true;
    for (std::size_t q = 0; q < s.size() && maximal; ++q)
      if (q != p && s.specializes(p, q)) maximal = false;
    if (!maximal) continue;
    Bitset single = s.empty_set();
    single.set(p);
    out.push_back({p, closure(s, single)});
  }
  return out;
}

std::size_t generic_point(const SpectralSpace &s, const Bitset &c) {
  if (!is_closed(s, c)) throw Error("generic_point: set is not closed");
  if (!is_irreducible(s, c)) throw Error("generic_point: set is not irreducible");
  std::optional<std::size_t> found;
  for (std::size_t p : c.indices()) {
    Bitset single = s.empty_set();
    single.set(p);
    if (closure(s, single) == c) {
      if (found) throw Error("generic_point: generic point is not unique");
      found = p;
    }
  }
  if (!found) throw Error("generic_point: no generic point");
  return *found;
}

bool is_t0(const SpectralSpace &s) {
  for (std::size_t p = 0; p < s.size(); ++p)
    for (std::size_t q = p + 1; q < s.size(); ++q) {
      bool separated = false;
      for (const auto &u : s.basic)
        if (u.test(p) != u.test(q)) {
          separated = true;
          break;
        }
      if (!separated) return false;
    }
  return true;
}

bool is_sober(const SpectralSpace &s) {
  // The basis comes from a lattice ([a] | [b] = [a v b]), so the opens are
  // exactly the basic opens and the closed sets their complements.
  auto nbhd = neighbourhoods(s);
  auto closures = point_closures(s);
  std::unordered_set<Bitset, BitsetHash> seen;
  for (const auto &u : s.basic) {
    Bitset c = ~u;
    if (!seen.insert(c).second || !irreducible_with(nbhd, c)) continue;
    std::size_t generic = 0;
    for (std::size_t p : c.indices())
      if (closures[p] == c) ++generic;
    if (generic != 1) return false;
  }
  return true;
}

bool points_separated(const SpectralSpace &s) {
  for (std::size_t p = 0; p < s.size(); ++p)
    for (std::size_t q = p + 1; q < s.size(); ++q) {
      bool separated = false;
      for (const auto &u : s.basic) {
        if (!u.test(p) || u.test(q)) continue;
        for (const auto &v : s.basic)
          if (v.test(q) && !v.test(p) && !u.intersects(v)) {
            separated = true;
            break;
          }
        if (separated) break;
      }
      if (!separated) return false;
    }
  return true;
}

bool all_complemented(const DLattice &L) {
  for (Index a = 0; a < L.size(); ++a)
    if (!L.complement(a)) return false;
  return true;
}

bool is_hausdorff(const SpectralSpace &s) {
  bool sep = points_separated(s);
  bool comp = all_complemented(*s.lattice);
  if (sep != comp) throw std::logic_error("is_hausdorff: separation and complementation disagree");
  return sep;
}

DLattice compact_opens(const SpectralSpace &s, std::vector<Index> *element_map) {
  std::vector<Bitset> sets;
  std::vector<std::optional<syntax::Formula>> wit;
  for (Index a = 0; a < s.basic.size(); ++a) {
    sets.push_back(s.basic[a]);
    wit.push_back(s.lattice->witness(a));
  }
  // the basis of a finite spectrum is already closed under both operations
  DLattice out = DLattice::from_closed_family({s.size()}, sets, wit);
  if (element_map) {
    element_map->clear();
    for (const auto &b : s.basic) element_map->push_back(*out.find(b));
  }
  return out;
}

SpectralSpace hochster_dual(const SpectralSpace &s) {
  return spec(std::make_shared<const DLattice>(s.lattice->opposite()));
}

Bitset preimage(const SpectralMap &f, const Bitset &b) {
  Bitset out = f.source->empty_set();
  for (std::size_t p = 0; p < f.map.size(); ++p)
    if (b.test(f.map[p])) out.set(p);
  return out;
}

Bitset image(const SpectralMap &f, const Bitset &a) {
  Bitset out = f.target->empty_set();
  for (std::size_t p : a.indices()) out.set(f.map[p]);
  return out;
}

bool is_spectral(const SpectralMap &f) {
  for (const auto &u : f.target->basic)
    if (!is_open(*f.source, preimage(f, u))) return false;
  return true;
}

bool is_open_map(const SpectralMap &f) {
  for (const auto &u : f.source->basic)
    if (!is_open(*f.target, image(f, u))) return false;
  return true;
}

bool is_homeomorphism(const SpectralMap &f) {
  if (f.source->size() != f.target->size()) return false;
  Bitset hit = f.target->empty_set();
  for (std::size_t q : f.map) hit.set(q);
  if (hit.count() != f.target->size()) return false;
  return is_spectral(f) && is_open_map(f);
}

SpectralMap compose(const SpectralMap &g, const SpectralMap &f) {
  SpectralMap out{f.source, g.target, {}};
  for (std::size_t p : f.map) out.map.push_back(g.map[p]);
  return out;
}

InducedMap spectral_map_from_hom(const lattice::LatticeHom &h, const SpectralSpace &spec_source,
                                 const SpectralSpace &spec_target) {
  InducedMap out;
  out.map.source = &spec_target;
  out.map.target = &spec_source;
  const auto &S = *h.source;
  for (const auto &p : spec_target.points) {
    Bitset pulled(S.size());
    for (Index a = 0; a < S.size(); ++a)
      if (p.test(h.map[a])) pulled.set(a);
    auto it = std::find(spec_source.points.begin(), spec_source.points.end(), pulled);
    if (it == spec_source.points.end())
      throw std::logic_error("spectral_map_from_hom: preimage of a prime filter is not prime");
    out.map.map.push_back(static_cast<std::size_t>(it - spec_source.points.begin()));
  }
  out.spectral = is_spectral(out.map);
  out.open = is_open_map(out.map);
  return out;
}

}  // namespace pmt::spectrum
