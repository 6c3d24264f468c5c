#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pmt/semantics.hpp"

namespace pmt::semantics {

/// Total map from the source universe to the target universe. The
/// structures themselves are passed alongside wherever they matter.
struct Homomorphism {
  std::vector<Element> image;
  Element operator()(Element e) const { return image[e]; }
  bool operator==(const Homomorphism &) const = default;
  bool operator<(const Homomorphism &o) const { return image < o.image; }
};

bool is_homomorphism(const FiniteStructure &m, const FiniteStructure &n, const Homomorphism &h);

/// All homomorphisms m -> n, sorted by image vector. Backtracking over
/// source elements in ascending degree, domains pruned by unary projections
/// and by generalised arc consistency on each relation tuple touched by an
/// assignment. limit, when set, stops after that many solutions (the result
/// is then the first ones in search order, still sorted).
std::vector<Homomorphism> homomorphisms(const FiniteStructure &m, const FiniteStructure &n,
                                        std::optional<std::size_t> limit = std::nullopt);

bool exists_homomorphism(const FiniteStructure &m, const FiniteStructure &n);

Homomorphism compose(const Homomorphism &g, const Homomorphism &f);

/// Substructure induced on the listed elements; element i of the result is
/// elements[i].
FiniteStructure induced_substructure(const FiniteStructure &m, const std::vector<Element> &elements);

/// Tests whether `elements` enumerates a positively closed model, by the
/// finite criterion: for every tuple a from A of length <= arity_bound and
/// every conjunction phi(x, y) of at most qf_budget atoms, either phi(a, b)
/// holds in M for some b from A, or the positive diagram of A is
/// incompatible with exists y phi(a, y) in every member of the class. The
/// strongest available blocking formula chi is the diagram of A itself,
/// so the second alternative reduces to: no homomorphism g from the
/// substructure on A into a member N has N |= exists y phi(g a, y).
bool check_enumeration_condition(const std::vector<Element> &elements, const FiniteStructure &m,
                                 const ModelClass &cls, std::size_t qf_budget, std::size_t arity_bound);

}  // namespace pmt::semantics
