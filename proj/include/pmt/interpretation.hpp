#pragma once

// Interpretations of one relational theory in another, the induced
// reducts, and the natural transformation beta between type-space functors.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pmt/typespace.hpp"

namespace pmt::typespace {

using syntax::Signature;

struct Interpretation {
  std::string name;
  Signature source;  // symbols being interpreted
  Signature target;  // signature of the formulas
  /// Gamma(R), free variables among x0..x{arity-1}.
  std::map<std::string, Formula> mapping;

  /// Every source symbol mapped, formulas positive and over the target
  /// signature with free variables in range. Throws Error.
  void check() const;
};

Interpretation identity_interpretation(const Signature &sig);

/// Gamma(phi): atoms replaced by their images, equality kept.
Formula interpret(const Interpretation &g, const Formula &phi);

/// The source-signature structure Gamma*(m).
FiniteStructure reduct(const Interpretation &g, const FiniteStructure &m);

/// Every reduct of a member of the target class satisfies the axioms.
bool verify_interpretation(const Interpretation &g, const ModelClass &target_class,
                           const std::vector<syntax::HInductiveSentence> &source_axioms);

struct NaturalIso {
  bool bijective = false;     // every beta_n a bijection of points
  bool homeomorphic = false;  // and a homeomorphism
  bool natural = false;       // all squares with f : n -> m commute
  bool inverse_ok = true;     // the candidate inverse undoes Gamma on the lattices
  std::string failure;
  /// beta_n : S_n(target theory) -> S_n(source theory).
  std::vector<spectrum::SpectralMap> beta;
  std::vector<lattice::LatticeHom> lattice_maps;  // a |-> [Gamma(phi_a)]
  bool ok() const { return bijective && homeomorphic && natural && inverse_ok; }
};

/// `source_ctx` is the theory whose symbols Gamma interprets, `target_ctx`
/// the theory the formulas live in. Both must share n_max.
NaturalIso natural_iso_check(const Interpretation &g, const TheoryContext &source_ctx,
                             const TheoryContext &target_ctx, const Interpretation *inverse = nullptr);

}  // namespace pmt::typespace
