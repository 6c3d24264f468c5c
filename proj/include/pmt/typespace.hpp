#pragma once

// Definable-set lattices L_n of a finite model class, the type spaces
// S_n = spec(L_n), the maps f* between them, and the theory-level checks.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pmt/dlattice.hpp"
#include "pmt/homomorphism.hpp"
#include "pmt/semantics.hpp"
#include "pmt/spectrum.hpp"

namespace pmt::typespace {

using lattice::DLattice;
using lattice::Index;
using semantics::Element;
using semantics::FiniteStructure;
using semantics::ModelClass;
using semantics::Tuple;
using spectrum::SpectralSpace;
using syntax::Formula;
using syntax::OrdinalMap;

enum class Stabilization { NotProbed, Stable, Changed, ProbeExceededCap };
std::string to_string(Stabilization s);

struct BuildOptions {
  std::size_t n_max = 2;
  std::size_t budget = 2;  // quantified variables beyond n_max
  std::size_t cap = lattice::kDefaultElementCap;
  bool probe = true;  // rebuild with budget+1 and compare
};

/// Element vectors at arity n concatenate, model by model, the tuple tables
/// over |M_i|^n.
class TheoryContext {
 public:
  ModelClass cls;
  BuildOptions options;
  std::vector<std::shared_ptr<const DLattice>> lattices;  // L_0..L_{n_max}
  std::vector<SpectralSpace> spaces;                      // S_0..S_{n_max}
  Stabilization stabilization = Stabilization::NotProbed;

  std::size_t n_max() const { return options.n_max; }
  std::vector<std::size_t> carriers(std::size_t n) const;
  /// Bit offset of model i's table at arity n.
  std::size_t offset(std::size_t model, std::size_t n) const;
  /// Denotation vector of a formula with free variables among x0..x{n-1}.
  Bitset vector_of(const Formula &phi, std::size_t n) const;
  /// Lattice element of a formula, if its vector is in L_n.
  std::optional<Index> element_of(const Formula &phi, std::size_t n) const;
};

/// Throws CapExceeded naming the arity whose family outgrew the cap.
TheoryContext build(const ModelClass &cls, const BuildOptions &opts = {});

const SpectralSpace &type_space(const TheoryContext &ctx, std::size_t n);

/// The filter {a : tuple in a's component at the given member}, as a point
/// index of S_n.
std::size_t tp(const TheoryContext &ctx, std::size_t model, const Tuple &tuple);
/// Same, for a member given by value; throws Error if not in the class.
std::size_t tp(const TheoryContext &ctx, const FiniteStructure &m, const Tuple &tuple);

/// Complete type of a point: witnesses inside the filter, and those outside
/// read negatively.
struct CompleteType {
  std::vector<Formula> positive;
  std::vector<Formula> negative;
};
CompleteType complete_type(const TheoryContext &ctx, std::size_t n, std::size_t point);

struct FStar {
  lattice::LatticeHom hom;    // L_n -> L_m, a |-> substitute(a, f)
  spectrum::SpectralMap map;  // S_m -> S_n
  bool spectral = false;
  bool open = false;
  bool preimage_identity = false;  // f*^-1[a] = [subst(a)]
  bool image_identity = false;     // f*[psi] = [exists-image of psi]
};

/// Throws Error when n or m exceeds n_max.
FStar f_star(const TheoryContext &ctx, const OrdinalMap &f);

// ---------------------------------------------------------------------------
// Structures outside the class

/// Types realised by an arbitrary structure. models_theory is false when the
/// structure breaks an axiom or identifies formulas the class keeps apart
/// (so it is not a model of the theory within the window); types are only
/// filled in when it is a model. types[n][tuple index] is a point of S_n.
struct ForeignTypes {
  bool models_theory = false;
  std::vector<std::vector<std::size_t>> types;
};
ForeignTypes realized_types(const TheoryContext &ctx, const FiniteStructure &m);

/// Every type m realises (arity <= n_max) is a maximal point.
bool pc_by_maximal_types(const TheoryContext &ctx, const ForeignTypes &t);

/// h : m -> n preserves the type of every tuple of length <= n_max. Both
/// structures must be models of the theory (Error otherwise).
bool is_immersion(const TheoryContext &ctx, const FiniteStructure &m, const FiniteStructure &n,
                  const semantics::Homomorphism &h);

/// Every homomorphism from m into a member of the class is an immersion.
bool is_positively_closed_semantic(const TheoryContext &ctx, const FiniteStructure &m);

// ---------------------------------------------------------------------------
// Checks

struct PmcVerdict {
  std::size_t n;
  bool hausdorff;
  bool complemented;
};
std::vector<PmcVerdict> check_pmc(const TheoryContext &ctx);

struct AmalgamationVerdict {
  std::size_t n;
  bool disjoint;
  std::optional<std::size_t> shared_point;
  std::optional<std::size_t> generic_a;
  std::optional<std::size_t> generic_b;
};
std::vector<AmalgamationVerdict> check_amalgamation(const TheoryContext &ctx);

/// Components of a space are pairwise disjoint; the witness fields are filled
/// otherwise.
AmalgamationVerdict components_disjoint(const SpectralSpace &s, std::size_t n);

/// Bottom of L_0 is meet-prime; also compared with irreducibility of S_0
/// (throws logic_error on disagreement).
bool check_jcp(const TheoryContext &ctx);

/// Arity-0 elements outside the point, read negatively.
std::vector<Index> restrict_pi(const TheoryContext &ctx, std::size_t point);

/// A closed set of S_n given by elements read negatively:
/// [p] = complement of the union of [a_i].
struct PiType {
  std::size_t n = 0;
  std::vector<Index> elements;
  std::vector<Formula> witnesses;
};
Bitset closed_set(const TheoryContext &ctx, const PiType &p);

struct SupportResult {
  std::optional<Index> support;  // the largest support (supports are closed under joins)
  Bitset region;                 // [p]
  Bitset interior;               // interior of [p]; empty exactly when support is absent
};
SupportResult support_of(const TheoryContext &ctx, const PiType &p);

/// Every Pi-type realised by a tuple of m (length <= n_max) has a support.
bool is_atomic(const TheoryContext &ctx, const FiniteStructure &m);

struct ModelFlags {
  std::string name;
  bool pc_maximal = false;
  bool pc_semantic = false;
  bool atomic = false;
  bool prime = false;
};
struct PcPrimeReport {
  std::vector<ModelFlags> models;
  /// Among positively closed members, prime agrees with atomic. Only
  /// asserted for theories with the joint continuation property; empty
  /// otherwise.
  std::optional<bool> prime_iff_atomic;
};
PcPrimeReport pc_and_prime_report(const TheoryContext &ctx);

/// Every irreducible component has nonempty interior.
bool countcat_condition(const SpectralSpace &s);
/// Points whose closure has nonempty interior meet every nonempty basic open.
bool somewhere_dense_density(const SpectralSpace &s);
std::vector<bool> check_countcat_condition(const TheoryContext &ctx);
std::vector<bool> check_somewhere_dense_density(const TheoryContext &ctx);

/// Thrown by omitting_search when a target has a support.
class SupportedTarget : public Error {
 public:
  SupportedTarget(std::size_t target, Index support, std::string formula)
      : Error("target " + std::to_string(target) + " has support " + formula),
        target_(target),
        support_(support),
        formula_(std::move(formula)) {}
  std::size_t target() const { return target_; }
  Index support() const { return support_; }
  const std::string &formula() const { return formula_; }

 private:
  std::size_t target_;
  Index support_;
  std::string formula_;
};

/// Realises the Pi-type: its filter avoids every listed element.
bool realizes(const TheoryContext &ctx, const ForeignTypes &t, const PiType &p);

/// First positively closed model (maximal-type criterion) among
/// find_models(axioms, max_size) that omits every target.
std::optional<FiniteStructure> omitting_search(const TheoryContext &ctx, const std::vector<PiType> &targets,
                                               std::size_t max_size);

/// Spans b <- a -> c of homomorphisms between members, and whether some
/// model of the theory of size <= max_size amalgamates each one.
struct AmalgamSpan {
  std::size_t a, b, c;
  semantics::Homomorphism f, g;
  bool amalgamated = false;
  std::optional<FiniteStructure> amalgam;
};
std::vector<AmalgamSpan> amalgam_search(const TheoryContext &ctx, std::size_t max_size);

}  // namespace pmt::typespace
