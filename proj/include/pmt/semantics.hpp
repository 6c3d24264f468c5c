#pragma once

// Finite relational structures and evaluation of formulas over them.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pmt/bitset.hpp"
#include "pmt/morleise.hpp"
#include "pmt/syntax.hpp"

namespace pmt::semantics {

using syntax::Formula;
using syntax::HInductiveSentence;
using syntax::Signature;

using Element = std::uint32_t;
using Tuple = std::vector<Element>;

/// Row-major index of a tuple in universe^arity (first coordinate most
/// significant), and its inverse.
std::size_t tuple_index(const Tuple &t, std::size_t universe);
Tuple tuple_at(std::size_t index, std::size_t arity, std::size_t universe);
/// universe^arity; throws if the table would be unreasonably large.
std::size_t tuple_count(std::size_t universe, std::size_t arity);

class FiniteStructure {
 public:
  /// Universe {0..size-1}; size must be positive.
  FiniteStructure(Signature sig, std::size_t size, std::string name = {});

  void add_tuple(std::string_view symbol, const Tuple &t);
  void add_tuple(std::size_t symbol_index, const Tuple &t);

  const Signature &signature() const { return sig_; }
  std::size_t size() const { return size_; }
  const std::string &name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  /// Tuples of a relation, sorted.
  std::vector<Tuple> tuples(std::size_t symbol_index) const;
  const Bitset &table(std::size_t symbol_index) const { return tables_[symbol_index]; }
  bool holds(std::size_t symbol_index, const Tuple &t) const;
  bool holds(std::string_view symbol, const Tuple &t) const;

  /// Same signature, universe and relations; names are ignored.
  bool operator==(const FiniteStructure &o) const;

 private:
  Signature sig_;
  std::size_t size_;
  std::string name_;
  std::vector<Bitset> tables_;  // per symbol, over size^arity
};

/// A set of n-tuples over a structure's universe.
struct TupleSet {
  std::size_t arity = 0;
  std::size_t universe = 0;
  Bitset bits;

  bool contains(const Tuple &t) const { return bits.test(tuple_index(t, universe)); }
  std::vector<Tuple> tuples() const;
  bool operator==(const TupleSet &) const = default;
};

/// Bottom-up evaluator with a memo per formula node. Reuse one evaluator
/// across many formulas over the same structure so shared subterms are
/// computed once.
class Evaluator {
 public:
  explicit Evaluator(const FiniteStructure &m) : m_(m) {}

  /// Tuples (over vars, in order) satisfying phi. Every free variable of
  /// phi must appear in vars. Negation is evaluated classically.
  TupleSet denotation(const Formula &phi, const std::vector<std::string> &vars);
  TupleSet denotation(const Formula &phi, std::size_t n);

  bool satisfies(const HInductiveSentence &ax);

 private:
  struct Rel {
    std::vector<std::string> vars;
    Bitset bits;
  };
  const Rel &eval(const Formula &f);
  Rel extend(const Rel &r, const std::vector<std::string> &vars) const;

  const FiniteStructure &m_;
  std::unordered_map<const syntax::Node *, Rel> memo_;
  std::vector<Formula> keep_alive_;
};

/// Solutions of phi in M over x0..x{n-1}.
TupleSet denotation(const FiniteStructure &m, const Formula &phi, std::size_t n);

bool satisfies_axiom(const FiniteStructure &m, const HInductiveSentence &ax);

/// A finite list of structures over one signature, plus axioms they satisfy.
struct ModelClass {
  Signature signature;
  std::vector<FiniteStructure> models;
  std::vector<HInductiveSentence> axioms;

  /// Throws Error when a member has the wrong signature or violates an axiom.
  void validate() const;
  /// Index of a member equal to m, or models.size().
  std::size_t find(const FiniteStructure &m) const;
};

/// Expansion of a structure to the Morleised signature: each fresh symbol is
/// interpreted by its formula.
FiniteStructure expand(const syntax::Morleisation &mor, const FiniteStructure &m);

/// Print in the structure DSL: model NAME { universe K; R = {(..),..}; }
std::string to_dsl(const FiniteStructure &m);

}  // namespace pmt::semantics
