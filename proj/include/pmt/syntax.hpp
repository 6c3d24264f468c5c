#pragma once

// Relational signatures and the formula language: positive formulas
// (bottom, top, atoms, equality, conjunction, disjunction, existential
// quantification), their negations, h-inductive sentences, and substitution
// along maps of finite ordinals.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace pmt::syntax {

struct Symbol {
  std::string name;
  std::size_t arity = 0;
  bool operator==(const Symbol &) const = default;
};

/// Purely relational signature. Equality is implicit and not listed.
class Signature {
 public:
  Signature() = default;
  Signature(std::initializer_list<Symbol> symbols);

  /// Throws ParseError on an invalid or duplicate name.
  void add(std::string name, std::size_t arity);

  bool contains(std::string_view name) const;
  std::optional<std::size_t> arity_of(std::string_view name) const;
  /// Position of a symbol in declaration order; throws if absent.
  std::size_t index_of(std::string_view name) const;
  const std::vector<Symbol> &symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }

  bool operator==(const Signature &) const = default;

 private:
  std::vector<Symbol> symbols_;
};

bool is_identifier(std::string_view s);

enum class Kind { Bottom, Top, Atom, Equal, Not, And, Or, Exists };

class Formula;

struct Node {
  Kind kind;
  std::string symbol;              // Atom
  std::vector<std::string> vars;   // Atom arguments, Equal operands, Exists binder
  std::vector<Formula> children;   // And/Or operands, Not/Exists body
  std::vector<std::string> free;   // free variables, first-occurrence order
};

/// Immutable formula tree with shared subterms. Positive formulas are the
/// ones without Not; negation only appears in first-order input to the
/// Morleisation and is rejected everywhere else.
class Formula {
 public:
  static Formula bottom();
  static Formula top();
  static Formula atom(std::string symbol, std::vector<std::string> args);
  static Formula equal(std::string lhs, std::string rhs);
  static Formula negation(Formula body);
  /// A single operand is returned unchanged; an empty list throws.
  static Formula conj(std::vector<Formula> operands);
  static Formula disj(std::vector<Formula> operands);
  static Formula exists(std::string var, Formula body);

  Kind kind() const { return node_->kind; }
  const std::string &symbol() const { return node_->symbol; }
  const std::vector<std::string> &args() const { return node_->vars; }
  const std::string &bound_var() const { return node_->vars.front(); }
  const std::vector<Formula> &children() const { return node_->children; }
  const Formula &body() const { return node_->children.front(); }
  const std::vector<std::string> &free_vars() const { return node_->free; }
  bool has_free(std::string_view v) const;

  /// Node identity, used as a memo key.
  const Node *id() const { return node_.get(); }

  bool is_positive() const;
  bool is_quantifier_free() const;
  /// Every variable name occurring free or bound.
  std::set<std::string> all_vars() const;
  std::size_t size() const;

  /// Structural equality (bound names must match too; see alpha_equal).
  bool operator==(const Formula &o) const;

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Node n);
  std::shared_ptr<const Node> node_;
};

/// Canonical free-variable names x0, x1, ...
std::string var_name(std::size_t i);
/// Index of a canonical variable name, if it is one.
std::optional<std::size_t> var_index(std::string_view name);

/// Throws ParseError for unknown symbols or wrong argument counts.
void check_well_formed(const Formula &phi, const Signature &sig);

std::string to_string(const Formula &phi);

/// Rename bound variables to a canonical sequence so that alpha-equivalent
/// formulas become structurally equal.
Formula canonical_bound(const Formula &phi);
bool alpha_equal(const Formula &a, const Formula &b);

/// Rename bound variables to y0, y1, ... (skipping names that occur free).
Formula tidy_bound(const Formula &phi);

/// Capture-avoiding simultaneous renaming of free variables.
Formula rename_free(const Formula &phi, const std::map<std::string, std::string> &renaming);

/// A function f : {0..source-1} -> {0..target-1}.
struct OrdinalMap {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::size_t> image;

  OrdinalMap() = default;
  OrdinalMap(std::size_t source, std::size_t target, std::vector<std::size_t> image);

  static OrdinalMap identity(std::size_t n);
  std::size_t operator()(std::size_t i) const { return image[i]; }
  bool operator==(const OrdinalMap &) const = default;
};

/// g after f.
OrdinalMap compose(const OrdinalMap &g, const OrdinalMap &f);
/// All maps source -> target in lexicographic order of their image vectors.
std::vector<OrdinalMap> all_maps(std::size_t source, std::size_t target);

/// phi(x_{f(0)}, ..., x_{f(n-1)}). Free variables of phi must be canonical
/// and below f.source.
Formula substitute(const Formula &phi, const OrdinalMap &f);

struct NegativeFormula {
  Formula positive;
};

/// forall vars (antecedent -> consequent).
struct HInductiveSentence {
  std::vector<std::string> vars;
  Formula antecedent;
  Formula consequent;

  /// Universal closure over the free variables of both sides, in order of
  /// first occurrence.
  static HInductiveSentence closure(Formula antecedent, Formula consequent);
};

std::string to_string(const HInductiveSentence &ax);

/// Primitive-positive formula: exists bound. (atom_1 & ... & atom_k).
struct PpFormula {
  std::vector<std::string> bound;
  std::vector<Formula> atoms;
  Formula to_formula() const;
};

/// Disjunction of pp formulas equivalent to phi over nonempty structures.
std::vector<PpFormula> pp_normal_form(const Formula &phi);

}  // namespace pmt::syntax
