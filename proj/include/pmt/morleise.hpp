#pragma once

// Finite Morleisation: one fresh relation symbol per listed first-order
// formula, tied to the formula's structure by h-inductive axioms.

#include <string>
#include <vector>

#include "pmt/syntax.hpp"

namespace pmt::syntax {

struct Morleisation {
  Signature signature;  // the input signature extended by the fresh symbols
  std::vector<Formula> formulas;
  std::vector<std::string> symbol_names;             // parallel to formulas
  std::vector<std::vector<std::string>> symbol_args;  // free variables of each formula
  std::vector<HInductiveSentence> axioms;
};

/// The input must list every immediate subformula of each member and the
/// negation of each member that is not itself a negation. Alpha-equivalent
/// duplicates are merged. Throws ParseError when the set is not closed.
Morleisation morleise(const std::vector<Formula> &fo_formulas, const Signature &sig);

}  // namespace pmt::syntax
