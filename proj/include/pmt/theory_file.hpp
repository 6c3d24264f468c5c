#pragma once

// Loader for .pmt theory files.
//
//   theory NAME {
//     sig R/2 P/1;
//     model M { universe 2; R = {(0,1)}; P = {0}; }
//     axiom R(x,y) -> exists z. R(y,z);
//     enumerate 3;              # add every model of the axioms up to size 3
//     morleise { P(x); ~P(x); }  # expand signature, models and axioms
//     type p/1 { P(x0), Q(x0) };  # Pi-type; listed formulas read negatively
//   }
//   interpretation G : T -> T2 { R(a,b) := S(b,a); }
//
// Items outside any theory block form an implicit theory named "main".

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmt/interpretation.hpp"
#include "pmt/morleise.hpp"
#include "pmt/semantics.hpp"

namespace pmt::dsl {

using semantics::FiniteStructure;
using semantics::ModelClass;
using syntax::Formula;
using syntax::HInductiveSentence;
using syntax::Signature;

struct TypeDecl {
  std::string name;
  std::size_t arity = 0;
  std::vector<Formula> formulas;  // each read as its negation
};

struct TheoryBlock {
  std::string name;
  ModelClass cls;  // after Morleisation and enumeration
  std::vector<TypeDecl> types;
  std::optional<syntax::Morleisation> morleisation;
};

struct InterpretationDecl {
  std::string name;
  std::string source;  // theory whose symbols are interpreted
  std::string target;  // theory the formulas are written in
  typespace::Interpretation interpretation;
};

struct TheoryFile {
  std::vector<TheoryBlock> theories;
  std::vector<InterpretationDecl> interpretations;

  const TheoryBlock &theory(std::string_view name) const;
};

/// Throws ParseError with line and column for syntax and well-formedness
/// errors.
TheoryFile parse_theory_file(std::string_view text);
TheoryFile load_theory_file(const std::filesystem::path &path);

/// Resolve a declared type against a built context: each formula must name
/// an element of L_n. Throws Error otherwise.
typespace::PiType resolve_type(const typespace::TheoryContext &ctx, const TypeDecl &t);

}  // namespace pmt::dsl
