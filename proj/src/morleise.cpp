#include "pmt/morleise.hpp"

#include <optional>

#include "pmt/error.hpp"

namespace pmt::syntax {

namespace {

std::optional<std::size_t> find_alpha(const std::vector<Formula> &list, const Formula &f) {
  for (std::size_t i = 0; i < list.size(); ++i)
    if (alpha_equal(list[i], f)) return i;
  return std::nullopt;
}

std::string fresh_symbol(const Signature &sig, std::size_t k) {
  std::string name = "phi" + std::to_string(k);
  while (sig.contains(name)) name = "_" + name;
  return name;
}

}  // namespace

Morleisation morleise(const std::vector<Formula> &fo_formulas, const Signature &sig) {
  Morleisation m;
  m.signature = sig;
  for (const auto &f : fo_formulas) {
    check_well_formed(f, sig);
    if (!find_alpha(m.formulas, f)) m.formulas.push_back(f);
  }

  auto index_of = [&](const Formula &f, const Formula &parent) {
    auto i = find_alpha(m.formulas, f);
    if (!i)
      throw ParseError("formula set is not subformula-closed: '" + to_string(f) + "' (from '" +
                       to_string(parent) + "') is not listed");
    return *i;
  };

  for (const auto &f : m.formulas) {
    for (const auto &c : f.children()) index_of(c, f);
    if (f.kind() != Kind::Not) {
      if (!find_alpha(m.formulas, Formula::negation(f)))
        throw ParseError("formula set is not closed under negation: '~" + to_string(f) +
                         "' is not listed");
    }
  }

  for (std::size_t k = 0; k < m.formulas.size(); ++k) {
    std::string name = fresh_symbol(m.signature, k);
    m.signature.add(name, m.formulas[k].free_vars().size());
    m.symbol_names.push_back(name);
    m.symbol_args.push_back(m.formulas[k].free_vars());
  }

  auto rel = [&](std::size_t k) { return Formula::atom(m.symbol_names[k], m.symbol_args[k]); };
  auto both_ways = [&](const Formula &lhs, const Formula &rhs) {
    m.axioms.push_back(HInductiveSentence::closure(lhs, rhs));
    m.axioms.push_back(HInductiveSentence::closure(rhs, lhs));
  };

  for (std::size_t k = 0; k < m.formulas.size(); ++k) {
    const Formula &f = m.formulas[k];
    Formula r = rel(k);
    switch (f.kind()) {
      case Kind::Bottom:
      case Kind::Top:
      case Kind::Atom:
      case Kind::Equal:
        both_ways(r, f);
        break;
      case Kind::And:
      case Kind::Or: {
        std::vector<Formula> parts;
        for (const auto &c : f.children()) parts.push_back(rel(index_of(c, f)));
        both_ways(r, f.kind() == Kind::And ? Formula::conj(parts) : Formula::disj(parts));
        break;
      }
      case Kind::Exists:
        both_ways(r, Formula::exists(f.bound_var(), rel(index_of(f.body(), f))));
        break;
      case Kind::Not: {
        Formula inner = rel(index_of(f.body(), f));
        // forall x (true -> R_phi | R_~phi) and forall x (R_phi & R_~phi -> false),
        // quantified over the free variables of phi in its own order.
        HInductiveSentence cover{m.symbol_args[k], Formula::top(), Formula::disj({inner, r})};
        HInductiveSentence disjoint{m.symbol_args[k], Formula::conj({inner, r}), Formula::bottom()};
        m.axioms.push_back(cover);
        m.axioms.push_back(disjoint);
        break;
      }
    }
  }
  return m;
}

}  // namespace pmt::syntax
