#include "pmt/semantics.hpp"

#include <algorithm>
#include <cassert>

#include "pmt/error.hpp"

namespace pmt::semantics {

using syntax::Kind;

std::size_t tuple_count(std::size_t universe, std::size_t arity) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    n *= universe;
    if (n > (std::size_t{1} << 28)) throw Error("tuple table too large: " + std::to_string(universe) + "^" + std::to_string(arity));
  }
  return n;
}

std::size_t tuple_index(const Tuple &t, std::size_t universe) {
  std::size_t idx = 0;
  for (Element e : t) idx = idx * universe + e;
  return idx;
}

Tuple tuple_at(std::size_t index, std::size_t arity, std::size_t universe) {
  Tuple t(arity);
  for (std::size_t i = arity; i > 0; --i) {
    t[i - 1] = static_cast<Element>(index % universe);
    index /= universe;
  }
  return t;
}

// ---------------------------------------------------------------------------

FiniteStructure::FiniteStructure(Signature sig, std::size_t size, std::string name)
    : sig_(std::move(sig)), size_(size), name_(std::move(name)) {
  if (size_ == 0) throw Error("structures must have a nonempty universe");
  for (const auto &s : sig_.symbols()) tables_.emplace_back(tuple_count(size_, s.arity));
}

void FiniteStructure::add_tuple(std::string_view symbol, const Tuple &t) { add_tuple(sig_.index_of(symbol), t); }

void FiniteStructure::add_tuple(std::size_t s, const Tuple &t) {
  const auto &sym = sig_.symbols().at(s);
  if (t.size() != sym.arity)
    throw Error("tuple of length " + std::to_string(t.size()) + " for " + sym.name + "/" + std::to_string(sym.arity));
  for (Element e : t)
    if (e >= size_) throw Error("element " + std::to_string(e) + " outside universe of size " + std::to_string(size_));
  tables_[s].set(tuple_index(t, size_));
}

std::vector<Tuple> FiniteStructure::tuples(std::size_t s) const {
  std::vector<Tuple> out;
  std::size_t ar = sig_.symbols().at(s).arity;
  for (std::size_t idx : tables_[s].indices()) out.push_back(tuple_at(idx, ar, size_));
  return out;
}

bool FiniteStructure::holds(std::size_t s, const Tuple &t) const { return tables_[s].test(tuple_index(t, size_)); }

bool FiniteStructure::holds(std::string_view symbol, const Tuple &t) const { return holds(sig_.index_of(symbol), t); }

bool FiniteStructure::operator==(const FiniteStructure &o) const {
  return sig_ == o.sig_ && size_ == o.size_ && tables_ == o.tables_;
}

std::vector<Tuple> TupleSet::tuples() const {
  std::vector<Tuple> out;
  for (std::size_t idx : bits.indices()) out.push_back(tuple_at(idx, arity, universe));
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

Evaluator::Rel Evaluator::extend(const Rel &r, const std::vector<std::string> &vars) const {
  const std::size_t k = m_.size();
  std::vector<std::size_t> pos;  // position in vars of each of r's variables
  for (const auto &v : r.vars) {
    auto it = std::find(vars.begin(), vars.end(), v);
    assert(it != vars.end());
    pos.push_back(static_cast<std::size_t>(it - vars.begin()));
  }
  std::size_t n = tuple_count(k, vars.size());
  Rel out{vars, Bitset(n)};
  Tuple sub(r.vars.size());
  for (std::size_t idx = 0; idx < n; ++idx) {
    Tuple t = tuple_at(idx, vars.size(), k);
    for (std::size_t i = 0; i < pos.size(); ++i) sub[i] = t[pos[i]];
    if (r.bits.test(tuple_index(sub, k))) out.bits.set(idx);
  }
  return out;
}

const Evaluator::Rel &Evaluator::eval(const Formula &f) {
  if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second;
  const std::size_t k = m_.size();
  const auto &vars = f.free_vars();
  const std::size_t n = tuple_count(k, vars.size());
  Rel out{vars, Bitset(n)};

  auto assignment_lookup = [&](const Tuple &t, const std::string &v) {
    auto it = std::find(vars.begin(), vars.end(), v);
    return t[static_cast<std::size_t>(it - vars.begin())];
  };

  switch (f.kind()) {
    case Kind::Bottom:
      break;
    case Kind::Top:
      out.bits = Bitset::full(n);
      break;
    case Kind::Atom: {
      std::size_t s = m_.signature().index_of(f.symbol());
      Tuple args(f.args().size());
      for (std::size_t idx = 0; idx < n; ++idx) {
        Tuple t = tuple_at(idx, vars.size(), k);
        for (std::size_t i = 0; i < args.size(); ++i) args[i] = assignment_lookup(t, f.args()[i]);
        if (m_.holds(s, args)) out.bits.set(idx);
      }
      break;
    }
    case Kind::Equal:
      for (std::size_t idx = 0; idx < n; ++idx) {
        Tuple t = tuple_at(idx, vars.size(), k);
        if (assignment_lookup(t, f.args()[0]) == assignment_lookup(t, f.args()[1])) out.bits.set(idx);
      }
      break;
    case Kind::Not: {
      Rel inner = extend(eval(f.body()), vars);
      out.bits = ~inner.bits;
      break;
    }
    case Kind::And:
    case Kind::Or: {
      bool is_and = f.kind() == Kind::And;
      out.bits = Bitset(n, is_and);
      for (const auto &c : f.children()) {
        Rel part = extend(eval(c), vars);
        if (is_and)
          out.bits &= part.bits;
        else
          out.bits |= part.bits;
      }
      break;
    }
    case Kind::Exists: {
      const Rel &inner = eval(f.body());
      const std::string &y = f.bound_var();
      auto it = std::find(inner.vars.begin(), inner.vars.end(), y);
      if (it == inner.vars.end()) {
        // universes are nonempty, so a vacuous quantifier changes nothing
        out.bits = extend(inner, vars).bits;
        break;
      }
      std::size_t ypos = static_cast<std::size_t>(it - inner.vars.begin());
      Tuple reduced(vars.size());
      for (std::size_t idx : inner.bits.indices()) {
        Tuple t = tuple_at(idx, inner.vars.size(), k);
        for (std::size_t i = 0, j = 0; i < t.size(); ++i)
          if (i != ypos) reduced[j++] = t[i];
        out.bits.set(tuple_index(reduced, k));
      }
      break;
    }
  }
  keep_alive_.push_back(f);
  return memo_.emplace(f.id(), std::move(out)).first->second;
}

TupleSet Evaluator::denotation(const Formula &phi, const std::vector<std::string> &vars) {
  for (const auto &v : phi.free_vars())
    if (std::find(vars.begin(), vars.end(), v) == vars.end())
      throw Error("free variable '" + v + "' is not among the " + std::to_string(vars.size()) + " evaluation variables");
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw Error("repeated evaluation variable '" + vars[i] + "'");
  Rel r = extend(eval(phi), vars);
  return TupleSet{vars.size(), m_.size(), std::move(r.bits)};
}

TupleSet Evaluator::denotation(const Formula &phi, std::size_t n) {
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < n; ++i) vars.push_back(syntax::var_name(i));
  return denotation(phi, vars);
}

bool Evaluator::satisfies(const HInductiveSentence &ax) {
  auto lhs = denotation(ax.antecedent, ax.vars);
  auto rhs = denotation(ax.consequent, ax.vars);
  return lhs.bits.is_subset_of(rhs.bits);
}

TupleSet denotation(const FiniteStructure &m, const Formula &phi, std::size_t n) {
  return Evaluator(m).denotation(phi, n);
}

bool satisfies_axiom(const FiniteStructure &m, const HInductiveSentence &ax) { return Evaluator(m).satisfies(ax); }

// ---------------------------------------------------------------------------

void ModelClass::validate() const {
  for (const auto &ax : axioms) {
    syntax::check_well_formed(ax.antecedent, signature);
    syntax::check_well_formed(ax.consequent, signature);
    if (!ax.antecedent.is_positive() || !ax.consequent.is_positive())
      throw Error("axiom is not h-inductive: " + syntax::to_string(ax));
  }
  for (const auto &m : models) {
    if (!(m.signature() == signature)) throw Error("model '" + m.name() + "' has a different signature");
    Evaluator ev(m);
    for (const auto &ax : axioms)
      if (!ev.satisfies(ax)) throw Error("model '" + m.name() + "' violates axiom " + syntax::to_string(ax));
  }
}

std::size_t ModelClass::find(const FiniteStructure &m) const {
  for (std::size_t i = 0; i < models.size(); ++i)
    if (models[i] == m) return i;
  return models.size();
}

FiniteStructure expand(const syntax::Morleisation &mor, const FiniteStructure &m) {
  FiniteStructure out(mor.signature, m.size(), m.name());
  const auto &base = m.signature().symbols();
  for (std::size_t s = 0; s < base.size(); ++s)
    for (const auto &t : m.tuples(s)) out.add_tuple(base[s].name, t);
  Evaluator ev(m);
  for (std::size_t k = 0; k < mor.formulas.size(); ++k) {
    TupleSet d = ev.denotation(mor.formulas[k], mor.symbol_args[k]);
    for (const auto &t : d.tuples()) out.add_tuple(mor.symbol_names[k], t);
  }
  return out;
}

std::string to_dsl(const FiniteStructure &m) {
  std::string out = "model " + (m.name().empty() ? std::string("M") : m.name()) + " { universe " +
                    std::to_string(m.size()) + ";";
  const auto &syms = m.signature().symbols();
  for (std::size_t s = 0; s < syms.size(); ++s) {
    out += " " + syms[s].name + " = {";
    bool first = true;
    for (const auto &t : m.tuples(s)) {
      if (!first) out += ",";
      first = false;
      out += "(";
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(t[i]);
      }
      out += ")";
    }
    out += "};";
  }
  out += " }";
  return out;
}

}  // namespace pmt::semantics
