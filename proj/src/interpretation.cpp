#include "pmt/interpretation.hpp"

#include <set>

namespace pmt::typespace {

void Interpretation::check() const {
  for (const auto &s : source.symbols()) {
    auto it = mapping.find(s.name);
    if (it == mapping.end()) throw Error("interpretation " + name + ": no formula for " + s.name);
    const Formula &phi = it->second;
    if (!phi.is_positive()) throw Error("interpretation " + name + ": formula for " + s.name + " is not positive");
    syntax::check_well_formed(phi, target);
    for (const auto &v : phi.free_vars()) {
      auto i = syntax::var_index(v);
      if (!i || *i >= s.arity)
        throw Error("interpretation " + name + ": formula for " + s.name + " has free variable " + v +
                    " outside x0..x" + std::to_string(s.arity) + "-1");
    }
  }
  for (const auto &[k, v] : mapping)
    if (!source.contains(k)) throw Error("interpretation " + name + ": " + k + " is not a source symbol");
}

Interpretation identity_interpretation(const Signature &sig) {
  Interpretation g;
  g.name = "id";
  g.source = sig;
  g.target = sig;
  for (const auto &s : sig.symbols()) {
    std::vector<std::string> args;
    for (std::size_t i = 0; i < s.arity; ++i) args.push_back(syntax::var_name(i));
    g.mapping.emplace(s.name, Formula::atom(s.name, args));
  }
  return g;
}

Formula interpret(const Interpretation &g, const Formula &phi) {
  using syntax::Kind;
  switch (phi.kind()) {
    case Kind::Bottom:
    case Kind::Top:
    case Kind::Equal:
      return phi;
    case Kind::Atom: {
      const Formula &img = g.mapping.at(phi.symbol());
      std::map<std::string, std::string> ren;
      for (std::size_t i = 0; i < phi.args().size(); ++i) ren[syntax::var_name(i)] = phi.args()[i];
      return syntax::rename_free(img, ren);
    }
    case Kind::Not:
      return Formula::negation(interpret(g, phi.body()));
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> parts;
      for (const auto &c : phi.children()) parts.push_back(interpret(g, c));
      return phi.kind() == Kind::And ? Formula::conj(parts) : Formula::disj(parts);
    }
    case Kind::Exists: {
      // images only mention the atom's own arguments, so the binder is safe
      Formula body = interpret(g, phi.body());
      return Formula::exists(phi.bound_var(), body);
    }
  }
  throw std::logic_error("interpret: unknown formula kind");
}

FiniteStructure reduct(const Interpretation &g, const FiniteStructure &m) {
  FiniteStructure out(g.source, m.size(), m.name());
  semantics::Evaluator ev(m);
  for (std::size_t s = 0; s < g.source.size(); ++s) {
    const auto &sym = g.source.symbols()[s];
    auto d = ev.denotation(g.mapping.at(sym.name), sym.arity);
    for (const auto &t : d.tuples()) out.add_tuple(s, t);
  }
  return out;
}

bool verify_interpretation(const Interpretation &g, const ModelClass &target_class,
                           const std::vector<syntax::HInductiveSentence> &source_axioms) {
  g.check();
  if (!(target_class.signature == g.target)) throw Error("verify_interpretation: target signature mismatch");
  for (const auto &m : target_class.models) {
    auto r = reduct(g, m);
    for (const auto &ax : source_axioms)
      if (!semantics::satisfies_axiom(r, ax)) return false;
  }
  return true;
}

namespace {

lattice::LatticeHom gamma_hom(const Interpretation &g, const TheoryContext &from, const TheoryContext &to,
                              std::size_t n, std::string &failure) {
  lattice::LatticeHom h{from.lattices[n], to.lattices[n], {}};
  const auto &L = *from.lattices[n];
  for (Index a = 0; a < L.size(); ++a) {
    if (!L.witness(a)) throw Error("natural_iso_check: lattice element without witness");
    auto b = to.element_of(interpret(g, *L.witness(a)), n);
    if (!b) {
      failure = "image of " + L.label(a) + " at arity " + std::to_string(n) + " is outside the target lattice";
      return {};
    }
    h.map.push_back(*b);
  }
  return h;
}

}  // namespace

NaturalIso natural_iso_check(const Interpretation &g, const TheoryContext &source_ctx,
                             const TheoryContext &target_ctx, const Interpretation *inverse) {
  g.check();
  if (source_ctx.n_max() != target_ctx.n_max()) throw Error("natural_iso_check: contexts differ in n_max");
  if (!(source_ctx.cls.signature == g.source) || !(target_ctx.cls.signature == g.target))
    throw Error("natural_iso_check: signatures do not match the interpretation");
  NaturalIso out;
  std::size_t N = source_ctx.n_max();
  for (std::size_t n = 0; n <= N; ++n) {
    auto h = gamma_hom(g, source_ctx, target_ctx, n, out.failure);
    if (h.map.empty()) return out;
    if (!lattice::is_lattice_hom(h)) {
      out.failure = "Gamma does not induce a lattice homomorphism at arity " + std::to_string(n);
      return out;
    }
    auto induced = spectrum::spectral_map_from_hom(h, source_ctx.spaces[n], target_ctx.spaces[n]);
    out.lattice_maps.push_back(h);
    out.beta.push_back(induced.map);
  }

  out.bijective = true;
  for (std::size_t n = 0; n <= N; ++n) {
    const auto &b = out.beta[n];
    std::set<std::size_t> hit(b.map.begin(), b.map.end());
    if (b.source->size() != b.target->size() || hit.size() != b.target->size()) {
      out.bijective = false;
      out.failure = "beta_" + std::to_string(n) + " is not a bijection (" + std::to_string(b.source->size()) +
                    " points onto " + std::to_string(b.target->size()) + ")";
      return out;
    }
  }
  out.homeomorphic = true;
  for (std::size_t n = 0; n <= N; ++n)
    if (!spectrum::is_homeomorphism(out.beta[n])) {
      out.homeomorphic = false;
      out.failure = "beta_" + std::to_string(n) + " is not a homeomorphism";
      return out;
    }

  out.natural = true;
  for (std::size_t n = 0; n <= N && out.natural; ++n)
    for (std::size_t m = 0; m <= N && out.natural; ++m)
      for (const auto &f : syntax::all_maps(n, m)) {
        auto fs = f_star(source_ctx, f);  // S_m(T) -> S_n(T)
        auto ft = f_star(target_ctx, f);  // S_m(T') -> S_n(T')
        auto left = spectrum::compose(fs.map, out.beta[m]);
        auto right = spectrum::compose(out.beta[n], ft.map);
        if (left.map != right.map) {
          out.natural = false;
          std::string img;
          for (auto i : f.image) img += std::to_string(i);
          out.failure = "naturality square fails for f = [" + img + "] : " + std::to_string(n) + " -> " +
                        std::to_string(m);
          break;
        }
      }

  if (inverse) {
    inverse->check();
    for (std::size_t n = 0; n <= N; ++n) {
      std::string why;
      auto back = gamma_hom(*inverse, target_ctx, source_ctx, n, why);
      if (back.map.empty()) {
        out.inverse_ok = false;
        out.failure = why;
        break;
      }
      auto round = lattice::compose(back, out.lattice_maps[n]);
      for (Index a = 0; a < round.map.size(); ++a)
        if (round.map[a] != a) {
          out.inverse_ok = false;
          out.failure = "candidate inverse does not undo Gamma at arity " + std::to_string(n);
          break;
        }
      if (!out.inverse_ok) break;
    }
  }
  return out;
}

}  // namespace pmt::typespace
