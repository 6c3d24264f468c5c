#include <stdexcept>

#include "pmt/models.hpp"
#include "pmt/typespace.hpp"

namespace pmt::typespace {

using semantics::tuple_at;
using semantics::tuple_count;

std::vector<PmcVerdict> check_pmc(const TheoryContext &ctx) {
  std::vector<PmcVerdict> out;
  for (std::size_t n = 0; n <= ctx.n_max(); ++n) {
    bool sep = spectrum::points_separated(ctx.spaces[n]);
    bool comp = spectrum::all_complemented(*ctx.lattices[n]);
    if (sep != comp) throw std::logic_error("check_pmc: Hausdorff and complementation disagree");
    out.push_back({n, sep, comp});
  }
  return out;
}

AmalgamationVerdict components_disjoint(const SpectralSpace &s, std::size_t n) {
  AmalgamationVerdict v{n, true, std::nullopt, std::nullopt, std::nullopt};
  auto comps = spectrum::irreducible_components(s);
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      Bitset both = comps[i].points & comps[j].points;
      if (both.none()) continue;
      v.disjoint = false;
      v.shared_point = both.indices().front();
      v.generic_a = comps[i].generic;
      v.generic_b = comps[j].generic;
      return v;
    }
  return v;
}

std::vector<AmalgamationVerdict> check_amalgamation(const TheoryContext &ctx) {
  std::vector<AmalgamationVerdict> out;
  for (std::size_t n = 0; n <= ctx.n_max(); ++n) out.push_back(components_disjoint(ctx.spaces[n], n));
  return out;
}

bool check_jcp(const TheoryContext &ctx) {
  const auto &L = *ctx.lattices[0];
  bool prime_bottom = true;
  for (Index a = 0; a < L.size() && prime_bottom; ++a)
    for (Index b = 0; b < L.size(); ++b)
      if (L.meet(a, b) == L.bottom() && a != L.bottom() && b != L.bottom()) {
        prime_bottom = false;
        break;
      }
  const auto &s = ctx.spaces[0];
  bool irreducible = spectrum::is_irreducible(s, s.all_points());
  if (prime_bottom != irreducible) throw std::logic_error("check_jcp: lattice and space verdicts disagree");
  return prime_bottom;
}

std::vector<Index> restrict_pi(const TheoryContext &ctx, std::size_t point) {
  const auto &p = ctx.spaces[0].points.at(point);
  std::vector<Index> out;
  for (Index a = 0; a < ctx.lattices[0]->size(); ++a)
    if (!p.test(a)) out.push_back(a);
  return out;
}

Bitset closed_set(const TheoryContext &ctx, const PiType &p) {
  if (p.n > ctx.n_max()) throw Error("Pi-type arity above n_max");
  const auto &s = ctx.spaces[p.n];
  Bitset open = s.empty_set();
  for (Index a : p.elements) open |= s.basic.at(a);
  return ~open;
}

SupportResult support_of(const TheoryContext &ctx, const PiType &p) {
  const auto &s = ctx.spaces[p.n];
  const auto &L = *ctx.lattices[p.n];
  SupportResult r{std::nullopt, closed_set(ctx, p), s.empty_set()};
  r.interior = spectrum::interior(s, r.region);
  // supports are closed under joins, so their join is the largest one
  Index acc = L.bottom();
  for (Index a = 0; a < L.size(); ++a) {
    bool inside = true;
    for (Index b : p.elements)
      if (L.meet(a, b) != L.bottom()) {
        inside = false;
        break;
      }
    if (inside) acc = L.join(acc, a);
  }
  if (acc != L.bottom()) r.support = acc;
  if (r.support.has_value() == r.interior.none()) throw std::logic_error("support_of: lattice and interior disagree");
  return r;
}

namespace {

PiType realised_pi(const TheoryContext &ctx, std::size_t n, std::size_t point) {
  PiType p;
  p.n = n;
  const auto &f = ctx.spaces[n].points[point];
  for (Index a = 0; a < ctx.lattices[n]->size(); ++a)
    if (!f.test(a)) p.elements.push_back(a);
  return p;
}

bool atomic_types(const TheoryContext &ctx, const ForeignTypes &t) {
  for (std::size_t n = 0; n < t.types.size(); ++n) {
    std::vector<bool> seen(ctx.spaces[n].size(), false);
    for (std::size_t p : t.types[n]) {
      if (seen[p]) continue;
      seen[p] = true;
      if (!support_of(ctx, realised_pi(ctx, n, p)).support) return false;
    }
  }
  return true;
}

}  // namespace

bool is_atomic(const TheoryContext &ctx, const FiniteStructure &m) {
  auto t = realized_types(ctx, m);
  if (!t.models_theory) throw Error("is_atomic: structure is not a model of the theory");
  return atomic_types(ctx, t);
}

PcPrimeReport pc_and_prime_report(const TheoryContext &ctx) {
  PcPrimeReport r;
  const auto &models = ctx.cls.models;
  for (const auto &m : models) {
    auto t = realized_types(ctx, m);
    ModelFlags f;
    f.name = m.name();
    f.pc_maximal = pc_by_maximal_types(ctx, t);
    f.pc_semantic = is_positively_closed_semantic(ctx, m);
    f.atomic = atomic_types(ctx, t);
    r.models.push_back(f);
  }
  bool jcp = check_jcp(ctx);
  if (jcp) r.prime_iff_atomic = true;
  for (std::size_t i = 0; i < models.size(); ++i) {
    if (!r.models[i].pc_maximal) continue;
    bool prime = true;
    for (std::size_t j = 0; j < models.size() && prime; ++j)
      if (r.models[j].pc_maximal && !semantics::exists_homomorphism(models[i], models[j])) prime = false;
    r.models[i].prime = prime;
    if (jcp && prime != r.models[i].atomic) r.prime_iff_atomic = false;
  }
  return r;
}

bool countcat_condition(const SpectralSpace &s) {
  for (const auto &c : spectrum::irreducible_components(s))
    if (spectrum::interior(s, c.points).none()) return false;
  return true;
}

bool somewhere_dense_density(const SpectralSpace &s) {
  Bitset dense = s.empty_set();
  for (std::size_t p = 0; p < s.size(); ++p) {
    Bitset single = s.empty_set();
    single.set(p);
    if (spectrum::interior(s, spectrum::closure(s, single)).any()) dense.set(p);
  }
  for (const auto &u : s.basic)
    if (u.any() && !u.intersects(dense)) return false;
  return true;
}

std::vector<bool> check_countcat_condition(const TheoryContext &ctx) {
  std::vector<bool> out;
  for (const auto &s : ctx.spaces) out.push_back(countcat_condition(s));
  return out;
}

std::vector<bool> check_somewhere_dense_density(const TheoryContext &ctx) {
  std::vector<bool> out;
  for (const auto &s : ctx.spaces) out.push_back(somewhere_dense_density(s));
  return out;
}

bool realizes(const TheoryContext &ctx, const ForeignTypes &t, const PiType &p) {
  Bitset region = closed_set(ctx, p);
  for (std::size_t q : t.types.at(p.n))
    if (region.test(q)) return true;
  return false;
}

std::optional<FiniteStructure> omitting_search(const TheoryContext &ctx, const std::vector<PiType> &targets,
                                               std::size_t max_size) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    auto r = support_of(ctx, targets[i]);
    if (r.support) throw SupportedTarget(i, *r.support, ctx.lattices[targets[i].n]->label(*r.support));
  }
  for (auto &cand : semantics::find_models(ctx.cls.axioms, ctx.cls.signature, max_size)) {
    auto t = realized_types(ctx, cand);
    if (!pc_by_maximal_types(ctx, t)) continue;
    bool omits = true;
    for (const auto &p : targets)
      if (realizes(ctx, t, p)) {
        omits = false;
        break;
      }
    if (omits) return cand;
  }
  return std::nullopt;
}

std::vector<AmalgamSpan> amalgam_search(const TheoryContext &ctx, std::size_t max_size) {
  const auto &models = ctx.cls.models;
  std::vector<FiniteStructure> candidates = models;
  for (auto &m : semantics::find_models(ctx.cls.axioms, ctx.cls.signature, max_size)) candidates.push_back(m);
  std::vector<int> is_model(candidates.size(), -1);  // lazily computed
  auto models_theory = [&](std::size_t d) {
    if (is_model[d] < 0) is_model[d] = realized_types(ctx, candidates[d]).models_theory ? 1 : 0;
    return is_model[d] == 1;
  };

  std::vector<AmalgamSpan> out;
  for (std::size_t a = 0; a < models.size(); ++a)
    for (std::size_t b = 0; b < models.size(); ++b)
      for (std::size_t c = b; c < models.size(); ++c) {
        auto fs = semantics::homomorphisms(models[a], models[b]);
        auto gs = semantics::homomorphisms(models[a], models[c]);
        for (const auto &f : fs)
          for (const auto &g : gs) {
            AmalgamSpan span{a, b, c, f, g, false, std::nullopt};
            for (std::size_t d = 0; d < candidates.size() && !span.amalgamated; ++d) {
              auto us = semantics::homomorphisms(models[b], candidates[d]);
              if (us.empty()) continue;
              auto vs = semantics::homomorphisms(models[c], candidates[d]);
              bool commutes = false;
              for (const auto &u : us) {
                for (const auto &v : vs)
                  if (semantics::compose(u, f) == semantics::compose(v, g)) {
                    commutes = true;
                    break;
                  }
                if (commutes) break;
              }
              if (commutes && models_theory(d)) {
                span.amalgamated = true;
                span.amalgam = candidates[d];
              }
            }
            out.push_back(std::move(span));
          }
      }
  return out;
}

}  // namespace pmt::typespace
