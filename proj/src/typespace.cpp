#include "pmt/typespace.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace pmt::typespace {

std::string to_string(Stabilization s) {
  switch (s) {
    case Stabilization::NotProbed: return "not_probed";
    case Stabilization::Stable: return "stable";
    case Stabilization::Changed: return "changed";
    case Stabilization::ProbeExceededCap: return "probe_exceeded_cap";
  }
  return "?";
}

namespace {

using semantics::tuple_at;
using semantics::tuple_count;
using semantics::tuple_index;

// Tuple spaces of a class at each arity: the positions of model i's
// k-tuples start at offset(i, k).
struct Geometry {
  std::vector<std::size_t> sizes;

  explicit Geometry(const ModelClass &c) {
    for (const auto &m : c.models) sizes.push_back(m.size());
  }
  std::size_t offset(std::size_t model, std::size_t k) const {
    std::size_t acc = 0;
    for (std::size_t i = 0; i < model; ++i) acc += tuple_count(sizes[i], k);
    return acc;
  }
  std::size_t total(std::size_t k) const { return offset(sizes.size(), k); }

  // For each position of the arity-m space, the position of the arity-n
  // tuple t o f in the same model.
  std::vector<std::uint32_t> substitution_sources(const OrdinalMap &f) const {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      std::size_t base = offset(i, f.source);
      for (std::size_t idx = 0; idx < tuple_count(sizes[i], f.target); ++idx) {
        Tuple t = tuple_at(idx, f.target, sizes[i]);
        Tuple s(f.source);
        for (std::size_t j = 0; j < f.source; ++j) s[j] = t[f(j)];
        out.push_back(static_cast<std::uint32_t>(base + tuple_index(s, sizes[i])));
      }
    }
    return out;
  }

  // For each position of the arity-(k+1) space, the position of the tuple
  // with its last coordinate dropped.
  std::vector<std::uint32_t> projection_targets(std::size_t k) const {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      std::size_t base = offset(i, k);
      for (std::size_t idx = 0; idx < tuple_count(sizes[i], k + 1); ++idx)
        out.push_back(static_cast<std::uint32_t>(base + idx / sizes[i]));
    }
    return out;
  }
};

Bitset apply_substitution(const Bitset &e, const std::vector<std::uint32_t> &src) {
  Bitset out(src.size());
  for (std::size_t t = 0; t < src.size(); ++t)
    if (e.test(src[t])) out.set(t);
  return out;
}

Bitset apply_projection(const Bitset &e, const std::vector<std::uint32_t> &dst, std::size_t target_bits) {
  Bitset out(target_bits);
  for (std::size_t t : e.indices()) out.set(dst[t]);
  return out;
}

Bitset class_vector(const ModelClass &c, const Geometry &g, const Formula &phi, std::size_t k) {
  Bitset out(g.total(k));
  for (std::size_t i = 0; i < c.models.size(); ++i) {
    auto d = semantics::denotation(c.models[i], phi, k);
    std::size_t base = g.offset(i, k);
    for (std::size_t t : d.bits.indices()) out.set(base + t);
  }
  return out;
}

struct Family {
  std::vector<Bitset> sets;
  std::vector<Formula> witnesses;
  std::unordered_map<Bitset, std::size_t, BitsetHash> index;

  // Returns true when the set is new. The witness is only built then.
  template <class MakeWitness>
  bool add(Bitset s, MakeWitness &&make, std::size_t cap, std::size_t arity) {
    if (index.count(s)) return false;
    if (sets.size() >= cap) throw CapExceeded(arity, cap);
    index.emplace(s, sets.size());
    sets.push_back(std::move(s));
    witnesses.push_back(make());
    return true;
  }
};

class Builder {
 public:
  Builder(const ModelClass &c, const BuildOptions &o) : cls_(c), opt_(o), geo_(c) {}

  std::vector<Family> run() {
    const std::size_t W = opt_.n_max + opt_.budget;
    std::vector<Family> pp(W + 1);
    for (std::size_t k = W + 1; k-- > 0;) {
      Family &fam = pp[k];
      std::size_t bits = geo_.total(k);
      fam.add(Bitset::full(bits), [] { return Formula::top(); }, opt_.cap, k);
      fam.add(Bitset(bits), [] { return Formula::bottom(); }, opt_.cap, k);
      for (const auto &a : atoms(k)) fam.add(class_vector(cls_, geo_, a, k), [&] { return a; }, opt_.cap, k);
      if (k < W) {
        auto dst = geo_.projection_targets(k);
        const Family &above = pp[k + 1];
        for (std::size_t i = 0; i < above.sets.size(); ++i)
          fam.add(apply_projection(above.sets[i], dst, bits), [&] { return project_witness(above.witnesses[i], k); },
                  opt_.cap, k);
      }
      // close under intersection
      for (std::size_t next = 0; next < fam.sets.size(); ++next)
        for (std::size_t j = 0; j < next; ++j)
          fam.add(
              fam.sets[j] & fam.sets[next],
              [&] { return Formula::conj({fam.witnesses[j], fam.witnesses[next]}); }, opt_.cap, k);
    }

    // Lattices at arities <= n_max: seeded by the pp families, closed under
    // intersection, union, substitution and projection.
    std::vector<Family> L(opt_.n_max + 1);
    for (std::size_t n = 0; n <= opt_.n_max; ++n) L[n] = std::move(pp[n]);
    std::vector<std::size_t> done(opt_.n_max + 1, 0);
    std::vector<std::vector<std::pair<OrdinalMap, std::vector<std::uint32_t>>>> subst(opt_.n_max + 1);
    for (std::size_t n = 0; n <= opt_.n_max; ++n)
      for (std::size_t m = 0; m <= opt_.n_max; ++m)
        for (auto &f : syntax::all_maps(n, m)) subst[n].emplace_back(f, geo_.substitution_sources(f));
    std::vector<std::vector<std::uint32_t>> proj(opt_.n_max + 1);
    for (std::size_t n = 1; n <= opt_.n_max; ++n) proj[n] = geo_.projection_targets(n - 1);

    while (true) {
      std::size_t n = 0;
      while (n <= opt_.n_max && done[n] == L[n].sets.size()) ++n;
      if (n > opt_.n_max) break;
      std::size_t e = done[n]++;
      // copies: adding may reallocate the family
      Bitset set = L[n].sets[e];
      Formula w = L[n].witnesses[e];
      for (std::size_t j = 0; j < e; ++j) {
        Bitset other = L[n].sets[j];
        auto ow = [&] { return L[n].witnesses[j]; };
        L[n].add(other & set, [&] { return Formula::conj({ow(), w}); }, opt_.cap, n);
        L[n].add(other | set, [&] { return Formula::disj({ow(), w}); }, opt_.cap, n);
      }
      for (const auto &[f, src] : subst[n])
        L[f.target].add(apply_substitution(set, src), [&] { return syntax::substitute(w, f); }, opt_.cap, f.target);
      if (n >= 1)
        L[n - 1].add(apply_projection(set, proj[n], geo_.total(n - 1)), [&] { return project_witness(w, n - 1); },
                     opt_.cap, n - 1);
    }
    return L;
  }

 private:
  std::vector<Formula> atoms(std::size_t k) const {
    std::vector<Formula> out;
    for (const auto &s : cls_.signature.symbols())
      for (const auto &g : syntax::all_maps(s.arity, k)) {
        std::vector<std::string> args;
        for (std::size_t i = 0; i < s.arity; ++i) args.push_back(syntax::var_name(g(i)));
        out.push_back(Formula::atom(s.name, args));
      }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) out.push_back(Formula::equal(syntax::var_name(i), syntax::var_name(j)));
    return out;
  }

  // exists x_k. w, with x_k renamed to a fresh bound name
  Formula project_witness(const Formula &w, std::size_t k) {
    std::string xk = syntax::var_name(k);
    if (!w.has_free(xk)) return w;
    std::string fresh = "y" + std::to_string(fresh_++);
    return Formula::exists(fresh, syntax::rename_free(w, {{xk, fresh}}));
  }

  const ModelClass &cls_;
  BuildOptions opt_;
  Geometry geo_;
  std::size_t fresh_ = 0;
};

std::vector<Family> build_families(const ModelClass &cls, const BuildOptions &opts) {
  return Builder(cls, opts).run();
}

}  // namespace

std::vector<std::size_t> TheoryContext::carriers(std::size_t n) const {
  std::vector<std::size_t> out;
  for (const auto &m : cls.models) out.push_back(tuple_count(m.size(), n));
  return out;
}

std::size_t TheoryContext::offset(std::size_t model, std::size_t n) const { return Geometry(cls).offset(model, n); }

Bitset TheoryContext::vector_of(const Formula &phi, std::size_t n) const {
  return class_vector(cls, Geometry(cls), phi, n);
}

std::optional<Index> TheoryContext::element_of(const Formula &phi, std::size_t n) const {
  if (n > n_max()) return std::nullopt;
  return lattices[n]->find(vector_of(phi, n));
}

TheoryContext build(const ModelClass &cls, const BuildOptions &opts) {
  cls.validate();
  if (cls.models.empty()) throw Error("build: the model class is empty");
  TheoryContext ctx;
  ctx.cls = cls;
  ctx.options = opts;
  auto fams = build_families(cls, opts);
  for (std::size_t n = 0; n <= opts.n_max; ++n) {
    std::vector<std::optional<Formula>> wit(fams[n].witnesses.begin(), fams[n].witnesses.end());
    auto L = std::make_shared<const DLattice>(DLattice::from_closed_family(ctx.carriers(n), fams[n].sets, wit));
    ctx.lattices.push_back(L);
    ctx.spaces.push_back(spectrum::spec(L));
  }
  if (opts.probe) {
    BuildOptions wider = opts;
    wider.budget += 1;
    wider.probe = false;
    try {
      auto probe = build_families(cls, wider);
      ctx.stabilization = Stabilization::Stable;
      for (std::size_t n = 0; n <= opts.n_max; ++n)
        if (probe[n].sets.size() != ctx.lattices[n]->size()) ctx.stabilization = Stabilization::Changed;
    } catch (const CapExceeded &) {
      ctx.stabilization = Stabilization::ProbeExceededCap;
    }
  }
  return ctx;
}

const SpectralSpace &type_space(const TheoryContext &ctx, std::size_t n) {
  if (n > ctx.n_max()) throw Error("type_space: arity " + std::to_string(n) + " above n_max");
  return ctx.spaces[n];
}

namespace {

std::size_t point_of(const SpectralSpace &s, const Bitset &filter) {
  auto it = std::lower_bound(s.points.begin(), s.points.end(), filter, BitsetLexLess{});
  if (it == s.points.end() || !(*it == filter)) throw std::logic_error("realised type is not a prime filter");
  return static_cast<std::size_t>(it - s.points.begin());
}

}  // namespace

std::size_t tp(const TheoryContext &ctx, std::size_t model, const Tuple &tuple) {
  std::size_t n = tuple.size();
  if (n > ctx.n_max()) throw Error("tp: tuple longer than n_max");
  if (model >= ctx.cls.models.size()) throw Error("tp: model not in class");
  const auto &L = *ctx.lattices[n];
  std::size_t bit = ctx.offset(model, n) + tuple_index(tuple, ctx.cls.models[model].size());
  Bitset f(L.size());
  for (Index a = 0; a < L.size(); ++a)
    if (L.set(a).test(bit)) f.set(a);
  return point_of(ctx.spaces[n], f);
}

std::size_t tp(const TheoryContext &ctx, const FiniteStructure &m, const Tuple &tuple) {
  std::size_t i = ctx.cls.find(m);
  if (i == ctx.cls.models.size()) throw Error("tp: model not in class");
  return tp(ctx, i, tuple);
}

CompleteType complete_type(const TheoryContext &ctx, std::size_t n, std::size_t point) {
  const auto &L = *ctx.lattices[n];
  const auto &p = ctx.spaces[n].points.at(point);
  CompleteType out;
  for (Index a = 0; a < L.size(); ++a) {
    if (!L.witness(a)) continue;
    (p.test(a) ? out.positive : out.negative).push_back(*L.witness(a));
  }
  return out;
}

FStar f_star(const TheoryContext &ctx, const OrdinalMap &f) {
  std::size_t n = f.source, m = f.target;
  if (n > ctx.n_max() || m > ctx.n_max()) throw Error("f_star: arity out of range");
  Geometry geo(ctx.cls);
  auto src = geo.substitution_sources(f);
  const auto &Ln = ctx.lattices[n];
  const auto &Lm = ctx.lattices[m];
  FStar out;
  out.hom = {Ln, Lm, {}};
  for (Index a = 0; a < Ln->size(); ++a) {
    auto b = Lm->find(apply_substitution(Ln->set(a), src));
    if (!b) throw std::logic_error("f_star: substituted set missing from L_m");
    out.hom.map.push_back(*b);
  }
  auto induced = spectrum::spectral_map_from_hom(out.hom, ctx.spaces[n], ctx.spaces[m]);
  out.map = induced.map;
  out.spectral = induced.spectral;
  out.open = induced.open;

  out.preimage_identity = true;
  for (Index a = 0; a < Ln->size(); ++a)
    if (!(spectrum::preimage(out.map, ctx.spaces[n].basic[a]) == ctx.spaces[m].basic[out.hom.map[a]]))
      out.preimage_identity = false;

  // the image of [psi] should be the basic open of
  // exists x (psi(x) & y_0 = x_f(0) & ... )
  out.image_identity = true;
  for (Index psi = 0; psi < Lm->size(); ++psi) {
    Bitset e(geo.total(n));
    const Bitset &s = Lm->set(psi);
    for (std::size_t pos : s.indices()) e.set(src[pos]);
    auto idx = Ln->find(e);
    if (!idx || !(spectrum::image(out.map, ctx.spaces[m].basic[psi]) == ctx.spaces[n].basic[*idx])) {
      out.image_identity = false;
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

ForeignTypes realized_types(const TheoryContext &ctx, const FiniteStructure &m) {
  ForeignTypes out;
  std::size_t member = ctx.cls.find(m);
  out.types.resize(ctx.n_max() + 1);
  if (member < ctx.cls.models.size()) {
    out.models_theory = true;
    for (std::size_t n = 0; n <= ctx.n_max(); ++n)
      for (std::size_t t = 0; t < tuple_count(m.size(), n); ++t)
        out.types[n].push_back(tp(ctx, member, tuple_at(t, n, m.size())));
    return out;
  }
  if (!(m.signature() == ctx.cls.signature)) return out;
  for (const auto &ax : ctx.cls.axioms)
    if (!semantics::satisfies_axiom(m, ax)) return out;

  ModelClass wider = ctx.cls;
  wider.models.push_back(m);
  BuildOptions opts = ctx.options;
  opts.probe = false;
  auto fams = build_families(wider, opts);
  Geometry geo(wider);
  std::size_t last = wider.models.size() - 1;
  for (std::size_t n = 0; n <= ctx.n_max(); ++n) {
    const auto &L = *ctx.lattices[n];
    if (fams[n].sets.size() != L.size()) return out;  // m separates formulas the class identifies
    std::size_t class_bits = geo.offset(last, n);
    std::size_t count = tuple_count(m.size(), n);
    std::vector<Bitset> filters(count, Bitset(L.size()));
    for (const auto &s : fams[n].sets) {
      Bitset restricted(class_bits);
      for (std::size_t b : s.indices())
        if (b < class_bits) restricted.set(b);
      auto a = L.find(restricted);
      if (!a) throw std::logic_error("realized_types: restriction left the lattice");
      for (std::size_t t = 0; t < count; ++t)
        if (s.test(class_bits + t)) filters[t].set(*a);
    }
    for (const auto &f : filters) out.types[n].push_back(point_of(ctx.spaces[n], f));
  }
  out.models_theory = true;
  return out;
}

bool pc_by_maximal_types(const TheoryContext &ctx, const ForeignTypes &t) {
  if (!t.models_theory) return false;
  for (std::size_t n = 0; n < t.types.size(); ++n) {
    const auto &s = ctx.spaces[n];
    for (std::size_t p : t.types[n])
      for (std::size_t q = 0; q < s.size(); ++q)
        if (q != p && s.specializes(p, q)) return false;
  }
  return true;
}

bool is_immersion(const TheoryContext &ctx, const FiniteStructure &m, const FiniteStructure &n,
                  const semantics::Homomorphism &h) {
  if (!semantics::is_homomorphism(m, n, h)) throw Error("is_immersion: not a homomorphism");
  auto tm = realized_types(ctx, m);
  auto tn = realized_types(ctx, n);
  if (!tm.models_theory || !tn.models_theory) throw Error("is_immersion: structure is not a model of the theory");
  for (std::size_t k = 0; k <= ctx.n_max(); ++k)
    for (std::size_t t = 0; t < tuple_count(m.size(), k); ++t) {
      Tuple a = tuple_at(t, k, m.size());
      Tuple b;
      for (Element e : a) b.push_back(h(e));
      if (tm.types[k][t] != tn.types[k][tuple_index(b, n.size())]) return false;
    }
  return true;
}

bool is_positively_closed_semantic(const TheoryContext &ctx, const FiniteStructure &m) {
  for (const auto &n : ctx.cls.models)
    for (const auto &h : semantics::homomorphisms(m, n))
      if (!is_immersion(ctx, m, n, h)) return false;
  return true;
}

}  // namespace pmt::typespace
