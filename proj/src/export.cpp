#include "pmt/export.hpp"

#include <sstream>

namespace pmt::io {

using lattice::DLattice;
using lattice::Index;
using spectrum::SpectralSpace;

namespace {

std::string dot_escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

Json index_list(const Bitset &b) {
  Json arr = Json::array();
  for (auto i : b.indices()) arr.push_back(i);
  return arr;
}

// Pairs (a, b) with a < b and nothing strictly between.
std::vector<std::pair<Index, Index>> lattice_covers(const DLattice &L) {
  std::vector<std::pair<Index, Index>> out;
  for (Index a = 0; a < L.size(); ++a)
    for (Index b = 0; b < L.size(); ++b) {
      if (a == b || !L.leq(a, b)) continue;
      bool cover = true;
      for (Index c = 0; c < L.size() && cover; ++c)
        if (c != a && c != b && L.leq(a, c) && L.leq(c, b)) cover = false;
      if (cover) out.emplace_back(a, b);
    }
  return out;
}

// Pairs (p, q): q is strictly contained in p with nothing in between.
std::vector<std::pair<std::size_t, std::size_t>> space_covers(const SpectralSpace &s) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t p = 0; p < s.size(); ++p)
    for (std::size_t q = 0; q < s.size(); ++q) {
      if (p == q || !s.specializes(q, p)) continue;
      bool cover = true;
      for (std::size_t r = 0; r < s.size() && cover; ++r)
        if (r != p && r != q && s.specializes(q, r) && s.specializes(r, p)) cover = false;
      if (cover) out.emplace_back(p, q);
    }
  return out;
}

// The least element of a filter, i.e. its join-irreducible generator.
Index filter_generator(const DLattice &L, const Bitset &f) {
  Index g = L.top();
  for (auto a : f.indices()) g = L.meet(g, static_cast<Index>(a));
  return g;
}

}  // namespace

Json lattice_json(const DLattice &L) {
  Json j;
  j["size"] = L.size();
  j["bottom"] = L.bottom();
  j["top"] = L.top();
  Json elems = Json::array();
  for (Index a = 0; a < L.size(); ++a) {
    Json e;
    e["index"] = a;
    e["label"] = L.label(a);
    if (L.has_sets()) e["set"] = L.set(a).to_string();
    elems.push_back(e);
  }
  j["elements"] = elems;
  if (L.has_sets()) j["carriers"] = L.carriers();
  j["meet"] = L.meet_table();
  j["join"] = L.join_table();
  Json ji = Json::array();
  for (auto x : L.join_irreducibles()) ji.push_back(x);
  j["join_irreducibles"] = ji;
  return j;
}

std::string lattice_dot(const DLattice &L, const std::string &name) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=BT;\n  node [shape=box];\n";
  for (Index a = 0; a < L.size(); ++a) os << "  e" << a << " [label=\"" << dot_escape(L.label(a)) << "\"];\n";
  for (auto [a, b] : lattice_covers(L)) os << "  e" << a << " -> e" << b << ";\n";
  os << "}\n";
  return os.str();
}

DLattice lattice_from_json(const std::string &text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw ParseError(std::string("invalid lattice JSON: ") + e.what());
  }
  try {
    if (j.contains("family")) {
      const auto &f = j.at("family");
      auto carriers = f.at("carriers").get<std::vector<std::size_t>>();
      std::vector<Bitset> gens;
      for (const auto &g : f.at("generators")) gens.push_back(Bitset::from_string(g.get<std::string>()));
      return lattice::from_set_family(carriers, gens);
    }
    auto meet = j.at("meet").get<std::vector<std::vector<Index>>>();
    auto join = j.at("join").get<std::vector<std::vector<Index>>>();
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return DLattice::validate(meet, join, j.at("bottom").get<Index>(), j.at("top").get<Index>(), labels);
  } catch (const Json::exception &e) {
    throw ParseError(std::string("malformed lattice file: ") + e.what());
  } catch (const std::invalid_argument &e) {
    throw ParseError(std::string("malformed lattice file: ") + e.what());
  }
}

Json space_json(const SpectralSpace &s) {
  const auto &L = *s.lattice;
  Json j;
  Json pts = Json::array();
  for (std::size_t p = 0; p < s.size(); ++p) {
    Json e;
    e["id"] = "p" + std::to_string(p);
    e["generator"] = L.label(filter_generator(L, s.points[p]));
    e["elements"] = index_list(s.points[p]);
    pts.push_back(e);
  }
  j["points"] = pts;
  Json opens = Json::array();
  for (Index a = 0; a < L.size(); ++a) {
    Json o;
    o["element"] = a;
    o["label"] = L.label(a);
    o["points"] = index_list(s.basic[a]);
    opens.push_back(o);
  }
  j["opens"] = opens;
  Json spec = Json::array();
  for (auto [p, q] : space_covers(s)) spec.push_back(Json::array({p, q}));
  j["specialization"] = spec;
  Json comps = Json::array();
  for (const auto &c : spectrum::irreducible_components(s)) {
    Json e;
    e["generic"] = c.generic;
    e["points"] = index_list(c.points);
    comps.push_back(e);
  }
  j["components"] = comps;
  j["flags"] = {{"t0", spectrum::is_t0(s)}, {"sober", spectrum::is_sober(s)}, {"hausdorff", spectrum::is_hausdorff(s)}};
  return j;
}

std::string space_dot(const SpectralSpace &s, const std::string &name) {
  const auto &L = *s.lattice;
  auto comps = spectrum::irreducible_components(s);
  std::vector<bool> generic(s.size(), false);
  for (const auto &c : comps) generic[c.generic] = true;
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n  node [shape=ellipse];\n";
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const auto &c = comps[k];
    os << "  subgraph cluster_" << k << " {\n    label=\"component " << k << " (" << c.points.count()
       << (c.points.count() == 1 ? " point)" : " points)") << "\";\n";
    os << "    p" << c.generic << ";\n  }\n";
  }
  for (std::size_t p = 0; p < s.size(); ++p) {
    os << "  p" << p << " [label=\"p" << p << ": " << dot_escape(L.label(filter_generator(L, s.points[p]))) << "\"";
    if (generic[p]) os << ", peripheries=2, style=filled, fillcolor=lightgoldenrod";
    os << "];\n";
  }
  for (auto [p, q] : space_covers(s)) os << "  p" << p << " -> p" << q << ";\n";
  os << "}\n";
  return os.str();
}

std::string space_text(const SpectralSpace &s) {
  const auto &L = *s.lattice;
  std::ostringstream os;
  os << "lattice elements: " << L.size() << "\n";
  os << "points: " << s.size() << "\n";
  for (std::size_t p = 0; p < s.size(); ++p)
    os << "  p" << p << " = up(" << L.label(filter_generator(L, s.points[p])) << ")\n";
  for (auto [p, q] : space_covers(s)) os << "  p" << q << " in closure of p" << p << "\n";
  auto comps = spectrum::irreducible_components(s);
  os << "components: " << comps.size() << "\n";
  for (const auto &c : comps) {
    os << "  generic p" << c.generic << ":";
    for (auto q : c.points.indices()) os << " p" << q;
    os << "\n";
  }
  os << "t0: " << spectrum::is_t0(s) << "  sober: " << spectrum::is_sober(s)
     << "  hausdorff: " << spectrum::is_hausdorff(s) << "\n";
  return os.str();
}

Json structure_json(const semantics::FiniteStructure &m) {
  Json j;
  j["name"] = m.name();
  j["universe"] = m.size();
  Json rels = Json::object();
  for (std::size_t s = 0; s < m.signature().size(); ++s) {
    Json ts = Json::array();
    for (const auto &t : m.tuples(s)) ts.push_back(t);
    rels[m.signature().symbols()[s].name] = ts;
  }
  j["relations"] = rels;
  return j;
}

namespace {

struct Verdicts {
  std::vector<typespace::PmcVerdict> pmc;
  std::vector<typespace::AmalgamationVerdict> amalgamation;
  bool jcp;
  std::vector<bool> countcat, density;
  typespace::PcPrimeReport flags;
  struct TypeVerdict {
    std::string name;
    std::size_t arity;
    std::optional<std::string> support;
    std::optional<std::string> error;
  };
  std::vector<TypeVerdict> types;
};

Verdicts compute(const ReportInput &in) {
  const auto &ctx = *in.ctx;
  Verdicts v;
  v.pmc = typespace::check_pmc(ctx);
  v.amalgamation = typespace::check_amalgamation(ctx);
  v.jcp = typespace::check_jcp(ctx);
  v.countcat = typespace::check_countcat_condition(ctx);
  v.density = typespace::check_somewhere_dense_density(ctx);
  v.flags = typespace::pc_and_prime_report(ctx);
  for (const auto &t : in.block->types) {
    Verdicts::TypeVerdict tv{t.name, t.arity, std::nullopt, std::nullopt};
    try {
      auto p = dsl::resolve_type(ctx, t);
      auto r = typespace::support_of(ctx, p);
      if (r.support) tv.support = ctx.lattices[p.n]->label(*r.support);
    } catch (const Error &e) {
      tv.error = e.what();
    }
    v.types.push_back(tv);
  }
  return v;
}

const char *kDisclosure =
    "lattices are exact for positive formulas whose pp-normal form uses at most n_max+budget variables; "
    "all verdicts are per arity up to n_max";

}  // namespace

Json theory_report_json(const ReportInput &in) {
  const auto &ctx = *in.ctx;
  auto v = compute(in);
  Json j;
  j["theory"] = in.block->name;
  Json sig = Json::array();
  for (const auto &s : ctx.cls.signature.symbols()) sig.push_back({{"name", s.name}, {"arity", s.arity}});
  j["signature"] = sig;
  Json models = Json::array();
  for (const auto &m : ctx.cls.models) models.push_back({{"name", m.name()}, {"size", m.size()}});
  j["models"] = models;
  Json axioms = Json::array();
  for (const auto &ax : ctx.cls.axioms) axioms.push_back(syntax::to_string(ax));
  j["axioms"] = axioms;
  j["window"] = {{"n_max", ctx.options.n_max},
                 {"budget", ctx.options.budget},
                 {"working_arity", ctx.options.n_max + ctx.options.budget},
                 {"stabilization", typespace::to_string(ctx.stabilization)},
                 {"disclosure", kDisclosure}};
  Json arities = Json::array();
  bool pmc_all = true;
  for (std::size_t n = 0; n <= ctx.n_max(); ++n) {
    const auto &a = v.amalgamation[n];
    Json amal = {{"disjoint", a.disjoint}};
    if (a.shared_point) {
      amal["shared_point"] = *a.shared_point;
      amal["generic_a"] = *a.generic_a;
      amal["generic_b"] = *a.generic_b;
    } else {
      amal["shared_point"] = nullptr;
      amal["generic_a"] = nullptr;
      amal["generic_b"] = nullptr;
    }
    pmc_all = pmc_all && v.pmc[n].hausdorff;
    Json e;
    e["n"] = n;
    e["lattice_size"] = ctx.lattices[n]->size();
    e["points"] = ctx.spaces[n].size();
    e["hausdorff"] = v.pmc[n].hausdorff;
    e["complemented"] = v.pmc[n].complemented;
    e["amalgamation"] = amal;
    e["countcat"] = static_cast<bool>(v.countcat[n]);
    e["somewhere_dense_density"] = static_cast<bool>(v.density[n]);
    e["space"] = space_json(ctx.spaces[n]);
    arities.push_back(e);
  }
  j["arities"] = arities;
  j["pmc"] = pmc_all;
  j["jcp"] = v.jcp;
  Json flags = Json::array();
  for (const auto &f : v.flags.models)
    flags.push_back({{"name", f.name},
                     {"positively_closed", f.pc_maximal},
                     {"positively_closed_semantic", f.pc_semantic},
                     {"atomic", f.atomic},
                     {"prime", f.prime}});
  j["model_flags"] = flags;
  j["prime_iff_atomic"] = v.flags.prime_iff_atomic ? Json(*v.flags.prime_iff_atomic) : Json(nullptr);
  Json types = Json::array();
  for (const auto &t : v.types) {
    Json e = {{"name", t.name}, {"arity", t.arity}};
    e["support"] = t.support ? Json(*t.support) : Json(nullptr);
    e["nowhere_dense"] = !t.support && !t.error;
    e["error"] = t.error ? Json(*t.error) : Json(nullptr);
    types.push_back(e);
  }
  j["types"] = types;
  return j;
}

std::string theory_report_text(const ReportInput &in) {
  const auto &ctx = *in.ctx;
  auto v = compute(in);
  std::ostringstream os;
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  os << "theory " << in.block->name << ": " << ctx.cls.models.size() << " models, " << ctx.cls.axioms.size()
     << " axioms\n";
  os << "window: n_max=" << ctx.options.n_max << " budget=" << ctx.options.budget
     << " stabilization=" << typespace::to_string(ctx.stabilization) << "\n  (" << kDisclosure << ")\n";
  for (std::size_t n = 0; n <= ctx.n_max(); ++n) {
    const auto &a = v.amalgamation[n];
    os << "n=" << n << ": elements=" << ctx.lattices[n]->size() << " points=" << ctx.spaces[n].size()
       << " hausdorff=" << yn(v.pmc[n].hausdorff) << " amalgamation=" << yn(a.disjoint);
    if (a.shared_point)
      os << " (p" << *a.shared_point << " in components of p" << *a.generic_a << " and p" << *a.generic_b << ")";
    os << " countcat=" << yn(v.countcat[n]) << " density=" << yn(v.density[n]) << "\n";
  }
  os << "jcp=" << yn(v.jcp) << "\n";
  for (const auto &f : v.flags.models)
    os << "model " << f.name << ": pc=" << yn(f.pc_maximal) << " pc_semantic=" << yn(f.pc_semantic)
       << " atomic=" << yn(f.atomic) << " prime=" << yn(f.prime) << "\n";
  for (const auto &t : v.types) {
    os << "type " << t.name << "/" << t.arity << ": ";
    if (t.error)
      os << "error: " << *t.error;
    else if (t.support)
      os << "support " << *t.support;
    else
      os << "no support (nowhere dense)";
    os << "\n";
  }
  return os.str();
}

std::string theory_report_dot(const ReportInput &in) {
  std::string out;
  for (std::size_t n = 0; n <= in.ctx->n_max(); ++n)
    out += space_dot(in.ctx->spaces[n], in.block->name + " S" + std::to_string(n));
  return out;
}

Json interpretation_json(const InterpretationReport &r) {
  Json j;
  j["name"] = r.name;
  j["source"] = r.source;
  j["target"] = r.target;
  j["verified"] = r.verified;
  j["bijective"] = r.iso.bijective;
  j["homeomorphic"] = r.iso.homeomorphic;
  j["natural"] = r.iso.natural;
  j["failure"] = r.iso.failure.empty() ? Json(nullptr) : Json(r.iso.failure);
  Json beta = Json::array();
  for (const auto &b : r.iso.beta) beta.push_back(b.map);
  j["beta"] = beta;
  return j;
}

std::string interpretation_text(const InterpretationReport &r) {
  std::ostringstream os;
  os << "interpretation " << r.name << " : " << r.source << " -> " << r.target << ": verified=" << r.verified
     << " bijective=" << r.iso.bijective << " homeomorphic=" << r.iso.homeomorphic << " natural=" << r.iso.natural;
  if (!r.iso.failure.empty()) os << " (" << r.iso.failure << ")";
  os << "\n";
  return os.str();
}

}  // namespace pmt::io
