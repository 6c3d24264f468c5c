#include "pmt/theory_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "pmt/error.hpp"
#include "pmt/models.hpp"
#include "pmt/parse.hpp"

namespace pmt::dsl {

using syntax::Tok;
using syntax::TokenStream;

const TheoryBlock &TheoryFile::theory(std::string_view name) const {
  for (const auto &t : theories)
    if (t.name == name) return t;
  throw Error("no theory named '" + std::string(name) + "'");
}

namespace {

struct PendingModel {
  syntax::Token where;
  std::string name;
  std::size_t universe = 0;
  std::vector<std::pair<syntax::Token, std::vector<semantics::Tuple>>> relations;
};

struct PendingTheory {
  std::string name;
  Signature sig;
  bool sig_seen = false;
  std::vector<PendingModel> models;
  std::vector<HInductiveSentence> axioms;
  std::vector<std::pair<syntax::Token, std::size_t>> enumerations;
  std::vector<TypeDecl> types;
  std::vector<Formula> morleise;
  std::optional<syntax::Token> morleise_at;
  bool touched = false;
};

class FileParser {
 public:
  explicit FileParser(std::string_view text) : ts_(syntax::tokenize(text)) {}

  TheoryFile run() {
    PendingTheory implicit;
    implicit.name = "main";
    while (!ts_.at(Tok::End)) {
      if (ts_.at_keyword("theory")) {
        ts_.next();
        syntax::Token name_tok = ts_.peek();
        PendingTheory t;
        t.name = ts_.expect_ident("theory name");
        check_new_theory(name_tok, t.name);
        ts_.expect(Tok::LBrace, "'{'");
        while (!ts_.at(Tok::RBrace)) item(t);
        ts_.next();
        finish(t);
      } else if (ts_.at_keyword("interpretation")) {
        interpretation();
      } else {
        item(implicit);
        implicit.touched = true;
      }
    }
    if (implicit.touched) {
      check_new_theory(ts_.peek(), implicit.name);
      finish(implicit);
    }
    return std::move(out_);
  }

 private:
  void check_new_theory(const syntax::Token &at, const std::string &name) {
    for (const auto &t : out_.theories)
      if (t.name == name) ts_.fail_at(at, "duplicate theory '" + name + "'");
  }

  void item(PendingTheory &t) {
    if (ts_.at_keyword("sig")) {
      if (t.sig_seen) ts_.fail("signature declared twice");
      if (!t.models.empty() || !t.axioms.empty()) ts_.fail("signature must come first");
      ts_.next();
      while (!ts_.at(Tok::Semi)) {
        syntax::Token nt = ts_.peek();
        std::string name = ts_.expect_ident("relation symbol");
        ts_.expect(Tok::Slash, "'/'");
        std::size_t ar = ts_.expect_int("arity");
        try {
          t.sig.add(name, ar);
        } catch (const ParseError &e) {
          ts_.fail_at(nt, e.what());
        }
      }
      ts_.next();
      t.sig_seen = true;
    } else if (ts_.at_keyword("model")) {
      model(t);
    } else if (ts_.at_keyword("axiom")) {
      ts_.next();
      Formula a = syntax::parse_formula(ts_, t.sig, false);
      ts_.expect(Tok::Arrow, "'->'");
      Formula c = syntax::parse_formula(ts_, t.sig, false);
      ts_.expect(Tok::Semi, "';'");
      t.axioms.push_back(HInductiveSentence::closure(a, c));
    } else if (ts_.at_keyword("enumerate")) {
      syntax::Token at = ts_.next();
      std::size_t k = ts_.expect_int("model size bound");
      if (k == 0) ts_.fail_at(at, "enumeration bound must be positive");
      ts_.expect(Tok::Semi, "';'");
      t.enumerations.emplace_back(at, k);
    } else if (ts_.at_keyword("type")) {
      ts_.next();
      TypeDecl d;
      d.name = ts_.expect_ident("type name");
      ts_.expect(Tok::Slash, "'/'");
      d.arity = ts_.expect_int("arity");
      ts_.expect(Tok::LBrace, "'{'");
      while (!ts_.at(Tok::RBrace)) {
        syntax::Token at = ts_.peek();
        Formula f = syntax::parse_formula(ts_, t.sig, false);
        for (const auto &v : f.free_vars()) {
          auto i = syntax::var_index(v);
          if (!i || *i >= d.arity)
            ts_.fail_at(at, "free variable " + v + " outside x0..x" + std::to_string(d.arity) + "-1");
        }
        d.formulas.push_back(f);
        if (!ts_.at(Tok::RBrace)) ts_.expect(Tok::Comma, "',' or '}'");
      }
      ts_.next();
      ts_.expect(Tok::Semi, "';'");
      for (const auto &o : t.types)
        if (o.name == d.name) ts_.fail("duplicate type '" + d.name + "'");
      t.types.push_back(std::move(d));
    } else if (ts_.at_keyword("morleise")) {
      t.morleise_at = ts_.next();
      ts_.expect(Tok::LBrace, "'{'");
      while (!ts_.at(Tok::RBrace)) {
        t.morleise.push_back(syntax::parse_formula(ts_, t.sig, true));
        ts_.expect(Tok::Semi, "';'");
      }
      ts_.next();
    } else {
      ts_.fail("expected sig, model, axiom, enumerate, type, morleise, theory or interpretation");
    }
  }

  void model(PendingTheory &t) {
    PendingModel m;
    m.where = ts_.next();
    m.name = ts_.expect_ident("model name");
    ts_.expect(Tok::LBrace, "'{'");
    ts_.expect_keyword("universe");
    syntax::Token ut = ts_.peek();
    m.universe = ts_.expect_int("universe size");
    if (m.universe == 0) ts_.fail_at(ut, "universe must be nonempty");
    ts_.expect(Tok::Semi, "';'");
    while (!ts_.at(Tok::RBrace)) {
      syntax::Token rel = ts_.peek();
      ts_.expect_ident("relation symbol");
      ts_.expect(Tok::Eq, "'='");
      ts_.expect(Tok::LBrace, "'{'");
      std::vector<semantics::Tuple> tuples;
      while (!ts_.at(Tok::RBrace)) {
        semantics::Tuple tup;
        if (ts_.at(Tok::LParen)) {
          ts_.next();
          while (!ts_.at(Tok::RParen)) {
            tup.push_back(static_cast<semantics::Element>(ts_.expect_int("element")));
            if (!ts_.at(Tok::RParen)) ts_.expect(Tok::Comma, "',' or ')'");
          }
          ts_.next();
        } else {
          tup.push_back(static_cast<semantics::Element>(ts_.expect_int("element or tuple")));
        }
        tuples.push_back(tup);
        if (!ts_.at(Tok::RBrace)) ts_.expect(Tok::Comma, "',' or '}'");
      }
      ts_.next();
      ts_.expect(Tok::Semi, "';'");
      m.relations.emplace_back(rel, std::move(tuples));
    }
    ts_.next();
    for (const auto &o : t.models)
      if (o.name == m.name) ts_.fail_at(m.where, "duplicate model '" + m.name + "'");
    t.models.push_back(std::move(m));
  }

  void finish(PendingTheory &t) {
    TheoryBlock b;
    b.name = t.name;
    std::vector<FiniteStructure> models;
    for (const auto &pm : t.models) {
      FiniteStructure m(t.sig, pm.universe, pm.name);
      std::set<std::string> seen;
      for (const auto &[tok, tuples] : pm.relations) {
        if (!t.sig.contains(tok.text)) ts_.fail_at(tok, "unknown relation symbol '" + tok.text + "'");
        if (!seen.insert(tok.text).second) ts_.fail_at(tok, "relation '" + tok.text + "' given twice");
        for (const auto &tup : tuples) {
          try {
            m.add_tuple(tok.text, tup);
          } catch (const Error &e) {
            ts_.fail_at(tok, e.what());
          }
        }
      }
      models.push_back(std::move(m));
    }
    for (const auto &[tok, k] : t.enumerations) {
      try {
        for (auto &m : semantics::find_models(t.axioms, t.sig, k)) {
          bool dup = false;
          for (const auto &o : models)
            if (semantics::isomorphic(o, m)) dup = true;
          if (!dup) models.push_back(std::move(m));
        }
      } catch (const ParseError &) {
        throw;
      } catch (const Error &e) {
        ts_.fail_at(tok, e.what());
      }
    }
    b.cls.signature = t.sig;
    b.cls.axioms = t.axioms;
    if (t.morleise_at) {
      try {
        b.morleisation = syntax::morleise(t.morleise, t.sig);
      } catch (const ParseError &e) {
        ts_.fail_at(*t.morleise_at, e.what());
      }
      b.cls.signature = b.morleisation->signature;
      for (auto &m : models) m = semantics::expand(*b.morleisation, m);
      for (const auto &ax : b.morleisation->axioms) b.cls.axioms.push_back(ax);
    }
    b.cls.models = std::move(models);
    try {
      b.cls.validate();
    } catch (const ParseError &) {
      throw;
    } catch (const Error &e) {
      throw ParseError("theory " + t.name + ": " + e.what());
    }
    b.types = t.types;
    out_.theories.push_back(std::move(b));
  }

  void interpretation() {
    ts_.next();
    InterpretationDecl d;
    d.name = ts_.expect_ident("interpretation name");
    ts_.expect(Tok::Colon, "':'");
    syntax::Token st = ts_.peek();
    d.source = ts_.expect_ident("source theory");
    ts_.expect(Tok::Arrow, "'->'");
    syntax::Token tt = ts_.peek();
    d.target = ts_.expect_ident("target theory");
    const TheoryBlock *src = find(d.source);
    const TheoryBlock *tgt = find(d.target);
    if (!src) ts_.fail_at(st, "unknown theory '" + d.source + "' (declare it first)");
    if (!tgt) ts_.fail_at(tt, "unknown theory '" + d.target + "' (declare it first)");
    auto &g = d.interpretation;
    g.name = d.name;
    g.source = src->cls.signature;
    g.target = tgt->cls.signature;
    ts_.expect(Tok::LBrace, "'{'");
    while (!ts_.at(Tok::RBrace)) {
      syntax::Token rt = ts_.peek();
      std::string r = ts_.expect_ident("source relation symbol");
      auto ar = g.source.arity_of(r);
      if (!ar) ts_.fail_at(rt, "'" + r + "' is not a symbol of " + d.source);
      std::vector<std::string> params;
      if (ts_.at(Tok::LParen)) {
        ts_.next();
        while (!ts_.at(Tok::RParen)) {
          params.push_back(ts_.expect_ident("parameter"));
          if (!ts_.at(Tok::RParen)) ts_.expect(Tok::Comma, "',' or ')'");
        }
        ts_.next();
        if (params.size() != *ar) ts_.fail_at(rt, "parameter count differs from the arity of '" + r + "'");
      }
      ts_.expect(Tok::Assign, "':='");
      syntax::Token ft = ts_.peek();
      Formula f = syntax::parse_formula(ts_, g.target, false);
      ts_.expect(Tok::Semi, "';'");
      if (!params.empty()) {
        std::map<std::string, std::string> ren;
        for (std::size_t i = 0; i < params.size(); ++i) ren[params[i]] = syntax::var_name(i);
        for (const auto &v : f.free_vars())
          if (!ren.count(v)) ts_.fail_at(ft, "free variable " + v + " is not a parameter");
        f = syntax::rename_free(f, ren);
      }
      if (g.mapping.count(r)) ts_.fail_at(rt, "'" + r + "' mapped twice");
      g.mapping.emplace(r, f);
    }
    syntax::Token close = ts_.next();
    try {
      g.check();
    } catch (const Error &e) {
      ts_.fail_at(close, e.what());
    }
    out_.interpretations.push_back(std::move(d));
  }

  const TheoryBlock *find(const std::string &name) const {
    for (const auto &t : out_.theories)
      if (t.name == name) return &t;
    return nullptr;
  }

  TokenStream ts_;
  TheoryFile out_;
};

}  // namespace

TheoryFile parse_theory_file(std::string_view text) { return FileParser(text).run(); }

TheoryFile load_theory_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_theory_file(ss.str());
}

typespace::PiType resolve_type(const typespace::TheoryContext &ctx, const TypeDecl &t) {
  if (t.arity > ctx.n_max())
    throw Error("type " + t.name + " has arity " + std::to_string(t.arity) + " above n_max");
  typespace::PiType p;
  p.n = t.arity;
  for (const auto &f : t.formulas) {
    auto a = ctx.element_of(f, t.arity);
    if (!a) throw Error("type " + t.name + ": " + syntax::to_string(f) + " is not in the lattice");
    p.elements.push_back(*a);
    p.witnesses.push_back(f);
  }
  return p;
}

}  // namespace pmt::dsl
