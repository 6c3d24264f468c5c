#include <doctest.h>

#include <random>

#include "pmt/homomorphism.hpp"
#include "pmt/models.hpp"
#include "pmt/parse.hpp"
#include "pmt/semantics.hpp"
#include "testkit.hpp"

using namespace pmt::semantics;
using pmt::syntax::parse_formula;
using pmt::syntax::Signature;

namespace {

const Signature kR{{"R", 2}};
const Signature kP{{"P", 1}};

FiniteStructure edge() {
  FiniteStructure m(kR, 2, "Edge");
  m.add_tuple("R", {0, 1});
  return m;
}

FiniteStructure random_structure(const Signature &sig, std::size_t size, std::mt19937 &rng) {
  FiniteStructure m(sig, size);
  for (std::size_t s = 0; s < sig.size(); ++s) {
    auto ar = sig.symbols()[s].arity;
    for (std::size_t t = 0; t < tuple_count(size, ar); ++t)
      if (rng() % 3 == 0) m.add_tuple(s, tuple_at(t, ar, size));
  }
  return m;
}

pmt::syntax::HInductiveSentence axiom(const char *lhs, const char *rhs, const Signature &sig) {
  return pmt::syntax::HInductiveSentence::closure(parse_formula(lhs, sig), parse_formula(rhs, sig));
}

}  // namespace

TEST_SUITE("semantics") {
  TEST_CASE("denotations") {
    auto m = edge();
    auto d = denotation(m, parse_formula("exists y. R(x0,y)", kR), 1);
    CHECK(d.tuples() == std::vector<Tuple>{{0}});
    CHECK(denotation(m, pmt::syntax::Formula::top(), 1).tuples() == std::vector<Tuple>{{0}, {1}});
    CHECK(denotation(m, pmt::syntax::Formula::bottom(), 0).tuples().empty());
    CHECK(denotation(m, pmt::syntax::Formula::top(), 0).tuples() == std::vector<Tuple>{{}});
  }

  TEST_CASE("denotation agrees with direct assignment loops") {
    std::mt19937 rng(3);
    auto phi = parse_formula("exists y. R(x0,y) & R(y,x1) | x0 = x1", kR);
    for (int round = 0; round < 20; ++round) {
      auto m = random_structure(kR, 3, rng);
      auto d = denotation(m, phi, 2);
      for (Element a = 0; a < 3; ++a)
        for (Element b = 0; b < 3; ++b) {
          bool expect = a == b;
          for (Element y = 0; y < 3; ++y) expect = expect || (m.holds("R", {a, y}) && m.holds("R", {y, b}));
          CHECK(d.contains({a, b}) == expect);
        }
    }
  }

  TEST_CASE("axiom satisfaction") {
    auto m = edge();
    CHECK(satisfies_axiom(m, axiom("true", "true", kR)));
    CHECK_FALSE(satisfies_axiom(m, axiom("R(x,y)", "R(y,x)", kR)));
    CHECK(satisfies_axiom(m, axiom("R(x,x)", "false", kR)));
  }

  TEST_CASE("homomorphism counts") {
    FiniteStructure one(kR, 1);
    CHECK(homomorphisms(one, one).size() == 1);
    FiniteStructure loop(kR, 1);
    loop.add_tuple("R", {0, 0});
    CHECK(homomorphisms(edge(), loop).size() == 1);
    CHECK(homomorphisms(edge(), one).empty());
    CHECK(is_homomorphism(edge(), loop, Homomorphism{{0, 0}}));
    CHECK_FALSE(exists_homomorphism(edge(), one));
  }

  TEST_CASE("homomorphism search equals exhaustive enumeration") {
    std::mt19937 rng(5);
    Signature sig{{"R", 2}, {"P", 1}, {"B", 0}};
    for (int round = 0; round < 60; ++round) {
      auto m = random_structure(sig, 1 + rng() % 3, rng);
      auto n = random_structure(sig, 1 + rng() % 4, rng);
      auto fast = homomorphisms(m, n);
      CHECK(fast == pmt::testkit::brute_homs(m, n));
      CHECK(exists_homomorphism(m, n) == !fast.empty());
      auto limited = homomorphisms(m, n, 1);
      CHECK(limited.size() == std::min<std::size_t>(1, fast.size()));
    }
  }

  TEST_CASE("composition and induced substructures") {
    auto m = edge();
    FiniteStructure loop(kR, 1);
    loop.add_tuple("R", {0, 0});
    auto h = homomorphisms(m, loop).front();
    auto id = homomorphisms(loop, loop).front();
    CHECK(compose(id, h) == h);
    auto sub = induced_substructure(m, {1, 0});
    CHECK(sub.holds("R", {1, 0}));
    CHECK_FALSE(sub.holds("R", {0, 1}));
  }

  TEST_CASE("model enumeration") {
    CHECK(find_models({}, kP, 1).size() == 2);
    CHECK(find_models({axiom("true", "P(x)", kP)}, kP, 2).size() == 2);
    CHECK(find_models({axiom("P(x)", "false", kP), axiom("true", "P(x)", kP)}, kP, 3).empty());
  }

  TEST_CASE("model enumeration matches brute force up to isomorphism") {
    for (const auto &ax : std::vector<std::vector<pmt::syntax::HInductiveSentence>>{
             {}, {axiom("R(x,y)", "R(y,x)", kR)}, {axiom("true", "exists y. R(x,y)", kR)}}) {
      auto found = find_models(ax, kR, 3);
      std::vector<FiniteStructure> reps;
      for (std::size_t size = 1; size <= 3; ++size)
        pmt::testkit::for_each_structure(kR, size, [&](const FiniteStructure &m) {
          for (const auto &a : ax)
            if (!satisfies_axiom(m, a)) return false;
          for (const auto &r : reps)
            if (pmt::testkit::brute_isomorphic(r, m)) return false;
          reps.push_back(m);
          return false;
        });
      CHECK(found.size() == reps.size());
      for (const auto &f : found) {
        for (const auto &a : ax) CHECK(satisfies_axiom(f, a));
        CHECK(canonical_form(f) == f);
      }
      for (std::size_t i = 0; i < found.size(); ++i)
        for (std::size_t j = i + 1; j < found.size(); ++j) CHECK_FALSE(isomorphic(found[i], found[j]));
    }
  }

  TEST_CASE("isomorphism test agrees with permutation search") {
    std::mt19937 rng(9);
    for (int round = 0; round < 80; ++round) {
      auto a = random_structure(kR, 3, rng);
      auto b = random_structure(kR, 3, rng);
      CHECK(isomorphic(a, b) == pmt::testkit::brute_isomorphic(a, b));
    }
  }

  TEST_CASE("enumeration condition") {
    // a rigid single model: its full universe passes
    ModelClass c;
    c.signature = kR;
    c.models = {edge()};
    CHECK(check_enumeration_condition({0, 1}, edge(), c, 2, 2));
    // {0} alone misses the R-successor required by R(x,y)
    CHECK_FALSE(check_enumeration_condition({0}, edge(), c, 1, 1));
    ModelClass bare;
    bare.signature = kR;
    bare.models = {FiniteStructure(kR, 1)};
    CHECK(check_enumeration_condition({0}, bare.models[0], bare, 2, 2));
  }

  TEST_CASE("printing in the structure language") {
    auto text = to_dsl(edge());
    CHECK(text.find("universe 2") != std::string::npos);
    CHECK(text.find("(0,1)") != std::string::npos);
  }
}
