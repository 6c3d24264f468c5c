#include <doctest.h>

#include "pmt/dlattice.hpp"
#include "pmt/export.hpp"
#include "testkit.hpp"

using namespace pmt::lattice;
using pmt::Bitset;
namespace tk = pmt::testkit;

namespace {

using Table = std::vector<std::vector<Index>>;

// meet and join tables of M3 and N5, elements bot, a, b, c, top
const Table kM3Meet{{0, 0, 0, 0, 0}, {0, 1, 0, 0, 1}, {0, 0, 2, 0, 2}, {0, 0, 0, 3, 3}, {0, 1, 2, 3, 4}};
const Table kM3Join{{0, 1, 2, 3, 4}, {1, 1, 4, 4, 4}, {2, 4, 2, 4, 4}, {3, 4, 4, 3, 4}, {4, 4, 4, 4, 4}};
const Table kN5Meet{{0, 0, 0, 0, 0}, {0, 1, 1, 0, 1}, {0, 1, 2, 0, 2}, {0, 0, 0, 3, 3}, {0, 1, 2, 3, 4}};
const Table kN5Join{{0, 1, 2, 3, 4}, {1, 1, 2, 4, 4}, {2, 2, 2, 4, 4}, {3, 4, 4, 3, 4}, {4, 4, 4, 4, 4}};

// The reported triple really breaks a distributive law in the raw tables.
bool breaks_distributivity(const Table &meet, const Table &join, const std::vector<Index> &w) {
  if (w.size() != 3) return false;
  Index a = w[0], b = w[1], c = w[2];
  bool meet_over_join = meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]];
  bool join_over_meet = join[a][meet[b][c]] != meet[join[a][b]][join[a][c]];
  return meet_over_join || join_over_meet;
}

Bitset bits(const char *s) { return Bitset::from_string(s); }

}  // namespace

TEST_SUITE("dlattice") {
  TEST_CASE("closing generator families") {
    CHECK(from_set_family({2}, {}).size() == 2);
    auto chain = from_set_family({2}, {bits("10")});
    CHECK(chain.size() == 3);
    CHECK(chain.set(1) == bits("10"));
    auto b2 = from_set_family({2}, {bits("10"), bits("01")});
    CHECK(b2.size() == 4);
    CHECK(b2.find(bits("11")).has_value());
    CHECK(b2.find(bits("00")) == b2.bottom());
    CHECK_THROWS_AS(from_set_family({4}, {bits("1000"), bits("0100"), bits("0010")}, {}, 5, 7), pmt::CapExceeded);
  }

  TEST_CASE("canonical order puts the empty set first") {
    auto L = from_set_family({3}, {bits("110"), bits("011")});
    for (Index a = 1; a < L.size(); ++a) CHECK(L.set(a - 1).lex_compare(L.set(a)) < 0);
    CHECK(L.bottom() == 0);
    CHECK(L.top() == L.size() - 1);
  }

  TEST_CASE("table validation") {
    CHECK_NOTHROW(DLattice::validate({{0, 0}, {0, 1}}, {{0, 1}, {1, 1}}, 0, 1));
    try {
      DLattice::validate(kM3Meet, kM3Join, 0, 4);
      FAIL("M3 accepted");
    } catch (const LatticeError &e) {
      CHECK(e.identity() == "distributivity");
      CHECK(breaks_distributivity(kM3Meet, kM3Join, e.witness()));
    }
    try {
      DLattice::validate(kN5Meet, kN5Join, 0, 4);
      FAIL("N5 accepted");
    } catch (const LatticeError &e) {
      CHECK(e.identity() == "distributivity");
      CHECK(breaks_distributivity(kN5Meet, kN5Join, e.witness()));
    }
    // broken commutativity and bounds are named too
    CHECK_THROWS_AS(DLattice::validate({{0, 1}, {0, 1}}, {{0, 1}, {1, 1}}, 0, 1), LatticeError);
    CHECK_THROWS_AS(DLattice::validate({{0, 0}, {0, 1}}, {{0, 1}, {1, 1}}, 1, 0), LatticeError);
  }

  TEST_CASE("prime filters of the anchor lattices") {
    auto chain = tk::chain(3);
    auto pf = chain->prime_filters();
    REQUIRE(pf.size() == 2);
    // {top} and {a, top}
    CHECK(pf[0].indices() == std::vector<std::size_t>{2});
    CHECK(pf[1].indices() == std::vector<std::size_t>{1, 2});
    CHECK(tk::boolean(2)->prime_filters().size() == 2);
    CHECK(tk::free_dl2()->prime_filters().size() == 4);
    CHECK(tk::brute_prime_filters(*chain) == pf);
  }

  TEST_CASE("prime filters equal the subset scan on the lattice suite") {
    for (const auto &l : tk::lattice_suite(20, 77)) {
      if (l.lattice->size() > 16) continue;
      CAPTURE(l.name);
      auto pf = l.lattice->prime_filters();
      CHECK(pf == tk::brute_prime_filters(*l.lattice));
      for (const auto &f : pf) CHECK(l.lattice->is_prime_filter(f));
    }
  }

  TEST_CASE("join-irreducibles") {
    CHECK(tk::chain(3)->join_irreducibles() == std::vector<Index>{1, 2});
    auto b2 = tk::boolean(2);
    auto ji = b2->join_irreducibles();
    REQUIRE(ji.size() == 2);
    for (auto j : ji) CHECK(b2->set(j).count() == 1);
    CHECK(tk::chain(2)->join_irreducibles() == std::vector<Index>{1});
  }

  TEST_CASE("order duals") {
    auto c3 = tk::chain(3)->opposite();
    CHECK(c3.size() == 3);
    CHECK(c3.leq(2, 1));
    CHECK(c3.leq(1, 0));
    CHECK(c3.bottom() == 2);
    auto b2 = tk::boolean(2);
    auto op = b2->opposite();
    // complementing is an isomorphism from 2^2 to its dual
    std::vector<Index> map(b2->size());
    for (Index a = 0; a < b2->size(); ++a) map[a] = *b2->find(~b2->set(a));
    CHECK(tk::is_lattice_iso(*b2, op, map));
    auto free_op = tk::free_dl2()->opposite();
    CHECK(tk::brute_prime_filters(free_op).size() == 4);
    CHECK(free_op.prime_filters().size() == 4);
    auto twice = free_op.opposite();
    CHECK(twice.meet_table() == tk::free_dl2()->meet_table());
  }

  TEST_CASE("complements") {
    auto b2 = tk::boolean(2);
    for (Index a = 0; a < b2->size(); ++a) {
      auto c = b2->complement(a);
      REQUIRE(c.has_value());
      CHECK(b2->set(*c) == ~b2->set(a));
    }
    CHECK_FALSE(tk::chain(3)->complement(1).has_value());
    for (const auto &l : tk::lattice_suite(10, 5)) {
      bool all = true;
      for (Index a = 0; a < l.lattice->size(); ++a) all = all && l.lattice->complement(a).has_value();
      CHECK(all == tk::brute_complemented(*l.lattice));
    }
  }

  TEST_CASE("table and set operations agree") {
    for (const auto &l : tk::lattice_suite(10, 6)) {
      const auto &L = *l.lattice;
      auto abstract = DLattice::validate(L.meet_table(), L.join_table(), L.bottom(), L.top());
      for (Index a = 0; a < L.size(); ++a)
        for (Index b = 0; b < L.size(); ++b) {
          CHECK(L.set(L.meet(a, b)) == (L.set(a) & L.set(b)));
          CHECK(L.set(L.join(a, b)) == (L.set(a) | L.set(b)));
          CHECK(L.leq(a, b) == L.set(a).is_subset_of(L.set(b)));
          CHECK(abstract.meet(a, b) == L.meet(a, b));
          CHECK(abstract.leq(a, b) == L.leq(a, b));
        }
      CHECK(abstract.prime_filters() == L.prime_filters());
    }
  }

  TEST_CASE("lattice homomorphisms") {
    auto two = tk::chain(2);
    auto c3 = tk::chain(3);
    auto b2 = tk::boolean(2);
    LatticeHom h{two, c3, {0, 2}};
    CHECK(is_lattice_hom(h));
    // a goes to an atom of 2^2
    Index x = *b2->find(bits("10"));
    LatticeHom e{c3, b2, {0, x, b2->top()}};
    CHECK(is_lattice_hom(e));
    auto comp = compose(e, h);
    CHECK(comp.map == std::vector<Index>{0, b2->top()});
    CHECK(is_lattice_hom(comp));
    CHECK_FALSE(is_lattice_hom(LatticeHom{two, c3, {0, 1}}));
  }

  TEST_CASE("lattice files") {
    auto L = pmt::io::lattice_from_json(R"({"family": {"carriers": [2], "generators": ["10"]}})");
    CHECK(L.size() == 3);
    auto T = pmt::io::lattice_from_json(
        R"({"labels": ["bot","top"], "meet": [[0,0],[0,1]], "join": [[0,1],[1,1]], "bottom": 0, "top": 1})");
    CHECK(T.size() == 2);
    CHECK(T.label(1) == "top");
    CHECK_THROWS_AS(pmt::io::lattice_from_json("{ nope"), pmt::ParseError);
    CHECK_THROWS_AS(pmt::io::lattice_from_json(R"({"meet": [[0]]})"), pmt::ParseError);
  }

  TEST_CASE("Hasse diagram export") {
    auto dot = pmt::io::lattice_dot(*tk::boolean(2), "b2");
    std::size_t edges = 0;
    for (std::size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 2)) ++edges;
    CHECK(edges == 4);
    CHECK(dot.find("rankdir=BT") != std::string::npos);
  }
}
