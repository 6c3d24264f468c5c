#include <doctest.h>

#include "pmt/export.hpp"
#include "pmt/spectrum.hpp"
#include "testkit.hpp"

using namespace pmt::spectrum;
using pmt::Bitset;
namespace tk = pmt::testkit;

namespace {

Bitset pts(std::size_t n, std::initializer_list<std::size_t> on) {
  Bitset b(n);
  for (auto i : on) b.set(i);
  return b;
}

// The pointed space from the non-amalgamation lattice: L_1 of the P/Q
// class, sets over the three one-element members (M, N1, N2).
pmt::lattice::LatticePtr pq_lattice() {
  return tk::share(pmt::lattice::from_set_family({1, 1, 1}, {Bitset::from_string("010"), Bitset::from_string("001")}));
}

}  // namespace

TEST_SUITE("spectrum") {
  TEST_CASE("points of small lattices") {
    CHECK(spec(tk::chain(2)).size() == 1);
    auto s = spec(tk::chain(3));
    REQUIRE(s.size() == 2);
    // p = {top}, q = {a, top}; opens empty, {q}, {p, q}
    CHECK(s.points[0].indices() == std::vector<std::size_t>{2});
    CHECK(s.points[1].indices() == std::vector<std::size_t>{1, 2});
    CHECK(s.basic[0] == pts(2, {}));
    CHECK(s.basic[1] == pts(2, {1}));
    CHECK(s.basic[2] == pts(2, {0, 1}));
    auto d = spec(tk::boolean(2));
    CHECK(d.size() == 2);
    CHECK(is_hausdorff(d));
  }

  TEST_CASE("closures and interiors") {
    auto s = spec(tk::chain(3));
    CHECK(closure(s, s.empty_set()) == s.empty_set());
    CHECK(closure(s, pts(2, {1})) == pts(2, {0, 1}));
    CHECK(closure(s, pts(2, {0})) == pts(2, {0}));
    CHECK(interior(s, pts(2, {0})) == s.empty_set());
    CHECK(is_open(s, pts(2, {1})));
    CHECK(is_closed(s, pts(2, {0})));
    auto d = spec(tk::boolean(2));
    CHECK(closure(d, pts(2, {0})) == pts(2, {0}));
    for (const auto &l : tk::lattice_suite(15, 3)) {
      auto sp = spec(l.lattice);
      for (std::size_t p = 0; p < sp.size(); ++p)
        CHECK(closure(sp, pts(sp.size(), {p})) == tk::brute_closure_of_point(sp, p));
    }
  }

  TEST_CASE("irreducible components and generic points") {
    auto s = spec(tk::chain(3));
    auto comps = irreducible_components(s);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].points == s.all_points());
    CHECK(comps[0].generic == 1);
    CHECK(generic_point(s, s.all_points()) == 1);
    auto d = spec(tk::boolean(2));
    auto dc = irreducible_components(d);
    CHECK(dc.size() == 2);
    for (const auto &c : dc) CHECK(c.points.count() == 1);
    CHECK(generic_point(d, pts(2, {0})) == 0);
    CHECK_THROWS_AS(generic_point(d, d.all_points()), pmt::Error);

    auto pq = spec(pq_lattice());
    REQUIRE(pq.size() == 3);
    auto pc = irreducible_components(pq);
    REQUIRE(pc.size() == 2);
    CHECK(pc[0].points == pts(3, {0, 1}));
    CHECK(pc[1].points == pts(3, {0, 2}));
  }

  TEST_CASE("separation axioms") {
    CHECK(is_hausdorff(spec(tk::boolean(2))));
    CHECK_FALSE(is_hausdorff(spec(tk::chain(3))));
    CHECK_FALSE(is_hausdorff(spec(tk::free_dl2())));
    for (const auto &l : tk::lattice_suite(30, 8)) {
      CAPTURE(l.name);
      auto s = spec(l.lattice);
      CHECK(is_t0(s));
      CHECK(is_sober(s));
      CHECK(is_hausdorff(s) == tk::brute_hausdorff(s));
      CHECK(is_hausdorff(s) == tk::brute_complemented(*l.lattice));
    }
  }

  TEST_CASE("sobriety fails on a space with two generic candidates") {
    // an indiscrete two-point space: one closed irreducible set, two points
    // with the same closure
    SpectralSpace s;
    s.lattice = tk::chain(2);
    s.points = {Bitset::from_string("01"), Bitset::from_string("01")};
    s.basic = {pts(2, {}), pts(2, {0, 1})};
    CHECK_FALSE(is_t0(s));
    CHECK_FALSE(is_sober(s));
  }

  TEST_CASE("compact opens recover the lattice") {
    auto s = spec(tk::chain(3));
    std::vector<pmt::lattice::Index> map;
    auto O = compact_opens(s, &map);
    CHECK(O.size() == 3);
    CHECK(tk::is_lattice_iso(*tk::chain(3), O, map));
    CHECK(compact_opens(spec(tk::boolean(2))).size() == 4);
    auto one = compact_opens(spec(tk::chain(2)));
    CHECK(one.size() == 2);
    for (const auto &l : tk::lattice_suite(30, 9)) {
      CAPTURE(l.name);
      auto r = tk::stone_round_trip(l.lattice);
      CHECK(r.lattice_ok);
      CHECK(r.space_ok);
    }
  }

  TEST_CASE("Hochster duals") {
    auto s = spec(tk::chain(3));
    auto d = hochster_dual(s);
    REQUIRE(d.size() == 2);
    // roles swap: the generic point of the dual is the closed point of s
    auto comps = irreducible_components(d);
    REQUIRE(comps.size() == 1);
    CHECK(d.points[comps[0].generic].count() == 2);
    CHECK(hochster_dual(spec(tk::boolean(2))).size() == 2);
    CHECK(is_hausdorff(hochster_dual(spec(tk::boolean(2)))));
    // double dual: same points (filters of the same lattice), same opens
    for (const auto &l : tk::lattice_suite(10, 4)) {
      auto sp = spec(l.lattice);
      auto dd = hochster_dual(hochster_dual(sp));
      CHECK(dd.points == sp.points);
      CHECK(dd.basic == sp.basic);
    }
  }

  TEST_CASE("maps induced by lattice homomorphisms") {
    auto c3 = tk::chain(3);
    auto two = tk::chain(2);
    auto b2 = tk::boolean(2);
    auto s3 = spec(c3), s2 = spec(two), sb = spec(b2);

    pmt::lattice::LatticeHom id{c3, c3, {0, 1, 2}};
    auto ind = spectral_map_from_hom(id, s3, s3);
    CHECK(ind.map.map == std::vector<std::size_t>{0, 1});
    CHECK(is_homeomorphism(ind.map));

    pmt::lattice::LatticeHom h{two, c3, {0, 2}};
    auto c = spectral_map_from_hom(h, s2, s3);
    CHECK(c.map.map == std::vector<std::size_t>{0, 0});
    CHECK(c.spectral);

    // a |-> x: the filter up(x) pulls back to {a, top}, up(y) to {top}
    auto x = *b2->find(Bitset::from_string("10"));
    pmt::lattice::LatticeHom e{c3, b2, {0, x, b2->top()}};
    auto emb = spectral_map_from_hom(e, s3, sb);
    for (std::size_t p = 0; p < sb.size(); ++p) {
      bool has_x = sb.points[p].test(x);
      CHECK(s3.points[emb.map.map[p]].count() == (has_x ? 2U : 1U));
    }
    CHECK(emb.spectral);
    CHECK(is_spectral(emb.map));
    auto pre = preimage(emb.map, s3.basic[1]);
    CHECK(pre.count() == 1);
    CHECK(image(emb.map, sb.all_points()) == s3.all_points());
    CHECK(compose(ind.map, emb.map).map == emb.map.map);
  }

  TEST_CASE("space export") {
    auto s = spec(tk::chain(3));
    auto dot = pmt::io::space_dot(s, "sierpinski");
    std::size_t edges = 0;
    for (std::size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 2)) ++edges;
    CHECK(edges == 1);
    CHECK(dot.find("p0 [") != std::string::npos);
    CHECK(dot.find("p1 [") != std::string::npos);
    CHECK(dot.find("p2") == std::string::npos);
    auto single = pmt::io::space_dot(spec(tk::chain(2)), "one");
    CHECK(single.find("->") == std::string::npos);
    auto j = pmt::io::space_json(s);
    CHECK(j["points"].size() == 2);
    CHECK(j["flags"]["sober"] == true);
    CHECK(j["flags"]["hausdorff"] == false);
    CHECK(j["specialization"].size() == 1);
  }
}
