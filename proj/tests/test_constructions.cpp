#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <tuple>

#include "gtower/constructions.hpp"
#include "gtower/finite_field.hpp"
#include "gtower/perm_algorithms.hpp"
#include "gtower/projective.hpp"
#include "gtower/wreath.hpp"

using namespace gtower;

TEST_CASE("basic families") {
  CHECK(cyclic(1).order() == 1);
  CHECK(cyclic(7).order() == 7);
  CHECK(sym(5).order() == 120);
  CHECK(alt(5).order() == 60);
  CHECK(dihedral(5).order() == 10);
  CHECK(center(dihedral(5)).order() == 1);  // odd dihedral groups are centreless
  CHECK(is_simple(alt(5)));
  CHECK_THROWS_AS(alt(2), spec_error);
  CHECK_THROWS_AS(dihedral(2), spec_error);
  CHECK_THROWS_AS(cyclic(0), spec_error);
}

TEST_CASE("direct products") {
  auto parts = direct_product_parts(sym(3), alt(5));
  CHECK(parts.group.order() == 360);
  CHECK(parts.group.degree() == 8);
  CHECK(is_subgroup(parts.left, parts.group));
  CHECK(is_subgroup(parts.right, parts.group));

  // Factors centralize each other.
  for (const auto& a : parts.left.generators())
    for (const auto& b : parts.right.generators()) CHECK(compose(a, b) == compose(b, a));

  auto padded = direct_product(sym(3), trivial_group(2));
  CHECK(padded.order() == 6);

  auto v4 = direct_product(cyclic(2), cyclic(2));
  CHECK(v4.order() == 4);
  for (const auto& e : v4.elements())
    if (!e.is_identity()) CHECK(e.order() == 2);
}

TEST_CASE("center of a product is the product of centers") {
  auto d4 = make_group({perm(4, {{0, 1, 2, 3}}), perm(4, {{1, 3}})}, 4);
  auto g = direct_product(d4, sym(3));
  CHECK(center(g).order() == checked_mul(center(d4).order(), center(sym(3)).order()));
  auto h = direct_product(cyclic(4), d4);
  CHECK(center(h).order() == 8);  // 4 * 2
}

TEST_CASE("semidirect products") {
  // C5 x| C4 with the faithful action x -> 2x mod 5: Frobenius group of order 20.
  auto f20 = semidirect(cyclic(5), cyclic(4), {perm(5, {{1, 2, 4, 3}})});
  CHECK(f20.order() == 20);
  CHECK(center(f20).order() == 1);

  CHECK(same_group(semidirect(sym(3), trivial_group(1), {}), sym(3)));

  // An action that fails to normalize N is rejected.
  CHECK_THROWS_AS(semidirect(cyclic(4), cyclic(2), {perm(4, {{0, 1}})}), spec_error);
  // An action of the wrong order breaks |N|*|H| and is rejected.
  CHECK_THROWS_AS(semidirect(cyclic(5), cyclic(4), {perm(5, {{1, 4}, {2, 3}})}), spec_error);
}

TEST_CASE("finite field construction and axioms") {
  FiniteField f4(2, 2);
  CHECK(f4.q() == 4);
  CHECK(f4.modulus() == std::vector<int>{1, 1, 1});  // x^2 + x + 1

  FiniteField f8(2, 3);
  CHECK(f8.modulus() == std::vector<int>{1, 1, 0, 1});  // x^3 + x + 1

  for (auto [p, k] : {std::pair{2, 2}, {2, 3}, {2, 4}, {3, 2}, {5, 2}, {2, 8}}) {
    FiniteField f(p, k);
    int q = f.q();
    REQUIRE(q <= 256);
    for (int a = 0; a < q; ++a) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      for (int b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (int c = 0; c < std::min(q, 16); ++c) {
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        }
      }
    }
  }
}

TEST_CASE("frobenius is a field automorphism of order k") {
  FiniteField f9(3, 2);
  for (int a = 0; a < 9; ++a) {
    for (int b = 0; b < 9; ++b) {
      CHECK(f9.frobenius(f9.add(a, b)) == f9.add(f9.frobenius(a), f9.frobenius(b)));
      CHECK(f9.frobenius(f9.mul(a, b)) == f9.mul(f9.frobenius(a), f9.frobenius(b)));
    }
    CHECK(f9.frobenius_power(a, 2) == a);
  }
  for (int a = 0; a < 3; ++a) CHECK(f9.frobenius(a) == a);  // prime subfield fixed
  CHECK(galois_group(f9).order() == 2);
  FiniteField f16(2, 4);
  CHECK(galois_group(f16).order() == 4);
  CHECK(galois_subgroup(f16, 2).order() == 2);
  CHECK_THROWS_AS(galois_subgroup(f16, 3), spec_error);
}

TEST_CASE("pgl2 orders and the |K| > 3 hypothesis") {
  CHECK(pgl2(FiniteField(2, 2)).order() == 60);
  CHECK(pgl2(FiniteField(5, 1)).order() == 120);
  CHECK(pgl2(FiniteField(7, 1)).order() == 336);
  CHECK(pgl2(FiniteField(2, 3)).order() == 504);
  CHECK(pgl2(FiniteField(3, 2)).order() == 720);
  CHECK_THROWS_AS(pgl2(FiniteField(3, 1)), spec_error);
  CHECK_THROWS_AS(pgl2(FiniteField(2, 1)), spec_error);
}

TEST_CASE("pgl2 is 3-transitive on the projective line") {
  for (auto [p, k] : {std::pair{2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
    FiniteField f(p, k);
    auto g = pgl2(f);
    int d = g.degree();
    // Orbit of the ordered triple (0,1,2) under the generators.
    std::set<std::tuple<int, int, int>> orbit;
    std::vector<std::tuple<int, int, int>> work{{0, 1, 2}};
    orbit.insert(work[0]);
    while (!work.empty()) {
      auto [a, b, c] = work.back();
      work.pop_back();
      for (const auto& s : g.generators()) {
        auto t = std::tuple{s(a), s(b), s(c)};
        if (orbit.insert(t).second) work.push_back(t);
      }
    }
    CHECK(orbit.size() ==
          static_cast<std::size_t>(d) * static_cast<std::size_t>(d - 1) *
              static_cast<std::size_t>(d - 2));
  }
}

TEST_CASE("pgammal2 extensions") {
  CHECK(pgammal2(FiniteField(2, 2), 2).order() == 120);
  CHECK(pgammal2(FiniteField(3, 2), 2).order() == 1440);
  CHECK(pgammal2(FiniteField(2, 3), 3).order() == 1512);
  CHECK(same_group(pgammal2(FiniteField(2, 2), 1), pgl2(FiniteField(2, 2))));
}

TEST_CASE("wreath tower construction") {
  auto t1 = wreath_tower(1);
  CHECK(t1.degree == 4);
  CHECK(t1.groups[0].order() == 2);
  CHECK(t1.groups[1].order() == 8);
  // W_1 = C2 wr C2 is dihedral of order 8; its centre has order 2.
  CHECK(center(t1.groups[1]).order() == 2);

  auto t2 = wreath_tower(2);
  CHECK(t2.degree == 8);
  CHECK(t2.groups[2].order() == 128);

  auto t3 = wreath_tower(3);
  CHECK(t3.degree == 16);
  CHECK(t3.groups[3].order() == 32768);

  CHECK_THROWS_AS(wreath_tower(0), spec_error);
  CHECK_THROWS_AS(wreath_tower(5), spec_error);
}

TEST_CASE("wreath tower invariants") {
  auto tower = wreath_tower(3);
  for (int b = 0; b < tower.n; ++b) {
    const auto& w = tower.groups[static_cast<std::size_t>(b)];
    const auto& star = tower.starred[static_cast<std::size_t>(b)];
    const auto& sig = tower.sigma[static_cast<std::size_t>(b)];
    const auto& next = tower.groups[static_cast<std::size_t>(b) + 1];
    CHECK(sig.order() == 2);
    CHECK(is_subgroup(w, next));
    CHECK(is_subgroup(star, next));
    CHECK(next.contains(sig));
    CHECK(star.order() == w.order());
    // Conjugation by sigma_{b+1} swaps the two copies (Definition-level check
    // on every generator, both directions).
    for (const auto& g : w.generators()) CHECK(star.contains(conjugate(sig, g)));
    for (const auto& g : star.generators()) CHECK(w.contains(conjugate(sig, g)));
    // |W_{b+1}| = 2 |W_b|^2.
    CHECK(next.order() == 2 * w.order() * w.order());
  }
}
