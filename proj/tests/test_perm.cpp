#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <unordered_set>

#include "gtower/perm_group.hpp"
#include "gtower/permutation.hpp"

using namespace gtower;

namespace {

// Brute-force closure oracle: multiply generators until nothing new appears.
std::set<Permutation> closure_oracle(const std::vector<Permutation>& gens, int degree) {
  std::set<Permutation> elems;
  elems.insert(Permutation(degree));
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Permutation> snapshot(elems.begin(), elems.end());
    for (const auto& e : snapshot)
      for (const auto& g : gens)
        if (elems.insert(compose(e, g)).second) changed = true;
  }
  return elems;
}

std::vector<Permutation> random_gens(std::mt19937& rng, int degree, int count) {
  std::vector<Permutation> gens;
  for (int i = 0; i < count; ++i) {
    std::vector<int> im(static_cast<std::size_t>(degree));
    std::iota(im.begin(), im.end(), 0);
    std::shuffle(im.begin(), im.end(), rng);
    gens.emplace_back(std::move(im));
  }
  return gens;
}

}  // namespace

TEST_CASE("compose follows the left-action convention") {
  auto p = perm(3, {{0, 1}});
  auto q = perm(3, {{1, 2}});
  auto r = compose(p, q);
  // (p*q)(x) = p(q(x)): 0->1, 1->2, 2->0.
  CHECK(r(0) == 1);
  CHECK(r(1) == 2);
  CHECK(r(2) == 0);

  CHECK(compose(p, Permutation(3)) == p);
  CHECK(compose(p, p.inverse()) == Permutation(3));
}

TEST_CASE("compose rejects degree mismatch") {
  CHECK_THROWS_AS(compose(Permutation(3), Permutation(4)), spec_error);
}

TEST_CASE("cycle form round-trips") {
  auto p = perm(6, {{0, 1, 2}, {3, 4}});
  CHECK(to_cycle_string(p) == "(0 1 2)(3 4)");
  CHECK(parse_cycles("(0 1 2)(3 4)", 6) == p);
  CHECK(to_cycle_string(Permutation(4)) == "()");
  CHECK(parse_cycles("()", 4) == Permutation(4));
  // Non-disjoint cycles multiply: (0 1)(1 2) = the 3-cycle 0->1->2->0.
  CHECK(parse_cycles("(0 1)(1 2)", 3) == perm(3, {{0, 1, 2}}));
  CHECK_THROWS_AS(parse_cycles("(0 5)", 3), spec_error);
}

TEST_CASE("permutation order and conjugation") {
  auto p = perm(5, {{0, 1, 2, 3, 4}});
  CHECK(p.order() == 5);
  auto t = perm(5, {{0, 1}});
  CHECK(conjugate(p, t) == perm(5, {{1, 2}}));
  CHECK(perm(4, {{0, 1}, {2, 3}}).order() == 2);
  CHECK(Permutation(7).order() == 1);
}

TEST_CASE("degree zero is rejected") {
  CHECK_THROWS_AS(Permutation(0), spec_error);
  CHECK_THROWS_AS(Permutation(std::vector<int>{}), spec_error);
}

TEST_CASE("make_group on symmetric and alternating generators") {
  auto s5 = make_group({perm(5, {{0, 1, 2, 3, 4}}), perm(5, {{0, 1}})}, 5);
  CHECK(s5.order() == 120);

  auto a5 = make_group({perm(5, {{0, 1, 2}}), perm(5, {{2, 3, 4}})}, 5);
  CHECK(a5.order() == 60);

  auto triv = make_group({Permutation(4)}, 4);
  CHECK(triv.order() == 1);
  CHECK(trivial_group(6).order() == 1);
}

TEST_CASE("contains agrees with parity on Alt(5)") {
  auto a5 = make_group({perm(5, {{0, 1, 2}}), perm(5, {{2, 3, 4}})}, 5);
  CHECK(a5.contains(perm(5, {{0, 1, 2}})));
  CHECK_FALSE(a5.contains(perm(5, {{0, 1}})));
  CHECK(a5.contains(Permutation(5)));
}

TEST_CASE("chain handles generators fixing the first base point") {
  // (1 2) fixes 0, so the level-0 orbit must still grow through it.
  auto s3 = make_group({perm(3, {{0, 1}}), perm(3, {{1, 2}})}, 3);
  CHECK(s3.order() == 6);
  CHECK(s3.contains(perm(3, {{0, 1, 2}})));
}

TEST_CASE("stabilizer chain order matches brute-force closure on random groups") {
  std::mt19937 rng(20260809);
  for (int trial = 0; trial < 60; ++trial) {
    int degree = 2 + static_cast<int>(rng() % 7);  // up to 8
    int count = 1 + static_cast<int>(rng() % 3);
    auto gens = random_gens(rng, degree, count);
    auto oracle = closure_oracle(gens, degree);
    auto group = make_group(gens, degree);
    REQUIRE(group.order() == oracle.size());
    for (const auto& e : oracle) REQUIRE(group.contains(e));
  }
}

TEST_CASE("contains agrees with exhaustive enumeration") {
  std::mt19937 rng(7);
  auto gens = std::vector<Permutation>{perm(6, {{0, 1, 2, 3, 4, 5}}), perm(6, {{0, 1}})};
  auto s6 = make_group(gens, 6);
  REQUIRE(s6.order() == 720);
  auto elems = s6.elements();
  std::set<Permutation> elem_set(elems.begin(), elems.end());
  REQUIRE(elem_set.size() == 720);
  for (int i = 0; i < 50; ++i) {
    auto e = s6.random_element(rng);
    CHECK(elem_set.count(e) == 1);
  }
}

TEST_CASE("element enumeration is deterministic with identity first") {
  auto a4 = make_group({perm(4, {{0, 1, 2}}), perm(4, {{1, 2, 3}})}, 4);
  auto elems = a4.elements();
  REQUIRE(elems.size() == 12);
  CHECK(elems[0].is_identity());
  auto again = a4.elements();
  CHECK(elems == again);
}

TEST_CASE("known-order construction matches the plain one") {
  auto gens = std::vector<Permutation>{perm(7, {{0, 1, 2, 3, 4, 5, 6}}), perm(7, {{0, 1}})};
  auto fast = make_group_with_order(gens, 7, 5040);
  auto slow = make_group(gens, 7);
  CHECK(fast.order() == 5040);
  std::mt19937 rng(99);
  for (int i = 0; i < 30; ++i) {
    auto e = slow.random_element(rng);
    CHECK(fast.contains(e));
  }
  CHECK_THROWS_AS(make_group_with_order(gens, 7, 720), internal_error);
}

TEST_CASE("enumeration cap guards huge groups") {
  std::vector<Permutation> gens{perm(12, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}}),
                                perm(12, {{0, 1}})};
  auto s12 = make_group(gens, 12);
  REQUIRE(s12.order() == 479001600);
  CHECK_THROWS_AS(s12.elements(), cap_error);
}

TEST_CASE("subgroup and normality predicates") {
  auto s4 = make_group({perm(4, {{0, 1, 2, 3}}), perm(4, {{0, 1}})}, 4);
  auto a4 = make_group({perm(4, {{0, 1, 2}}), perm(4, {{1, 2, 3}})}, 4);
  auto c4 = make_group({perm(4, {{0, 1, 2, 3}})}, 4);
  CHECK(is_subgroup(a4, s4));
  CHECK(is_normal_in(a4, s4));
  CHECK(is_subgroup(c4, s4));
  CHECK_FALSE(is_normal_in(c4, s4));
}
