#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "doctest.h"
#include "ringstab/ring.hpp"

using namespace ringstab;

TEST_CASE("zmod tables match modular arithmetic") {
  for (unsigned m : {2u, 4u, 6u, 9u}) {
    Ring r = FiniteRing::zmod(m);
    REQUIRE(r->order() == m);
    CHECK(r->zero() == 0);
    CHECK(r->one() == 1 % m);
    for (elem a = 0; a < m; ++a)
      for (elem b = 0; b < m; ++b) {
        CHECK(r->add(a, b) == (a + b) % m);
        CHECK(r->mul(a, b) == (a * b) % m);
      }
    for (elem a = 0; a < m; ++a) CHECK(r->add(a, r->neg(a)) == 0);
    CHECK(r->commutative());
  }
}

TEST_CASE("zmod unit lists match gcd") {
  Ring r = FiniteRing::zmod(6);
  std::vector<elem> expect;
  for (elem a = 0; a < 6; ++a) {
    unsigned g = std::gcd(unsigned(a), 6u);
    if (g == 1) expect.push_back(a);
  }
  CHECK(r->unit_list() == expect);  // {1, 5}
  for (elem u : r->unit_list()) {
    CHECK(r->mul(u, r->inv(u)) == r->one());
    CHECK(r->mul(r->inv(u), u) == r->one());
  }
  CHECK_FALSE(r->is_unit(0));
  CHECK_FALSE(r->is_unit(2));
  CHECK_THROWS_AS((void)r->inv(2), RingstabError);
}

TEST_CASE("from_tables rejects a broken associativity table") {
  // start from Z/3 and corrupt one product
  Ring z3 = FiniteRing::zmod(3);
  std::vector<elem> add, mul;
  for (elem a = 0; a < 3; ++a)
    for (elem b = 0; b < 3; ++b) {
      add.push_back(z3->add(a, b));
      mul.push_back(z3->mul(a, b));
    }
  mul[2 * 3 + 2] = 2;  // 2*2 = 2 breaks associativity/identity structure
  CHECK_THROWS_AS(FiniteRing::from_tables(3, add, mul, "broken"),
                  RingstabError);
}

TEST_CASE("truncated polynomial ring has nilpotent generator") {
  Ring f2 = FiniteRing::zmod(2);
  Ring r = FiniteRing::trunc_poly(f2, 2);  // F2[x]/(x^2)
  REQUIRE(r->order() == 4);
  // codes are little-endian coefficient tuples: x = code 2
  elem x = 2;
  CHECK(r->mul(x, x) == r->zero());
  CHECK(r->unit_list().size() == 2);  // 1 and 1+x
  CHECK(r->is_unit(r->add(r->one(), x)));
  Ideal j = jacobson_radical(r);
  CHECK(j.members == std::vector<elem>{0, x});
}

TEST_CASE("matrix ring over F2 has the right unit group size") {
  Ring f2 = FiniteRing::zmod(2);
  Ring r = FiniteRing::matrix_ring(2, f2);
  REQUIRE(r->order() == 16);
  CHECK_FALSE(r->commutative());
  // independent oracle: count elements with a two-sided inverse by scanning
  // all pairs; |GL(2, F2)| = 6
  std::size_t invertible = 0;
  for (elem a = 0; a < 16; ++a) {
    bool found = false;
    for (elem b = 0; b < 16 && !found; ++b)
      if (r->mul(a, b) == r->one() && r->mul(b, a) == r->one()) found = true;
    if (found) ++invertible;
  }
  CHECK(invertible == 6);
  CHECK(r->unit_list().size() == invertible);
  CHECK(jacobson_radical(r).size() == 1);  // semisimple
  // center = scalar matrices = {0, 1}
  CHECK(center_elements(r).size() == 2);
}

TEST_CASE("upper triangular ring is noncommutative with nilpotent radical") {
  Ring f2 = FiniteRing::zmod(2);
  Ring r = FiniteRing::upper_triangular(2, f2);
  REQUIRE(r->order() == 8);
  CHECK_FALSE(r->commutative());
  CHECK(r->unit_list().size() == 2);  // both diagonal entries must be 1
  Ideal j = jacobson_radical(r);
  CHECK(j.size() == 2);  // zero and the strict upper corner
  // oracle: radical elements are exactly those with 1 - s*a a unit for all s
  for (elem a = 0; a < 8; ++a) {
    bool quasi = true;
    for (elem s = 0; s < 8 && quasi; ++s)
      if (!r->is_unit(r->sub(r->one(), r->mul(s, a)))) quasi = false;
    CHECK(quasi == j.contains(a));
  }
}

TEST_CASE("product ring behaves componentwise") {
  Ring z2 = FiniteRing::zmod(2);
  Ring z3 = FiniteRing::zmod(3);
  Ring p = FiniteRing::product({z2, z3});
  REQUIRE(p->order() == 6);
  CHECK(p->commutative());
  CHECK(p->unit_list().size() == 2);  // 1 x 2 units
  CHECK(all_ideals(p).size() == 4);   // 0, A, B, R
  // a product of two fields is von-Neumann-style semisimple: radical zero
  CHECK(jacobson_radical(p).size() == 1);
}

TEST_CASE("ideal lattice of Z/6") {
  Ring r = FiniteRing::zmod(6);
  std::vector<Ideal> ideals = all_ideals(r);
  REQUIRE(ideals.size() == 4);
  // sorted by (size, members)
  CHECK(ideals[0].size() == 1);
  CHECK(ideals[1].members == std::vector<elem>{0, 3});
  CHECK(ideals[2].members == std::vector<elem>{0, 2, 4});
  CHECK(ideals[3].size() == 6);
  Ideal two = ideal_generated(r, {2});
  Ideal three = ideal_generated(r, {3});
  CHECK(ideal_product(two, three).is_zero());
  CHECK(ideal_sum(two, three).is_full());
  CHECK(ideal_product(two, two).members == two.members);
}

TEST_CASE("radical and annihilator of Z/4") {
  Ring r = FiniteRing::zmod(4);
  Ideal j = jacobson_radical(r);
  CHECK(j.members == std::vector<elem>{0, 2});
  // oracle: quasi-regularity scan
  for (elem a = 0; a < 4; ++a) {
    bool quasi = true;
    for (elem s = 0; s < 4 && quasi; ++s)
      if (!r->is_unit(r->sub(r->one(), r->mul(s, a)))) quasi = false;
    CHECK(quasi == j.contains(a));
  }
  Ideal ann = annihilator(ideal_generated(r, {2}));
  CHECK(ann.members == std::vector<elem>{0, 2});
}

TEST_CASE("quotient ring projection is a verified homomorphism") {
  Ring r = FiniteRing::zmod(4);
  QuotientRing q = quotient_ring(r, ideal_generated(r, {2}));
  REQUIRE(q.ring->order() == 2);
  CHECK(q.proj(0) == q.ring->zero());
  CHECK(q.proj(2) == q.ring->zero());
  CHECK(q.proj(1) == q.ring->one());
  CHECK(q.proj(3) == q.ring->one());
  for (elem a = 0; a < 4; ++a)
    for (elem b = 0; b < 4; ++b) {
      CHECK(q.proj(r->add(a, b)) == q.ring->add(q.proj(a), q.proj(b)));
      CHECK(q.proj(r->mul(a, b)) == q.ring->mul(q.proj(a), q.proj(b)));
    }
  CHECK_THROWS_AS(quotient_ring(r, full_ideal(r)), RingstabError);
}

TEST_CASE("center of a commutative ring is everything") {
  Ring r = FiniteRing::zmod(6);
  CHECK(center_elements(r).size() == 6);
}

TEST_CASE("element list formatting") {
  CHECK(elem_list_str({0, 2, 4}) == "0,2,4");
  CHECK(elem_list_str({}) == "");
}
