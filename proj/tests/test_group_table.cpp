#include "doctest.h"

#include <qlocal/group_table.hpp>

#include <algorithm>
#include <set>

#include "oracles.hpp"

using qlocal::GroupTable;
using qlocal::PermGroup;
using qlocal::Permutation;
using qlocal::Point;

namespace {

PermGroup make(Point deg, std::initializer_list<const char*> cycles) {
  std::vector<Permutation> gens;
  for (const char* c : cycles) gens.push_back(Permutation::parse_cycles(c, deg));
  return PermGroup(deg, std::move(gens));
}

std::vector<oracle::Images> images_of(const PermGroup& g) {
  std::vector<oracle::Images> out;
  for (const auto& p : g.generators()) out.push_back(p.images());
  return out;
}

} // namespace

TEST_CASE("element list is sorted with the identity first") {
  auto t = GroupTable::from_group(make(3, {"(0 1 2)", "(0 1)"}));
  REQUIRE(t.order() == 6);
  CHECK(t.element(0).is_identity());
  CHECK(std::is_sorted(t.elements().begin(), t.elements().end()));

  auto cl = oracle::closure(images_of(make(3, {"(0 1 2)", "(0 1)"})));
  std::size_t i = 0;
  for (const auto& img : cl) {
    CHECK(t.element(i).images() == img);  // same sorted order as the oracle set
    ++i;
  }
}

TEST_CASE("products and inverses match composition") {
  // One group on the dense path, one pushed onto the hashed path by degree.
  auto dense = GroupTable::from_group(make(5, {"(0 1 2 3 4)", "(0 1 2)"}));
  REQUIRE(dense.order() == 60);
  auto hashed = GroupTable::from_group(
      make(70, {"(0 1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 19 20 21 22 "
                "23 24 25 26 27 28 29 30 31 32 33 34 35 36 37 38 39 40 41 42 "
                "43 44 45 46 47 48 49 50 51 52 53 54 55 56 57 58 59 60 61 62 "
                "63 64 65 66 67 68 69)"}));
  REQUIRE(hashed.order() == 70);

  for (const GroupTable* t : {&dense, &hashed}) {
    for (std::uint32_t a = 0; a < t->order(); a += 7)
      for (std::uint32_t b = 0; b < t->order(); b += 5) {
        CHECK(t->element(t->mul(a, b)) == t->element(a).then(t->element(b)));
        CHECK(t->mul(a, t->inv(a)) == 0);
        CHECK(t->mul(t->inv(a), a) == 0);
      }
    for (std::uint32_t a = 0; a < t->order(); a += 11)
      CHECK(t->order_of(a) == t->element(a).element_order());
  }
}

TEST_CASE("conjugation by index matches permutation conjugation") {
  auto t = GroupTable::from_group(make(4, {"(0 1 2 3)", "(0 1)"}));
  REQUIRE(t.order() == 24);
  for (std::uint32_t x = 0; x < t.order(); x += 3)
    for (std::uint32_t g = 0; g < t.order(); g += 5)
      CHECK(t.element(t.conj(x, g)) == t.element(x).conjugated_by(t.element(g)));
}

TEST_CASE("from_elements validates its input") {
  auto s3 = make(3, {"(0 1 2)", "(0 1)"});
  auto full = GroupTable::from_elements(
      GroupTable::from_group(s3).elements());
  CHECK(full.order() == 6);

  // Not closed: a 4-cycle and the identity only.
  std::vector<Permutation> bad{Permutation(4),
                               Permutation::parse_cycles("(0 1 2 3)", 4)};
  CHECK_THROWS_AS(GroupTable::from_elements(bad), qlocal::Error);

  // No identity.
  std::vector<Permutation> noid{Permutation::parse_cycles("(0 1)", 3),
                                Permutation::parse_cycles("(0 2)", 3)};
  CHECK_THROWS_AS(GroupTable::from_elements(noid), qlocal::Error);
}

TEST_CASE("from_group rejects groups past the order cap") {
  CHECK_THROWS_AS(GroupTable::from_group(
                      make(8, {"(0 1 2 3 4 5 6 7)", "(0 1)"})),
                  qlocal::Error);
}

TEST_CASE("index closure generates subgroups") {
  auto t = GroupTable::from_group(make(4, {"(0 1 2 3)", "(0 1)"}));
  auto idx = [&](const char* c) {
    return t.index_of(Permutation::parse_cycles(c, 4));
  };

  auto v4 = t.closure({idx("(0 1)(2 3)"), idx("(0 2)(1 3)")});
  CHECK(v4.size() == 4);
  CHECK(t.is_subgroup(v4));
  CHECK(t.is_normal(v4));

  auto a4 = t.closure({idx("(0 1 2)"), idx("(1 2 3)")});
  CHECK(a4.size() == 12);
  CHECK(t.is_normal(a4));

  auto flip = t.closure({idx("(0 1)")});
  CHECK(flip.size() == 2);
  CHECK(t.is_subgroup(flip));
  CHECK(!t.is_normal(flip));
  CHECK(!t.is_subgroup({idx("(0 1)")}));  // no identity, not closed

  CHECK(t.closure(t.generator_indices()) == t.full_index_list());
}

TEST_CASE("left transversal partitions the group") {
  auto t = GroupTable::from_group(make(3, {"(0 1 2)", "(0 1)"}));
  auto sub = t.closure({t.index_of(Permutation::parse_cycles("(0 1)", 3))});
  auto reps = t.left_transversal(sub);
  REQUIRE(reps.size() == 3);
  CHECK(reps[0] == 0);

  std::set<std::uint32_t> covered;
  for (auto r : reps)
    for (auto s : sub) covered.insert(t.mul(r, s));
  CHECK(covered.size() == 6);
}

TEST_CASE("regular action is a faithful homomorphism") {
  auto t = GroupTable::from_group(make(3, {"(0 1 2)", "(0 1)"}));
  for (std::uint32_t x = 0; x < t.order(); ++x)
    for (std::uint32_t y = 0; y < t.order(); ++y)
      CHECK(t.regular_perm(x).then(t.regular_perm(y)) ==
            t.regular_perm(t.mul(x, y)));

  auto reg = t.regular_group();
  CHECK(reg.degree() == 6);
  CHECK(reg.order() == 6);
  CHECK(reg.is_transitive());

  // Point 0 is the identity element, so the image of 0 recovers the element.
  for (std::uint32_t x = 0; x < t.order(); ++x)
    CHECK(t.regular_perm(x)[0] == x);
}

TEST_CASE("regular group of the quaternion group") {
  // i = (0 1 2 3)(4 6 5 7), j = (0 4 2 5)(1 7 3 6) on 8 points is already
  // the regular representation; rebuilding it from the table must agree.
  auto q8 = make(8, {"(0 1 2 3)(4 6 5 7)", "(0 4 2 5)(1 7 3 6)"});
  REQUIRE(q8.order() == 8);
  auto t = GroupTable::from_group(q8);
  auto reg = t.regular_group();
  CHECK(reg.order() == 8);
  CHECK(reg.is_transitive());
  int order4 = 0;
  for (std::uint32_t x = 0; x < t.order(); ++x)
    if (t.order_of(x) == 4) ++order4;
  CHECK(order4 == 6);  // all six non-central non-identity elements
}

TEST_CASE("homomorphism extension accepts and rejects correctly") {
  auto t = GroupTable::from_group(make(3, {"(0 1 2)", "(0 1)"}));
  auto idx = [&](const char* c) {
    return t.index_of(Permutation::parse_cycles(c, 3));
  };

  // (0 1) -> (0 2) extends on the subgroup of order 2.
  auto ok = qlocal::extend_homomorphism(t, {idx("(0 1)")}, {idx("(0 2)")});
  REQUIRE(ok.has_value());
  CHECK(ok->size() == 2);
  CHECK(ok->at(idx("(0 1)")) == idx("(0 2)"));
  CHECK(ok->at(0) == 0);

  // (0 1) -> (0 1 2) cannot: the orders clash on the square.
  CHECK(!qlocal::extend_homomorphism(t, {idx("(0 1)")}, {idx("(0 1 2)")}));

  // Quotient map S3 -> C2 realised inside S3 is fine: both generators to (0 1).
  auto sign = qlocal::extend_homomorphism(
      t, {idx("(0 1 2)"), idx("(0 1)")}, {0, idx("(0 1)")});
  REQUIRE(sign.has_value());
  CHECK(sign->size() == 6);
}

TEST_CASE("automorphism count of the icosahedral group") {
  auto t = GroupTable::from_group(make(5, {"(0 1 2 3 4)", "(0 1 2)"}));
  REQUIRE(t.order() == 60);
  std::uint32_t g5 = t.index_of(Permutation::parse_cycles("(0 1 2 3 4)", 5));
  std::uint32_t g3 = t.index_of(Permutation::parse_cycles("(0 1 2)", 5));

  int count = 0;
  for (std::uint32_t x = 0; x < t.order(); ++x) {
    if (t.order_of(x) != t.order_of(g5)) continue;
    for (std::uint32_t y = 0; y < t.order(); ++y) {
      if (t.order_of(y) != t.order_of(g3)) continue;
      auto hom = qlocal::extend_homomorphism(t, {g5, g3}, {x, y});
      if (!hom || hom->size() != t.order()) continue;
      std::set<std::uint32_t> vals;
      for (auto [k, v] : *hom) vals.insert(v);
      if (vals.size() == t.order()) ++count;
    }
  }
  CHECK(count == 120);
}

TEST_CASE("direct product of permutation groups") {
  auto a5 = make(5, {"(0 1 2 3 4)", "(0 1 2)"});
  auto s5 = make(5, {"(0 1 2 3 4)", "(0 1)"});
  auto prod = qlocal::direct_product(a5, s5);
  CHECK(prod.degree() == 10);
  CHECK(prod.order() == 7200);
  CHECK(prod.orbits().size() == 2);

  auto t = GroupTable::from_group(prod);
  CHECK(t.order() == 7200);
  CHECK(t.element(0).is_identity());
  // Hashed path (degree 10 but order past the dense cap): sanity on products.
  auto p = t.index_of(qlocal::embed_at(
      Permutation::parse_cycles("(0 1 2 3 4)", 5), 0, 10));
  auto q = t.index_of(qlocal::embed_at(
      Permutation::parse_cycles("(0 1)", 5), 5, 10));
  CHECK(t.mul(p, q) == t.mul(q, p));  // disjoint supports commute
  CHECK(t.order_of(t.mul(p, q)) == 10);
}

TEST_CASE("embedding keeps blocks disjoint") {
  auto p = Permutation::parse_cycles("(0 1)", 2);
  auto e = qlocal::embed_at(p, 3, 6);
  CHECK(e.degree() == 6);
  CHECK(e[3] == 4);
  CHECK(e[4] == 3);
  CHECK(e[0] == 0);
  CHECK_THROWS_AS(qlocal::embed_at(p, 5, 6), qlocal::Error);
}
