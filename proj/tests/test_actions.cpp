#include "doctest.h"

#include <qlocal/actions.hpp>

#include <random>
#include <set>

using qlocal::canonical_coset_rep;
using qlocal::coset_action;
using qlocal::PermGroup;
using qlocal::Permutation;
using qlocal::Point;

namespace {

PermGroup make(Point deg, std::initializer_list<const char*> cycles) {
  std::vector<Permutation> gens;
  for (const char* c : cycles) gens.push_back(Permutation::parse_cycles(c, deg));
  return PermGroup(deg, std::move(gens));
}

PermGroup alt5_alt6() {
  return qlocal::direct_product(make(5, {"(0 1 2 3 4)", "(0 1 2)"}),
                                make(6, {"(0 1 2 3 4)", "(3 4 5)"}));
}

} // namespace

TEST_CASE("canonical representative depends only on the coset") {
  auto s4 = make(4, {"(0 1 2 3)", "(0 1)"});
  auto h = make(4, {"(0 1)", "(0 1 2)"});  // S3 on {0,1,2}, order 6
  REQUIRE(h.order() == 6);
  const auto& hc = h.chain();

  std::mt19937_64 rng(7);
  std::vector<Permutation> elems = qlocal::group_elements(s4);
  for (const Permutation& x : elems) {
    Permutation c = canonical_coset_rep(hc, x);
    // c lies in the same right coset: c * x^-1 in h.
    CHECK(h.contains(c.then(x.inverse())));
    // Multiplying by subgroup elements on the left keeps the form.
    Permutation t = qlocal::random_element(h, rng);
    CHECK(canonical_coset_rep(hc, t.then(x)) == c);
  }

  // Exactly |g|/|h| distinct canonical forms across the whole group.
  std::set<Permutation> forms;
  for (const Permutation& x : elems) forms.insert(canonical_coset_rep(hc, x));
  CHECK(forms.size() == 4);
}

TEST_CASE("coset action of S3 on a point stabilizer") {
  auto s3 = make(3, {"(0 1 2)", "(0 1)"});
  auto h = make(3, {"(0 1)"});
  auto ca = coset_action(s3, h);

  CHECK(ca.space.index == 3);
  CHECK(ca.action.image.degree() == 3);
  CHECK(ca.action.image.order() == 6);
  CHECK(ca.action.kernel.is_trivial());
  CHECK(ca.action.image.is_transitive());
  CHECK(ca.space.verify_distinct());
  CHECK(ca.action.generator_map.size() == 2);
}

TEST_CASE("coset action on the whole group is trivial") {
  auto s3 = make(3, {"(0 1 2)", "(0 1)"});
  auto ca = coset_action(s3, s3);
  CHECK(ca.space.index == 1);
  CHECK(ca.action.image.degree() == 1);
  CHECK(ca.action.image.order() == 1);
  CHECK(ca.action.kernel.order() == 6);
}

TEST_CASE("regular action from the trivial subgroup") {
  auto c3 = make(3, {"(0 1 2)"});
  auto ca = coset_action(c3, PermGroup::trivial(3));
  CHECK(ca.space.index == 3);
  CHECK(ca.action.image.order() == 3);
  CHECK(ca.action.kernel.is_trivial());
}

TEST_CASE("product group acting on cosets of its factors") {
  auto g = alt5_alt6();
  REQUIRE(g.order() == 21600);

  // First factor: normal, so it is its own core.
  auto left = PermGroup(11, {Permutation::parse_cycles("(0 1 2 3 4)", 11),
                             Permutation::parse_cycles("(0 1 2)", 11)});
  auto ca_left = coset_action(g, left);
  CHECK(ca_left.space.index == 360);
  CHECK(ca_left.action.image.order() == 360);
  CHECK(ca_left.action.kernel.order() == 60);
  CHECK(qlocal::group_equal(ca_left.action.kernel, left));
  CHECK(ca_left.action.image.is_transitive());
  CHECK(ca_left.space.verify_distinct());

  // Point stabilizer inside the second factor: core-free, faithful image.
  auto right = PermGroup(11, {Permutation::parse_cycles("(5 6 7)", 11),
                              Permutation::parse_cycles("(5 6 7 8 9)", 11)});
  REQUIRE(right.order() == 60);
  auto ca_right = coset_action(g, right);
  CHECK(ca_right.space.index == 360);
  CHECK(ca_right.action.image.order() == 21600);
  CHECK(ca_right.action.kernel.is_trivial());
  CHECK(ca_right.space.verify_distinct());
}

TEST_CASE("kernel hint is verified and matches the computed core") {
  auto g = alt5_alt6();
  auto left = PermGroup(11, {Permutation::parse_cycles("(0 1 2 3 4)", 11),
                             Permutation::parse_cycles("(0 1 2)", 11)});

  auto plain = coset_action(g, left);
  auto hinted = coset_action(g, left, 20000, &left);
  CHECK(qlocal::group_equal(plain.action.kernel, hinted.action.kernel));
  CHECK(hinted.action.image.order() == 360);

  // A wrong hint must be rejected, not silently accepted.
  auto trivial = PermGroup::trivial(11);
  CHECK_THROWS_AS(coset_action(g, left, 20000, &trivial), qlocal::Error);
}

TEST_CASE("index limit and subgroup check") {
  auto s3 = make(3, {"(0 1 2)", "(0 1)"});
  CHECK_THROWS_AS(coset_action(s3, PermGroup::trivial(3), 2), qlocal::Error);
  auto c4 = make(4, {"(0 1 2 3)"});
  CHECK_THROWS_AS(coset_action(s3, c4), qlocal::Error);  // degree mismatch
  auto other = make(3, {"(0 1)"});
  auto sub_not = make(3, {"(0 1 2)", "(0 1)"});
  CHECK_THROWS_AS(coset_action(other, sub_not), qlocal::Error);
}

TEST_CASE("coset lookup locates products") {
  auto s3 = make(3, {"(0 1 2)", "(0 1)"});
  auto h = make(3, {"(0 1)"});
  auto ca = coset_action(s3, h);

  // Following a generator from coset i lands where the image says.
  for (std::size_t k = 0; k < s3.generators().size(); ++k)
    for (std::uint32_t i = 0; i < ca.space.index; ++i) {
      auto target =
          ca.space.coset_of(ca.space.reps[i].then(s3.generators()[k]));
      REQUIRE(target.has_value());
      CHECK(*target == ca.action.generator_map[k][i]);
    }
  // Elements outside the parent have no coset.
  CHECK(!ca.space.coset_of(Permutation::parse_cycles("(0 1)", 3)).has_value()
            ? !s3.contains(Permutation::parse_cycles("(0 1)", 3))
            : true);
}
