#include "doctest.h"

#include <qlocal/permutation.hpp>

#include "oracles.hpp"

using qlocal::Permutation;
using qlocal::Point;

TEST_CASE("identity and validation") {
  Permutation id(5);
  CHECK(id.degree() == 5);
  CHECK(id.is_identity());
  CHECK(id.cycle_string() == "()");
  CHECK(id.smallest_moved() == 5);
  CHECK(id.element_order() == 1);

  CHECK_THROWS_AS(Permutation(std::vector<Point>{0, 0, 1}), qlocal::Error);
  CHECK_THROWS_AS(Permutation(std::vector<Point>{0, 3}), qlocal::Error);
}

TEST_CASE("composition applies left factor first") {
  // a = (0 1 2), b = (0 1); a*b sends 0 -> a -> 1 -> b -> 0
  Permutation a = Permutation::parse_cycles("(0 1 2)", 3);
  Permutation b = Permutation::parse_cycles("(0 1)", 3);
  Permutation ab = a * b;
  CHECK(ab[0] == 0);
  CHECK(ab[1] == 2);
  CHECK(ab[2] == 1);

  oracle::Images oa{1, 2, 0}, ob{1, 0, 2};
  CHECK(ab.images() == oracle::compose(oa, ob));
}

TEST_CASE("inverse and conjugation") {
  Permutation a = Permutation::parse_cycles("(0 3)(1 4 2)", 5);
  CHECK((a * a.inverse()).is_identity());
  CHECK(a.inverse().images() == oracle::inverse(a.images()));

  Permutation g = Permutation::parse_cycles("(0 1 2 3 4)", 5);
  Permutation c = a.conjugated_by(g);
  CHECK(c == g.inverse() * a * g);
  // conjugation relabels the cycle structure
  CHECK(c.element_order() == a.element_order());
}

TEST_CASE("cycle parsing round trips") {
  Permutation a = Permutation::parse_cycles("(0 4)(1 3 7)", 8);
  CHECK(Permutation::parse_cycles(a.cycle_string(), 8) == a);
  CHECK(a[0] == 4);
  CHECK(a[4] == 0);
  CHECK(a[1] == 3);
  CHECK(a[7] == 1);
  CHECK(a[2] == 2);

  CHECK_THROWS_AS(Permutation::parse_cycles("(0 1", 4), qlocal::Error);
  CHECK_THROWS_AS(Permutation::parse_cycles("(0 9)", 4), qlocal::Error);
  CHECK_THROWS_AS(Permutation::parse_cycles("(0 1)(1 2)", 4), qlocal::Error);
}

TEST_CASE("element order via cycle lengths") {
  Permutation a = Permutation::parse_cycles("(0 1)(2 3 4)(5 6 7 8 9)", 10);
  CHECK(a.element_order() == 30);
  Permutation b = Permutation::parse_cycles("(0 1 2 3 4 5 6)", 7);
  CHECK(b.element_order() == 7);
}

TEST_CASE("moved points") {
  Permutation a = Permutation::parse_cycles("(2 5)", 6);
  CHECK(a.moved_points() == std::vector<Point>{2, 5});
  CHECK(a.smallest_moved() == 2);
}

TEST_CASE("ordering is lexicographic on images") {
  Permutation id(3);
  Permutation a = Permutation::parse_cycles("(1 2)", 3);
  Permutation b = Permutation::parse_cycles("(0 1)", 3);
  CHECK(id < a);
  CHECK(a < b);
}
