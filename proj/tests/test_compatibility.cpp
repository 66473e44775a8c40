#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "json.hpp"
#include "qlocal/compatibility.hpp"
#include "qlocal/group_structure.hpp"
#include "qlocal/group_table.hpp"
#include "qlocal/order_table.hpp"

using namespace qlocal;

namespace {

PermGroup sym3() {
  return PermGroup(3, {Permutation::parse_cycles("(0 1)", 3),
                       Permutation::parse_cycles("(0 1 2)", 3)});
}

PermGroup alt5() {
  return PermGroup(5, {Permutation::parse_cycles("(0 1 2)", 5),
                       Permutation::parse_cycles("(0 1 2 3 4)", 5)});
}

PermGroup sym5() {
  return PermGroup(5, {Permutation::parse_cycles("(0 1)", 5),
                       Permutation::parse_cycles("(0 1 2 3 4)", 5)});
}

PermGroup named(const std::string& id) {
  const NamedGroupData* d = SimpleOrderTable::instance().group_named(id);
  REQUIRE(d != nullptr);
  return PermGroup(d->degree, d->generators);
}

SimpleGroupId named_id(const std::string& s) {
  if (s[0] == 'C') return cyclic_id(std::stoull(s.substr(1)));
  return SimpleOrderTable::instance().row_named(s)->group_id();
}

std::vector<std::uint32_t> sub_ids(const GroupTable& t,
                                   const std::vector<std::string>& cycles) {
  std::vector<std::uint32_t> seed;
  for (const auto& s : cycles)
    seed.push_back(t.index_of(Permutation::parse_cycles(s, t.degree())));
  return t.closure(seed);
}

std::vector<std::uint32_t> all_ids(const GroupTable& t) {
  std::vector<std::uint32_t> all(t.order());
  std::iota(all.begin(), all.end(), 0);
  return all;
}

// S3 with its two non-conjugate-by-hypothesis reflection subgroups and the
// unique isomorphism between them.
CompatProblem s3_reflection_problem() {
  GroupTable t = GroupTable::from_group(sym3());
  auto a = sub_ids(t, {"(0 1)"});
  auto b = sub_ids(t, {"(0 2)"});
  IsoTable phi = iso_from_table(t, {{0, 0}, {a[1], b[1]}});
  return make_compat_problem(t, a, b, phi);
}

// D8 with the center against a non-central reflection pair.
CompatProblem d8_center_problem() {
  PermGroup d8(4, {Permutation::parse_cycles("(0 1 2 3)", 4),
                   Permutation::parse_cycles("(1 3)", 4)});
  GroupTable t = GroupTable::from_group(d8);
  auto a = sub_ids(t, {"(0 2)(1 3)"});
  auto b = sub_ids(t, {"(1 3)"});
  IsoTable phi = iso_from_table(t, {{0, 0}, {a[1], b[1]}});
  return make_compat_problem(t, a, b, phi);
}

// A5 x S5 with A = A5 x 1 and B = 1 x A5, phi the coordinate shift.
CompatProblem product_shift_problem() {
  GroupTable t = GroupTable::from_group(direct_product(alt5(), sym5()));
  std::vector<std::uint32_t> a_ids, b_ids;
  PermGroup b_emb(10, {embed_at(Permutation::parse_cycles("(0 1 2)", 5), 5, 10),
                       embed_at(Permutation::parse_cycles("(0 1 2 3 4)", 5), 5, 10)});
  for (std::uint32_t e = 0; e < t.order(); ++e) {
    const Permutation& p = t.element(e);
    bool fix_hi = true, fix_lo = true;
    for (Point q = 5; q < 10; ++q) fix_hi = fix_hi && p[q] == q;
    for (Point q = 0; q < 5; ++q) fix_lo = fix_lo && p[q] == q;
    if (fix_hi) a_ids.push_back(e);
    if (fix_lo && b_emb.contains(p)) b_ids.push_back(e);
  }
  std::vector<std::uint32_t> gens = generating_subset(t, a_ids);
  std::vector<std::uint32_t> imgs;
  for (std::uint32_t g : gens) {
    const Permutation& p = t.element(g);
    std::vector<Point> shifted(10);
    for (Point q = 0; q < 5; ++q) shifted[q] = q;
    for (Point q = 0; q < 5; ++q) shifted[5 + q] = 5 + p[q];
    imgs.push_back(t.index_of(Permutation(std::move(shifted))));
  }
  IsoTable phi = iso_from_generator_images(t, gens, imgs);
  return make_compat_problem(t, a_ids, b_ids, phi);
}

void check_witness_record(const Witness& w) {
  CHECK(w.checks.conjugate_moves_a_to_b);
  CHECK(w.checks.intersection_is_b);
  CHECK(w.checks.degree_doubled);
  CHECK(w.checks.survivors == w.problem.a_ids.size());
  CHECK(w.big_group.degree() == 2 * w.problem.table.order());
  CHECK(w.h_embedded.order() == w.problem.table.order());
}

} // namespace

TEST_CASE("isomorphism table ingestion and validation") {
  GroupTable t = GroupTable::from_group(sym3());
  auto a = sub_ids(t, {"(0 1)"});
  auto b = sub_ids(t, {"(0 2)"});

  IsoTable phi = iso_from_table(t, {{0, 0}, {a[1], b[1]}});
  CHECK(phi.apply(0) == 0);
  CHECK(phi.apply(a[1]) == b[1]);
  CHECK_THROWS_AS(phi.apply(5), Error);  // outside the domain

  // Conflicting images for one element.
  CHECK_THROWS_AS(iso_from_table(t, {{0, 0}, {a[1], b[1]}, {a[1], 0}}), Error);
  // Identity must be fixed.
  CHECK_THROWS_AS(iso_from_table(t, {{0, b[1]}, {a[1], 0}}), Error);

  // A value swap that is a bijection but not multiplicative: on C4 send the
  // generator to itself and its square to its cube.
  GroupTable c4 = GroupTable::from_group(
      PermGroup(4, {Permutation::parse_cycles("(0 1 2 3)", 4)}));
  const std::uint32_t g1 = c4.index_of(Permutation::parse_cycles("(0 1 2 3)", 4));
  const std::uint32_t g2 = c4.index_of(Permutation::parse_cycles("(0 2)(1 3)", 4));
  const std::uint32_t g3 = c4.index_of(Permutation::parse_cycles("(0 3 2 1)", 4));
  CHECK_THROWS_AS(iso_from_table(c4, {{0, 0}, {g1, g1}, {g2, g3}, {g3, g2}}),
                  Error);
}

TEST_CASE("generator image ingestion") {
  GroupTable t = GroupTable::from_group(sym3());
  auto c3 = sub_ids(t, {"(0 1 2)"});

  // Inversion on C3 extends to an isomorphism.
  IsoTable phi = iso_from_generator_images(t, {c3[1]}, {t.inv(c3[1])});
  CHECK(phi.domain == c3);
  CHECK(phi.image == c3);
  CHECK(phi.apply(c3[1]) == t.inv(c3[1]));

  // Mapping an order-3 element to an involution is no homomorphism.
  auto refl = sub_ids(t, {"(0 1)"});
  CHECK_THROWS_AS(iso_from_generator_images(t, {c3[1]}, {refl[1]}), Error);

  // C4 onto its square: a homomorphism but not injective.
  GroupTable c4 = GroupTable::from_group(
      PermGroup(4, {Permutation::parse_cycles("(0 1 2 3)", 4)}));
  const std::uint32_t g1 = c4.index_of(Permutation::parse_cycles("(0 1 2 3)", 4));
  const std::uint32_t g2 = c4.index_of(Permutation::parse_cycles("(0 2)(1 3)", 4));
  CHECK_THROWS_AS(iso_from_generator_images(c4, {g1}, {g2}), Error);
}

TEST_CASE("regular and doubled embeddings") {
  GroupTable t = GroupTable::from_group(sym3());
  PermGroup reg = t.regular_group();
  CHECK(reg.degree() == 6);
  CHECK(reg.order() == 6);

  PermGroup dbl = doubled_regular_group(t);
  CHECK(dbl.degree() == 12);
  CHECK(dbl.order() == 6);
  // Diagonal action: both halves carry the same translation.
  for (const Permutation& g : dbl.generators())
    for (Point p = 0; p < 6; ++p) CHECK(g[6 + p] == 6 + g[p]);

  auto c3 = sub_ids(t, {"(0 1 2)"});
  CHECK(regular_subgroup(t, c3).order() == 3);
  CHECK(doubled_regular_subgroup(t, c3).order() == 3);
  CHECK(regular_subgroup(t, {0}).order() == 1);
  CHECK(doubled_regular_subgroup(t, {0}).degree() == 12);
}

TEST_CASE("problem assembly rejects mismatched pieces") {
  GroupTable t = GroupTable::from_group(sym3());
  auto a = sub_ids(t, {"(0 1)"});
  auto b = sub_ids(t, {"(0 2)"});
  auto c3 = sub_ids(t, {"(0 1 2)"});
  IsoTable phi = iso_from_table(t, {{0, 0}, {a[1], b[1]}});

  // Size mismatch between the subgroups.
  IsoTable id3 = iso_from_generator_images(t, {c3[1]}, {c3[1]});
  CHECK_THROWS_AS(make_compat_problem(t, a, c3, phi), Error);
  // Isomorphism endpoints not matching the chosen subgroups.
  CHECK_THROWS_AS(make_compat_problem(t, c3, c3, phi), Error);
  // Not a subgroup at all.
  CHECK_THROWS_AS(make_compat_problem(t, {0, a[1], b[1]}, c3, id3), Error);
}

TEST_CASE("conjugator search on the S3 reflection pair") {
  CompatProblem p = s3_reflection_problem();
  HnnSearch r = find_hnn_element(p);
  REQUIRE(r.success());
  CHECK(r.g->images().size() == 12);
  CHECK(r.best_survivors == 2);

  Witness w = build_witness(p, *r.g);
  check_witness_record(w);
  CHECK(w.checks.intersection_cross_checked);
  CHECK(w.checks.survivors == 2);
  // The smallest group this pair can generate: H plus one double coset.
  CHECK(w.big_group.order() == 24);
  CHECK(w.checks.local_minus_order == 6);
  CHECK(w.checks.local_plus_order == 6);
  CHECK(w.checks.local_minus_degree == 3);
  CHECK(w.checks.local_plus_degree == 3);

  // Same result through the search-and-build entry point.
  Witness w2 = build_witness(p);
  CHECK(w2.big_group.order() == 24);
  CHECK(w2.g.images() == w.g.images());
}

TEST_CASE("witness digraph of the S3 pair") {
  Witness w = build_witness(s3_reflection_problem());
  WitnessDigraph wd = witness_digraph(w);
  REQUIRE(!wd.degenerate);
  CHECK(wd.gamma.vertex_count == 4);
  CHECK(wd.gamma.arcs.size() == 12);
  CHECK(wd.gamma.vertex_transitive());
  CHECK(wd.gamma.arc_transitive());

  CHECK(wd.out_local.induced.order() == 6);
  CHECK(wd.in_local.induced.order() == 6);
  CHECK(wd.out_local.induced.degree() == wd.in_local.induced.degree());
  CHECK(wd.out_local.induced.orbits().size() ==
        wd.in_local.induced.orbits().size());

  REQUIRE(wd.out_cert.verdict == IsoVerdict::yes);
  REQUIRE(wd.in_cert.verdict == IsoVerdict::yes);
  CHECK(wd.out_cert.verify(wd.out_local.induced, w.local_plus));
  CHECK(wd.in_cert.verify(wd.in_local.induced, w.local_minus));
}

TEST_CASE("center against a reflection pair in D8") {
  CompatProblem p = d8_center_problem();
  Witness w = build_witness(p);
  check_witness_record(w);
  CHECK(w.big_group.degree() == 16);
  CHECK(w.big_group.order() == 192);

  // One coset image kills the central subgroup, the other is faithful.
  CHECK(subgroup_of(w.problem.a, w.kernel_minus));
  CHECK(w.checks.local_minus_order == 4);
  CHECK(w.kernel_plus.order() == 1);
  CHECK(w.checks.local_plus_order == 8);
  CHECK(w.checks.local_minus_degree == 4);
  CHECK(w.checks.local_plus_degree == 4);

  WitnessDigraph wd = witness_digraph(w);
  REQUIRE(!wd.degenerate);
  CHECK(wd.gamma.vertex_count == 24);
  CHECK(wd.gamma.arcs.size() == 96);
  CHECK(wd.out_local.induced.order() == 8);
  CHECK(wd.in_local.induced.order() == 4);
  CHECK(wd.out_local.induced.degree() == wd.in_local.induced.degree());
  CHECK(wd.out_cert.verdict == IsoVerdict::yes);
  CHECK(wd.in_cert.verdict == IsoVerdict::yes);
}

TEST_CASE("backtrack wins the minimization on the Klein four group") {
  PermGroup v4(4, {Permutation::parse_cycles("(0 1)(2 3)", 4),
                   Permutation::parse_cycles("(0 2)(1 3)", 4)});
  GroupTable t = GroupTable::from_group(v4);
  auto a = sub_ids(t, {"(0 1)(2 3)"});
  auto b = sub_ids(t, {"(0 2)(1 3)"});
  IsoTable phi = iso_from_table(t, {{0, 0}, {a[1], b[1]}});
  CompatProblem p = make_compat_problem(t, a, b, phi);

  // Both subgroups are normal, but no coset pairing has pairwise distinct
  // representative differences here, so the normal-pair shortcut comes up
  // empty and reports its diagnostics.
  HnnSearch np = find_hnn_element(p, HnnStrategy::normal_pair);
  CHECK(!np.success());
  CHECK(np.candidates == 0);
  CHECK(np.note.find("no conjugator found") != std::string::npos);

  HnnSearch r = find_hnn_element(p);
  REQUIRE(r.success());
  CHECK(r.strategy == "backtrack");
  Witness w = build_witness(p, *r.g);
  check_witness_record(w);
  CHECK(w.big_group.order() == 24);

  // The sweep alone also finds a conjugator, just not the smallest one.
  HnnSearch sweep = find_hnn_element(p, HnnStrategy::block_sweep);
  REQUIRE(sweep.success());
  Witness ws = build_witness(p, *sweep.g);
  check_witness_record(ws);
  CHECK(ws.big_group.order() >= w.big_group.order());
}

TEST_CASE("strategy gates report why they do not apply") {
  // Reflection subgroups of S3 are not normal.
  HnnSearch np = find_hnn_element(s3_reflection_problem(), HnnStrategy::normal_pair);
  CHECK(!np.success());
  CHECK(np.note.find("normal") != std::string::npos);

  // The slot backtrack is gated on the group order.
  GroupTable c30 = GroupTable::from_group(PermGroup(
      30, {Permutation::parse_cycles(
              "(0 1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 19 20 21 22 "
              "23 24 25 26 27 28 29)",
              30)}));
  std::uint32_t inv = 0;
  for (std::uint32_t e = 1; e < c30.order(); ++e)
    if (c30.mul(e, e) == 0) {
      inv = e;
      break;
    }
  auto c2 = c30.closure({inv});
  IsoTable phi = iso_from_table(c30, {{0, 0}, {c2[1], c2[1]}});
  CompatProblem p = make_compat_problem(c30, c2, c2, phi);
  HnnSearch bt = find_hnn_element(p, HnnStrategy::backtrack);
  CHECK(!bt.success());
  CHECK(bt.note.find("gated") != std::string::npos);
}

TEST_CASE("identity conjugator when both subgroups are the whole group") {
  GroupTable t = GroupTable::from_group(sym3());
  auto all = all_ids(t);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t i : all) pairs.emplace_back(i, i);
  CompatProblem p = make_compat_problem(t, all, all, iso_from_table(t, pairs));

  HnnSearch r = find_hnn_element(p);
  REQUIRE(r.success());
  CHECK(r.g->is_identity());

  Witness w = build_witness(p, *r.g);
  check_witness_record(w);
  CHECK(w.big_group.order() == 6);
  CHECK(group_equal(w.big_group, w.h_embedded));

  WitnessDigraph wd = witness_digraph(w);
  CHECK(wd.degenerate);
}

TEST_CASE("witness serialization") {
  Witness w = build_witness(s3_reflection_problem());
  nlohmann::json j = nlohmann::json::parse(witness_json(w));
  CHECK(j["groupOrder"] == 6);
  CHECK(j["subgroupOrder"] == 2);
  CHECK(j["bigGroupDegree"] == 12);
  CHECK(j["checks"]["intersectionIsB"] == true);
  CHECK(j["checks"]["survivors"] == 2);
  CHECK(j["g"].get<std::string>().find('(') != std::string::npos);
}

TEST_CASE("necessary battery certifies an incompatible regular pair") {
  PermGroup slr = GroupTable::from_group(named("SL(2,5)")).regular_group();
  PermGroup s5r = GroupTable::from_group(named("S5")).regular_group();

  NecessaryReport nr = necessary_compat_check(slr, s5r);
  CHECK(nr.degree_equal.pass);
  CHECK(nr.orbit_count_equal.pass);
  CHECK(nr.sections_equal.pass);
  CHECK(nr.primes_equal.pass);
  CHECK(nr.soluble_agree.pass);
  CHECK(!nr.common_simple_quotient.pass);
  CHECK(nr.common_simple_quotient.applicable);
  CHECK(nr.common_simple_quotient.complete);
  CHECK(!nr.all_pass());
  CHECK(nr.incompatibility_certified());
  CHECK(!nr.summary().empty());
}

TEST_CASE("necessary battery passes a compatible regular pair") {
  PermGroup a5c2 = GroupTable::from_group(
                       direct_product(alt5(), PermGroup(2, {Permutation::parse_cycles(
                                                   "(0 1)", 2)})))
                       .regular_group();
  PermGroup slr = GroupTable::from_group(named("SL(2,5)")).regular_group();

  NecessaryReport nr = necessary_compat_check(a5c2, slr);
  CHECK(nr.all_pass());
  CHECK(!nr.incompatibility_certified());
  CHECK(nr.common_simple_quotient.evidence.find("A5") != std::string::npos);
}

TEST_CASE("necessary battery edge cases") {
  // A group against itself.
  PermGroup s5r = GroupTable::from_group(sym5()).regular_group();
  CHECK(necessary_compat_check(s5r, s5r).all_pass());

  // Degree mismatch is decisive.
  PermGroup s3r = GroupTable::from_group(sym3()).regular_group();
  PermGroup c2r(2, {Permutation::parse_cycles("(0 1)", 2)});
  NecessaryReport nr = necessary_compat_check(s3r, c2r);
  CHECK(!nr.degree_equal.pass);
  CHECK(nr.incompatibility_certified());

  // Intransitive inputs make the common-quotient condition inapplicable.
  PermGroup split(4, {Permutation::parse_cycles("(0 1)", 4),
                      Permutation::parse_cycles("(2 3)", 4)});
  NecessaryReport ni = necessary_compat_check(split, split);
  CHECK(!ni.common_simple_quotient.applicable);
  CHECK(ni.all_pass());
  CHECK(!ni.incompatibility_certified());
}

TEST_CASE("every witness passes the necessary battery") {
  for (const CompatProblem& p :
       {s3_reflection_problem(), d8_center_problem()}) {
    Witness w = build_witness(p);
    NecessaryReport nr = necessary_compat_check(w.local_minus, w.local_plus);
    CHECK(nr.all_pass());
  }
}

TEST_CASE("regular pair witness on a product with two normal factors") {
  CompatProblem p = product_shift_problem();
  Witness w = regular_pair_witness(p.table, p.a_ids, p.b_ids, p.phi);
  check_witness_record(w);

  // Both coset images are regular of degree 120.
  CHECK(w.local_minus.degree() == 120);
  CHECK(w.local_plus.degree() == 120);
  CHECK(w.local_minus.order() == 120);
  CHECK(w.local_plus.order() == 120);
  CHECK(group_equal(w.kernel_minus, w.problem.a));
  CHECK(group_equal(w.kernel_plus, w.problem.b));

  // One side is S5, the other A5 x C2: same composition factors.
  CompositionMultiset expect;
  expect.add(named_id("C2")).add(named_id("A5"));
  CHECK(composition_multiset(w.local_minus) == expect);
  CHECK(composition_multiset(w.local_plus) == expect);
  CHECK(!is_soluble(w.local_minus));
  CHECK(necessary_compat_check(w.local_minus, w.local_plus).all_pass());
}

TEST_CASE("regular pair witness on the doubled special linear group") {
  PermGroup h = direct_product(named("SL(2,5)"),
                               PermGroup(2, {Permutation::parse_cycles("(0 1)", 2)}));
  GroupTable t = GroupTable::from_group(h);
  const Point d = t.degree();
  std::vector<std::uint32_t> a_ids{0}, b_ids{0};
  for (std::uint32_t e = 1; e < t.order(); ++e) {
    const Permutation& p = t.element(e);
    bool fix_c2 = p[d - 2] == d - 2 && p[d - 1] == d - 1;
    bool fix_sl = true;
    for (Point q = 0; q + 2 < d; ++q) fix_sl = fix_sl && p[q] == q;
    if (!fix_c2 && fix_sl) b_ids.push_back(e);
    // The unique central involution with trivial second coordinate.
    if (fix_c2 && e != 0 && t.mul(e, e) == 0) a_ids.push_back(e);
  }
  REQUIRE(a_ids.size() == 2);
  REQUIRE(b_ids.size() == 2);

  IsoTable phi = iso_from_table(t, {{0, 0}, {a_ids[1], b_ids[1]}});
  Witness w = regular_pair_witness(t, a_ids, b_ids, phi);
  CHECK(w.local_minus.order() == 120);
  CHECK(w.local_plus.order() == 120);
  CompositionMultiset expect;
  expect.add(named_id("C2")).add(named_id("A5"));
  CHECK(composition_multiset(w.local_minus) == expect);
  CHECK(composition_multiset(w.local_plus) == expect);
  CHECK(necessary_compat_check(w.local_minus, w.local_plus).all_pass());

  // Normality is a hard precondition.
  GroupTable s3t = GroupTable::from_group(sym3());
  auto ra = sub_ids(s3t, {"(0 1)"});
  auto rb = sub_ids(s3t, {"(0 2)"});
  IsoTable rphi = iso_from_table(s3t, {{0, 0}, {ra[1], rb[1]}});
  CHECK_THROWS_AS(regular_pair_witness(s3t, ra, rb, rphi), Error);
}

TEST_CASE("regular pair witness with equal abelian subgroups") {
  GroupTable t = GroupTable::from_group(
      PermGroup(6, {Permutation::parse_cycles("(0 1 2 3 4 5)", 6)}));
  auto c3 = sub_ids(t, {"(0 2 4)(1 3 5)"});
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t x : c3) pairs.emplace_back(x, x);
  Witness w = regular_pair_witness(t, c3, c3, iso_from_table(t, pairs));
  CHECK(w.local_minus.degree() == 2);
  CHECK(w.local_minus.order() == 2);
  CHECK(group_equal(w.local_minus, w.local_plus));
}

TEST_CASE("series witness for S3 over its rotation subgroup") {
  GroupTable t = GroupTable::from_group(sym3());
  auto c3 = sub_ids(t, {"(0 1 2)"});
  SeriesWitness sw = subnormal_series_witness(t, {{0}, c3, all_ids(t)});

  CHECK(sw.problem.table.order() == 18);
  CHECK(sw.factor_order == 6);
  CHECK(sw.order_verified);
  CHECK(sw.multiset_verified);

  CompositionMultiset expect;
  expect.add(named_id("C2")).add(named_id("C3"));
  CHECK(sw.factor_multiset == expect);
  CHECK(composition_multiset(sw.quotient_plus) == expect);

  // One quotient is L itself, regular on its own order.
  CHECK(sw.quotient_minus.order() == 6);
  CHECK(sw.quotient_minus.degree() == 6);
  CHECK(composition_multiset(sw.quotient_minus) == expect);
  CHECK(sw.quotient_plus.order() == 6);
}

TEST_CASE("series witness exhibits C4 alongside the Klein four group") {
  GroupTable t = GroupTable::from_group(
      PermGroup(4, {Permutation::parse_cycles("(0 1 2 3)", 4)}));
  auto c2 = sub_ids(t, {"(0 2)(1 3)"});
  SeriesWitness sw = subnormal_series_witness(t, {{0}, c2, all_ids(t)});

  CHECK(sw.problem.table.order() == 8);
  CHECK(sw.factor_order == 4);
  CHECK(sw.order_verified);
  CHECK(sw.multiset_verified);
  CompositionMultiset expect;
  expect.add(named_id("C2"), 2);
  CHECK(sw.factor_multiset == expect);

  // The second quotient has exponent 2, so it is not cyclic of order 4.
  GroupTable q = GroupTable::from_group(sw.quotient_plus);
  CHECK(q.order() == 4);
  for (std::uint32_t e = 0; e < q.order(); ++e) CHECK(q.mul(e, e) == 0);
}

TEST_CASE("series witness degenerate and error cases") {
  GroupTable t = GroupTable::from_group(sym3());

  // Single-member series: the problem pits the full group against itself.
  SeriesWitness sw = subnormal_series_witness(t, {all_ids(t)});
  CHECK(sw.problem.table.order() == 6);
  CHECK(sw.problem.a_ids == std::vector<std::uint32_t>{0});
  CHECK(sw.problem.b_ids == std::vector<std::uint32_t>{0});
  CHECK(sw.factor_order == 6);
  CHECK(sw.order_verified);
  CHECK(sw.multiset_verified);

  // A non-normal step is rejected.
  auto refl = sub_ids(t, {"(0 1)"});
  CHECK_THROWS_AS(subnormal_series_witness(t, {{0}, refl, all_ids(t)}), Error);
  // The series must end at the whole group.
  auto c3 = sub_ids(t, {"(0 1 2)"});
  CHECK_THROWS_AS(subnormal_series_witness(t, {{0}, c3}), Error);
}

TEST_CASE("problem JSON round trip") {
  CompatProblem p = s3_reflection_problem();
  CompatProblem q = compat_problem_from_json(compat_problem_to_json(p));
  CHECK(q.table.order() == 6);
  CHECK(q.a_ids == p.a_ids);
  CHECK(q.b_ids == p.b_ids);
  CHECK(q.phi.domain == p.phi.domain);
  CHECK(q.phi.map_to == p.phi.map_to);

  HnnSearch r = find_hnn_element(q);
  REQUIRE(r.success());
  CHECK(build_witness(q, *r.g).big_group.order() == 24);
}

TEST_CASE("problem JSON accepts generators and cycle strings") {
  const std::string text = R"js({
    "group": {"generators": ["(0 1)", "(0 1 2)"], "degree": 3},
    "subgroupA": ["(0 1)"],
    "subgroupB": ["(0 2)"],
    "phi": [["(0 1)", "(0 2)"]]
  })js";
  CompatProblem p = compat_problem_from_json(text);
  CHECK(p.table.order() == 6);
  CHECK(p.a_ids.size() == 2);
  CHECK(p.b_ids.size() == 2);
  CHECK(build_witness(p).big_group.order() == 24);
}

TEST_CASE("problem JSON accepts a multiplication table") {
  const std::string text = R"({
    "group": {"table": [[0, 1, 2, 3], [1, 2, 3, 0], [2, 3, 0, 1], [3, 0, 1, 2]]},
    "subgroupA": [0, 2],
    "subgroupB": [0, 2],
    "phi": [[0, 0], [2, 2]]
  })";
  CompatProblem p = compat_problem_from_json(text);
  CHECK(p.table.order() == 4);
  CHECK(p.a_ids.size() == 2);
  CHECK(p.b_ids == p.a_ids);

  // Garbage rows are rejected.
  CHECK_THROWS_AS(compat_problem_from_json(
                      R"({"group": {"table": [[0, 1], [0, 1]]},
                          "subgroupA": [0], "subgroupB": [0], "phi": [[0, 0]]})"),
                  Error);
}
