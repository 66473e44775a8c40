#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlocal/actions.hpp"
#include "qlocal/digraph.hpp"
#include "qlocal/group_structure.hpp"
#include "qlocal/group_table.hpp"
#include "qlocal/perm_group.hpp"
#include "qlocal/perm_iso.hpp"

namespace qlocal {

// Isomorphism between two subgroups of one group, held as a full value table
// over the table's element ids.  domain and image are sorted subgroup id
// lists; map_to is parallel to domain.
struct IsoTable {
  std::vector<std::uint32_t> domain;
  std::vector<std::uint32_t> image;
  std::vector<std::uint32_t> map_to;

  static constexpr std::size_t kMaxTableValidation = 5000;

  std::uint32_t apply(std::uint32_t a) const;  // throws when a is outside domain

  // |domain| == |image|, bijectivity, both sides subgroups, and
  // map(a1*a2) == map(a1)*map(a2).  The multiplicative check runs over all
  // pairs up to kMaxTableValidation elements and over a seeded sample plus
  // all generator pairs beyond that.  Throws Error on any violation.
  void validate(const GroupTable& t) const;
};

// Full-table ingestion; every pair is (element, image).  Gated at
// kMaxTableValidation elements, larger maps must come in as generator images.
IsoTable iso_from_table(const GroupTable& t,
                        const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs);

// Generator-image ingestion: gens[k] -> images[k] extended multiplicatively
// over the closure of gens.  Throws when the assignment is not an injective
// homomorphism.
IsoTable iso_from_generator_images(const GroupTable& t,
                                   const std::vector<std::uint32_t>& gens,
                                   const std::vector<std::uint32_t>& images);

// Greedy generating subset of a subgroup id list (empty for the trivial one).
std::vector<std::uint32_t> generating_subset(const GroupTable& t,
                                             const std::vector<std::uint32_t>& sub);

// The subgroup as a permutation group inside the right-regular action of the
// table's group, exact order attached.
PermGroup regular_subgroup(const GroupTable& t, const std::vector<std::uint32_t>& sub);

// H with two chosen subgroups and an isomorphism between them.  h acts
// right-regularly on the element ids, a and b live inside that action.
struct CompatProblem {
  GroupTable table;
  PermGroup h;
  std::vector<std::uint32_t> a_ids;
  std::vector<std::uint32_t> b_ids;
  IsoTable phi;
  PermGroup a;
  PermGroup b;
};

CompatProblem make_compat_problem(GroupTable table,
                                  std::vector<std::uint32_t> a_ids,
                                  std::vector<std::uint32_t> b_ids,
                                  IsoTable phi);

// Schema: {"group": {"generators": [cycles...], "degree": d} or
// {"table": [[...]]}, "subgroupA": [...], "subgroupB": [...],
// "phi": [[x, y], ...]}.  Elements are table ids or cycle strings; a phi list
// covering all of subgroupA is taken as a full table, a shorter one as
// generator images.
CompatProblem compat_problem_from_json(const std::string& text);
std::string compat_problem_to_json(const CompatProblem& p);

// Diagonal right-regular embedding of the table's group (or a subgroup) on
// two copies of the element set, so a conjugating element can move the copies
// independently.
PermGroup doubled_regular_group(const GroupTable& t);
PermGroup doubled_regular_subgroup(const GroupTable& t,
                                   const std::vector<std::uint32_t>& sub);

enum class HnnStrategy { automatic, normal_pair, block_sweep, backtrack };

// Outcome of the search for g with (a)^g == b == H meet H^g inside the
// doubled regular action.  Failure is diagnostic only: the restricted search
// space can miss an element whose existence is guaranteed abstractly.
struct HnnSearch {
  std::optional<Permutation> g;  // on 2|H| points
  std::string strategy;          // winning strategy, empty on failure
  std::vector<std::string> tried;
  std::uint64_t candidates = 0;
  // Smallest |{h in H : h^g in H}| over valid-shaped candidates; equals |a|
  // exactly on success.
  std::uint64_t best_survivors = 0;
  std::string note;

  bool success() const { return g.has_value(); }
};

// Search strategies, in the order `automatic` tries them:
//   normal_pair  - both subgroups normal: pair the b-cosets of the second
//                  copy by a permutation whose coset-rep differences are
//                  pairwise distinct, which forces exactness.
//   block_sweep  - g maps each copy of H to itself, sending the a-coset of
//                  u_j to the b-coset of a chosen target with a chosen
//                  offset; sweeps pairings and offsets (exhaustively when the
//                  space fits in budget.pairing_samples, else seeded).
//   backtrack    - coset-slot assignment allowing images in either copy;
//                  complete for conjugators realizing phi pointwise.  Gated
//                  at |H| <= 24, node-budgeted.
// On small instances (degree of the doubled action <= 64) all applicable
// strategies run and the candidate generating the smallest <H, g> wins, ties
// broken by image array among evaluated candidates; the search stops early
// once a candidate attains the unbeatable floor |H| * (1 + [H:a]) (or |H|
// when a = H, where g can be the identity).  On larger instances the first
// valid candidate is returned.  Sequential and deterministic for a fixed
// seed.
HnnSearch find_hnn_element(const CompatProblem& p,
                           HnnStrategy strategy = HnnStrategy::automatic,
                           std::uint64_t seed = 0, const Budget& budget = {});

struct WitnessChecks {
  bool conjugate_moves_a_to_b = false;  // (a)^g == b as groups
  bool intersection_is_b = false;       // exhaustive translation scan
  bool intersection_cross_checked = false;  // group-level route ran and agreed
  std::uint64_t survivors = 0;              // |{h in H : h^g in H}|
  bool degree_doubled = false;
  mpz_class local_minus_order = 0;
  mpz_class local_plus_order = 0;
  std::uint64_t local_minus_degree = 0;
  std::uint64_t local_plus_degree = 0;
};

// Verified conjugating element plus the group it generates with H.  The
// coset images of h on the a- and b-cosets (the two local actions the pair
// realizes) ride along with their kernels.
struct Witness {
  CompatProblem problem;
  Permutation g;
  PermGroup h_embedded;  // diagonal copy of H, degree 2|H|
  PermGroup big_group;   // <H, g>, degree 2|H|, order untouched until asked
  PermGroup local_minus;
  PermGroup local_plus;
  PermGroup kernel_minus;
  PermGroup kernel_plus;
  WitnessChecks checks;
};

// Runs the automatic search and assembles a fully verified witness; throws
// Error with the search diagnostics when no conjugator is found, and on any
// postcondition violation.
Witness build_witness(const CompatProblem& p, const Budget& budget = {});
// Same verification pipeline for an externally supplied g.
Witness build_witness(const CompatProblem& p, const Permutation& g,
                      const Budget& budget = {});

std::string witness_json(const Witness& w);

// Coset digraph of the witness: vertices are cosets of H in <H, g>, arcs the
// orbit of (H, Hg).  The local actions at the base vertex are matched
// against the problem's coset images by permutation-isomorphism search.
struct WitnessDigraph {
  Digraph gamma;
  bool degenerate = false;  // g inside H: no non-loop arc to orbit
  LocalActionReport out_local;
  LocalActionReport in_local;
  PermIsoCertificate out_cert;  // out-local vs coset image on b-cosets
  PermIsoCertificate in_cert;   // in-local vs coset image on a-cosets
};

WitnessDigraph witness_digraph(const Witness& w,
                               std::uint64_t max_index = Budget{}.max_index,
                               const Budget& budget = {});

// One necessary condition; pass stays true unless the condition decisively
// fails, complete records whether the underlying computation was exhaustive,
// applicable marks conditions with a precondition (common quotient needs
// both groups transitive and nontrivial).
struct CompatVerdict {
  bool pass = true;
  bool applicable = true;
  bool complete = true;
  std::string evidence;
};

// Battery of properties any compatible pair must share.  A failed verdict
// that is applicable and complete certifies incompatibility; all-pass proves
// nothing.
struct NecessaryReport {
  CompatVerdict degree_equal;
  CompatVerdict orbit_count_equal;
  CompatVerdict sections_equal;
  CompatVerdict primes_equal;
  CompatVerdict soluble_agree;
  CompatVerdict common_simple_quotient;

  bool all_pass() const;
  bool incompatibility_certified() const;
  bool complete() const;
  std::string summary() const;
};

NecessaryReport necessary_compat_check(const PermGroup& l_minus,
                                       const PermGroup& l_plus,
                                       const Budget& budget = {});

// Witness for a pair of normal subgroups: both coset images are regular
// (kernel equals the stabilized subgroup), which is verified on top of the
// usual witness checks.
Witness regular_pair_witness(const GroupTable& h,
                             const std::vector<std::uint32_t>& a_ids,
                             const std::vector<std::uint32_t>& b_ids,
                             const IsoTable& phi, const Budget& budget = {});

// Compatibility problem built from a subnormal series 1 <= X_1 <= ... <=
// X_n = L: H is the direct product of the X_i, one subgroup drops the last
// coordinate, the other shifts every X_{i-1} into the i-th coordinate.  The
// quotient by the first is L, the quotient by the second multiplies the
// series factors.
struct SeriesWitness {
  CompatProblem problem;
  CompositionMultiset factor_multiset;  // predicted for H / H_+
  mpz_class factor_order = 0;
  PermGroup quotient_minus;
  PermGroup quotient_plus;
  bool order_verified = false;
  bool multiset_verified = false;
};

SeriesWitness subnormal_series_witness(const GroupTable& l,
                                       const std::vector<std::vector<std::uint32_t>>& series,
                                       const Budget& budget = {});

} // namespace qlocal
