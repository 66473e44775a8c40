#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qlocal/perm_group.hpp"

namespace qlocal {

// The unique element of the right coset (sub)*x whose base-image tuple along
// sub's stabilizer chain is lexicographically least.  Depends only on the
// coset, so two elements represent the same coset exactly when their
// canonical forms coincide.
Permutation canonical_coset_rep(const StabChain& sub, const Permutation& x);

// Right cosets of a subgroup, each held by its canonical representative.
// reps[0] is the coset of the subgroup itself.
struct CosetSpace {
  PermGroup parent;
  PermGroup point;  // the stabilized subgroup
  std::vector<Permutation> reps;
  std::uint64_t index = 0;
  // Derived lookup: canonical representative -> coset id.
  std::unordered_map<Permutation, std::uint32_t> rep_index;

  // Coset id of (point)*x, when x lies in the parent's coset range.
  std::optional<std::uint32_t> coset_of(const Permutation& x) const;

  // Independent identity check: representatives lie in pairwise distinct
  // cosets by the sift test r_i * r_j^-1 not in sub.  Quadratic; intended
  // for tests and small spaces.
  bool verify_distinct() const;
};

// Action of a group on the cosets of a subgroup: image on index points,
// kernel (the core of the subgroup), and the per-generator image.
struct ActionImage {
  PermGroup source;
  PermGroup image;
  PermGroup kernel;
  std::vector<Permutation> generator_map;  // parallel to source.generators()
};

struct CosetAction {
  ActionImage action;
  CosetSpace space;
};

// Builds the coset action of g on the right cosets of h (h <= g required).
// kernel_hint, when given, must be a subgroup acting trivially on the cosets
// with |hint| * |image| = |g|; it is verified and then used as the kernel,
// skipping the general combined-chain core computation.
CosetAction coset_action(const PermGroup& g, const PermGroup& h,
                         std::uint64_t max_index = Budget{}.max_index,
                         const PermGroup* kernel_hint = nullptr,
                         const Budget& budget = {});

} // namespace qlocal
