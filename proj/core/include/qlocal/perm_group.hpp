#pragma once

#include <gmpxx.h>

#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <vector>

#include "qlocal/common.hpp"
#include "qlocal/permutation.hpp"

namespace qlocal {

struct SiftResult {
  Permutation residue;
  std::size_t depth;  // chain level where sifting stopped; chain length on a full pass
  bool member() const { return residue.is_identity(); }
};

// One level of a stabilizer chain: a base point, the strong generators fixing
// all earlier base points, and a Schreier tree for the basic orbit.  The tree
// stores (generator, predecessor) labels; an explicit transversal is cached
// while the orbit stays small enough.
class StabChain {
public:
  struct Level {
    Point base = 0;
    std::vector<std::uint32_t> gen_idx;   // indices into the strong generator pool
    std::vector<Point> orbit;             // BFS order, orbit[0] == base
    std::vector<std::int64_t> pos;        // point -> orbit index; empty while orbit == {base}
    std::vector<std::int32_t> via_gen;    // orbit index -> generator entering it (-1 at root)
    std::vector<Point> via_from;          // orbit index -> predecessor point
    std::vector<Permutation> cache;       // explicit transversal, parallel to orbit
    bool cache_on = true;

    // pos and cache are allocated only once a second orbit point appears, so a
    // long run of trivial levels (pointwise stabilizers) stays cheap.
    std::int64_t pos_of(Point p) const {
      if (pos.empty()) return p == base ? 0 : -1;
      return pos[p];
    }
  };

  // Deterministic Schreier-Sims.  prescribed_base points become the leading
  // levels in the given order (even when their basic orbit is trivial), which
  // is what pointwise stabilizers are built from.  known_order, when given,
  // must be the exact group order; the build stops as soon as the transversal
  // product reaches it, which is a sound completeness certificate.
  StabChain(Point degree, std::vector<Permutation> gens,
            std::vector<Point> prescribed_base = {},
            const mpz_class* known_order = nullptr);

  Point degree() const { return degree_; }
  const std::vector<Level>& levels() const { return levels_; }
  const mpz_class& order() const { return order_; }
  const Permutation& generator(std::uint32_t idx) const { return pool_[idx]; }

  SiftResult sift(Permutation x) const;
  bool contains(const Permutation& x) const;

  // Transversal element u with base(level)^u == p.
  Permutation transversal(std::size_t level, Point p) const;

  // Generators of the subgroup fixing base[0..level-1] pointwise.
  std::vector<Permutation> level_generators(std::size_t level) const;

  std::size_t prescribed_levels() const { return prescribed_; }

  // Deterministic element enumeration in transversal-product order.
  // Throws BudgetExceeded when the order exceeds max_count.
  std::vector<Permutation> elements(std::uint64_t max_count) const;

  // Uniformly random element (one transversal representative per level).
  Permutation random_element(std::mt19937_64& rng) const;

private:
  void insert_generator(const Permutation& g, std::size_t from_level);
  void extend_orbit(std::size_t level);
  void apply_inverse_transversal(Permutation& x, std::size_t level, Point p) const;
  void recompute_order();

  Point degree_;
  std::vector<Permutation> pool_;      // strong generators
  std::vector<Permutation> pool_inv_;  // their inverses
  std::vector<Level> levels_;
  std::size_t prescribed_ = 0;
  mpz_class order_ = 1;
};

// Finitely generated permutation group on {0, ..., degree-1}.  Values are
// immutable; the stabilizer chain is derived data, built deterministically on
// first use and shared between copies.
class PermGroup {
public:
  PermGroup(Point degree, std::vector<Permutation> gens);
  PermGroup(Point degree, std::vector<Permutation> gens, mpz_class order_hint);
  static PermGroup trivial(Point degree);

  Point degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }
  const std::optional<mpz_class>& order_hint() const { return hint_; }

  const StabChain& chain() const;
  mpz_class order() const { return chain().order(); }
  bool is_trivial() const;

  SiftResult sift(const Permutation& x) const { return chain().sift(x); }
  bool contains(const Permutation& x) const { return chain().contains(x); }

  std::vector<std::vector<Point>> orbits() const;   // each ascending, sorted by least point
  bool is_transitive() const;
  bool is_abelian() const;

  // Same group with an exact order attached (enables chain early exit).
  PermGroup with_order_hint(mpz_class order) const;

private:
  struct ChainBox {
    std::mutex m;
    std::shared_ptr<const StabChain> chain;
  };

  Point degree_;
  std::vector<Permutation> gens_;
  std::optional<mpz_class> hint_;
  std::shared_ptr<ChainBox> box_;
};

// Chain construction as an explicit step (the seed selects nothing in this
// deterministic implementation but stays in the signature for stability).
PermGroup bsgs_build(const PermGroup& g, std::uint64_t seed = 0);

mpz_class group_order(const PermGroup& g);
bool is_member(const PermGroup& g, const Permutation& x);

PermGroup normal_closure(const PermGroup& g, const std::vector<Permutation>& elems);
PermGroup pointwise_stabilizer(const PermGroup& g, const std::vector<Point>& pts);
PermGroup conjugate_group(const PermGroup& g, const Permutation& x);

bool subgroup_of(const PermGroup& a, const PermGroup& b);
bool group_equal(const PermGroup& a, const PermGroup& b);

// Intersection: enumerate the smaller group and filter when its order is
// within budget, otherwise a base-image backtrack over a shared base.
PermGroup intersection(const PermGroup& a, const PermGroup& b, const Budget& budget = {});

// All elements, deterministic order; throws BudgetExceeded past the budget.
std::vector<Permutation> group_elements(const PermGroup& g, const Budget& budget = {});

// Derived subgroup (normal closure of generator commutators).
PermGroup derived_subgroup(const PermGroup& g);

// External direct product on the disjoint union of the point sets; the exact
// order is attached.
PermGroup direct_product(const PermGroup& a, const PermGroup& b);

Permutation random_element(const PermGroup& g, std::mt19937_64& rng);

} // namespace qlocal
