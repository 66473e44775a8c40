#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qlocal/perm_group.hpp"

namespace qlocal {

// Fully enumerated multiplication structure of a small group.  Elements are
// stored sorted by image array, which places the identity at index 0 (any
// non-identity permutation exceeds the identity at its first moved point).
// Subgroups are handled as sorted index lists.
//
// Products use a dense n*n index table when the group is small enough and
// fall back to composing the stored permutations plus a hash lookup.
class GroupTable {
public:
  static constexpr std::size_t kMaxOrder = 25000;
  static constexpr std::size_t kDenseOrderLimit = 2048;
  static constexpr std::size_t kDenseDegreeLimit = 64;

  static GroupTable from_group(const PermGroup& g,
                               std::size_t max_order = kMaxOrder);
  // elems must form a group; validated (closure, identity, degrees).
  static GroupTable from_elements(std::vector<Permutation> elems);

  std::size_t order() const { return elems_.size(); }
  Point degree() const { return degree_; }
  const std::vector<Permutation>& elements() const { return elems_; }
  const Permutation& element(std::uint32_t i) const { return elems_[i]; }

  std::optional<std::uint32_t> find(const Permutation& p) const;
  std::uint32_t index_of(const Permutation& p) const;  // throws when absent

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;
  // g^-1 * x * g by indices.
  std::uint32_t conj(std::uint32_t x, std::uint32_t g) const;
  std::uint64_t order_of(std::uint32_t x) const;

  // Indices of the generators the table was built from (identity for the
  // trivial group).  from_elements leaves the full element list here.
  const std::vector<std::uint32_t>& generator_indices() const {
    return gen_idx_;
  }

  // Subgroup generated by the given indices, as a sorted index list.
  std::vector<std::uint32_t> closure(const std::vector<std::uint32_t>& seed) const;
  std::vector<std::uint32_t> full_index_list() const;
  bool is_subgroup(const std::vector<std::uint32_t>& sub) const;
  // sub must be a subgroup (index list); conjugation by the table's
  // generators is decisive.
  bool is_normal(const std::vector<std::uint32_t>& sub) const;
  // Representatives r of the left cosets r*S in first-element order; the
  // identity leads.
  std::vector<std::uint32_t> left_transversal(
      const std::vector<std::uint32_t>& sub) const;

  // Right-regular action: point i moves to index(elem_i * elem_x).
  Permutation regular_perm(std::uint32_t x) const;
  std::vector<Permutation> regular_perms(
      const std::vector<std::uint32_t>& xs) const;
  // Regular representation on order() points, exact order attached.
  PermGroup regular_group() const;

private:
  GroupTable() = default;
  void build_index();

  Point degree_ = 0;
  std::vector<Permutation> elems_;
  std::unordered_map<Permutation, std::uint32_t> index_;
  std::vector<std::uint32_t> dense_;  // n*n, empty when hashed
  std::vector<std::uint32_t> inv_;
  std::vector<std::uint32_t> gen_idx_;
};

// Extends a generator-image assignment gens[k] -> images[k] to a full
// homomorphism from <gens> into the group, by breadth-first closure with
// consistency checks.  Returns the map on the closure as a dense table
// (index -> image index, untouched entries absent), or nullopt when the
// assignment is not a homomorphism.
std::optional<std::unordered_map<std::uint32_t, std::uint32_t>>
extend_homomorphism(const GroupTable& table,
                    const std::vector<std::uint32_t>& gens,
                    const std::vector<std::uint32_t>& images);

} // namespace qlocal
