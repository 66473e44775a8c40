#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qlocal/common.hpp"
#include "qlocal/perm_group.hpp"

namespace qlocal {

enum class IsoVerdict { yes, no, unknown };

// Conjugacy certificate inside the full symmetric group: the bijection maps
// the first action onto the second, generator by generator.
//
// verdict yes  -> point_bijection L and generator_images y_i satisfy
//                 y_i[L[p]] == L[x_i[p]] for every point p and generator x_i,
//                 with every y_i a member of b.
// verdict no   -> the backtrack exhausted all candidate bijections.
// verdict unknown -> the node budget ran out first.
struct PermIsoCertificate {
  IsoVerdict verdict = IsoVerdict::unknown;
  std::optional<Permutation> point_bijection;
  std::vector<Permutation> generator_images;
  std::uint64_t nodes = 0;  // backtrack assignments tried

  // Recomputes the whole invariant from scratch; true only for a valid yes.
  bool verify(const PermGroup& a, const PermGroup& b) const;
};

PermIsoCertificate perm_isomorphic(const PermGroup& a, const PermGroup& b,
                                   const Budget& budget = {});

} // namespace qlocal
