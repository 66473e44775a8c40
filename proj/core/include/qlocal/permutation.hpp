#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qlocal/common.hpp"

namespace qlocal {

// Permutation of {0, ..., n-1} stored as a full image array.
//
// Composition is left-to-right: (a * b) maps p to b[a[p]], i.e. points are
// acted on from the right, p^(ab) = (p^a)^b.  All routines in this library
// assume that convention.
class Permutation {
public:
  explicit Permutation(Point degree);            // identity
  explicit Permutation(std::vector<Point> images);

  Point degree() const { return static_cast<Point>(img_.size()); }
  Point operator[](Point p) const { return img_[p]; }
  const std::vector<Point>& images() const { return img_; }

  bool is_identity() const;
  Permutation inverse() const;
  Permutation then(const Permutation& other) const;       // this * other
  Permutation conjugated_by(const Permutation& g) const;  // g^-1 * this * g

  // Least common multiple of the cycle lengths; throws Error on overflow.
  std::uint64_t element_order() const;

  std::vector<Point> moved_points() const;
  Point smallest_moved() const;  // == degree() for the identity

  // "(0 1 2)(3 4)" with fixed points omitted; identity prints "()".
  std::string cycle_string() const;
  static Permutation parse_cycles(const std::string& s, Point degree);

  // Image-array ingestion with validation (negative, out of range, repeats).
  static Permutation from_images(const std::vector<std::int64_t>& raw);

  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

private:
  std::vector<Point> img_;
};

inline Permutation operator*(const Permutation& a, const Permutation& b) {
  return a.then(b);
}

std::uint64_t hash_value(const Permutation& p);
std::uint64_t hash_images(const std::vector<Point>& img);

// p acting on [offset, offset + p.degree()) inside a larger point set, fixing
// everything else.
Permutation embed_at(const Permutation& p, Point offset, Point total);

} // namespace qlocal

template <>
struct std::hash<qlocal::Permutation> {
  std::size_t operator()(const qlocal::Permutation& p) const {
    return static_cast<std::size_t>(qlocal::hash_value(p));
  }
};
