#include "qlocal/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace qlocal {

Permutation::Permutation(Point degree) : img_(degree) {
  std::iota(img_.begin(), img_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (Point v : img_) {
    if (v >= img_.size() || seen[v])
      throw Error("not a permutation: image array invalid");
    seen[v] = true;
  }
}

bool Permutation::is_identity() const {
  for (Point p = 0; p < degree(); ++p)
    if (img_[p] != p) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(img_.size());
  for (Point p = 0; p < degree(); ++p) inv[img_[p]] = p;
  Permutation r(Point(0));
  r.img_ = std::move(inv);
  return r;
}

Permutation Permutation::then(const Permutation& other) const {
  if (degree() != other.degree())
    throw Error("degree mismatch in composition");
  std::vector<Point> out(img_.size());
  for (Point p = 0; p < degree(); ++p) out[p] = other.img_[img_[p]];
  Permutation r(Point(0));
  r.img_ = std::move(out);
  return r;
}

Permutation Permutation::conjugated_by(const Permutation& g) const {
  if (degree() != g.degree())
    throw Error("degree mismatch in conjugation");
  // result = g^-1 * this * g:  result[g[p]] = g[this[p]]
  std::vector<Point> out(img_.size());
  for (Point p = 0; p < degree(); ++p) out[g.img_[p]] = g.img_[img_[p]];
  Permutation r(Point(0));
  r.img_ = std::move(out);
  return r;
}

std::uint64_t Permutation::element_order() const {
  std::vector<bool> seen(img_.size(), false);
  std::uint64_t ord = 1;
  for (Point p = 0; p < degree(); ++p) {
    if (seen[p]) continue;
    std::uint64_t len = 0;
    Point q = p;
    while (!seen[q]) {
      seen[q] = true;
      q = img_[q];
      ++len;
    }
    std::uint64_t g = std::gcd(ord, len);
    if (len / g > 1 && ord > UINT64_MAX / (len / g))
      throw Error("element order overflows 64 bits");
    ord = ord / g * len;
  }
  return ord;
}

std::vector<Point> Permutation::moved_points() const {
  std::vector<Point> out;
  for (Point p = 0; p < degree(); ++p)
    if (img_[p] != p) out.push_back(p);
  return out;
}

Point Permutation::smallest_moved() const {
  for (Point p = 0; p < degree(); ++p)
    if (img_[p] != p) return p;
  return degree();
}

std::string Permutation::cycle_string() const {
  std::vector<bool> seen(img_.size(), false);
  std::ostringstream os;
  bool any = false;
  for (Point p = 0; p < degree(); ++p) {
    if (seen[p] || img_[p] == p) continue;
    any = true;
    os << '(' << p;
    seen[p] = true;
    for (Point q = img_[p]; q != p; q = img_[q]) {
      seen[q] = true;
      os << ' ' << q;
    }
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

Permutation Permutation::parse_cycles(const std::string& s, Point degree) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  skip_ws();
  bool saw_cycle = false;
  while (i < s.size()) {
    if (s[i] != '(') throw Error("cycle parse: expected '(' in \"" + s + "\"");
    ++i;
    std::vector<Point> cyc;
    skip_ws();
    while (i < s.size() && s[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw Error("cycle parse: expected point in \"" + s + "\"");
      std::uint64_t v = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        v = v * 10 + static_cast<std::uint64_t>(s[i] - '0');
        if (v > 0xffffffffULL) throw Error("cycle parse: point too large");
        ++i;
      }
      if (v >= degree)
        throw Error("cycle parse: point " + std::to_string(v) +
                    " out of range for degree " + std::to_string(degree));
      cyc.push_back(static_cast<Point>(v));
      skip_ws();
      if (i < s.size() && s[i] == ',') { ++i; skip_ws(); }
    }
    if (i >= s.size()) throw Error("cycle parse: unterminated cycle");
    ++i;  // ')'
    saw_cycle = true;
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      Point from = cyc[k];
      Point to = cyc[(k + 1) % cyc.size()];
      if (img[from] != from)
        throw Error("cycle parse: point repeated across cycles");
      if (from != to) img[from] = to;
    }
    skip_ws();
  }
  if (!saw_cycle) throw Error("cycle parse: empty string");
  return Permutation(std::move(img));
}

Permutation Permutation::from_images(const std::vector<std::int64_t>& raw) {
  std::vector<Point> img;
  img.reserve(raw.size());
  for (std::int64_t v : raw) {
    if (v < 0 || static_cast<std::uint64_t>(v) >= raw.size())
      throw Error("image array entry out of range");
    img.push_back(static_cast<Point>(v));
  }
  return Permutation(std::move(img));
}

std::uint64_t hash_images(const std::vector<Point>& img) {
  // FNV-1a over the image words; stable across runs.
  std::uint64_t h = 1469598103934665603ULL;
  for (Point v : img) {
    h ^= v;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t hash_value(const Permutation& p) { return hash_images(p.images()); }

Permutation embed_at(const Permutation& p, Point offset, Point total) {
  if (offset + p.degree() > total) throw Error("embed: block exceeds degree");
  std::vector<Point> img(total);
  for (Point i = 0; i < total; ++i) img[i] = i;
  for (Point i = 0; i < p.degree(); ++i) img[offset + i] = offset + p[i];
  return Permutation(std::move(img));
}

} // namespace qlocal
