#include "qlocal/group_table.hpp"

#include <algorithm>

namespace qlocal {

GroupTable GroupTable::from_group(const PermGroup& g, std::size_t max_order) {
  if (g.order() > static_cast<long>(max_order))
    throw Error("group table: order " + g.order().get_str() + " exceeds " +
                std::to_string(max_order));
  Budget b;
  b.enumeration_order = max_order;
  GroupTable t;
  t.degree_ = g.degree();
  t.elems_ = group_elements(g, b);
  std::sort(t.elems_.begin(), t.elems_.end());
  t.build_index();
  for (const Permutation& gen : g.generators())
    t.gen_idx_.push_back(t.index_of(gen));
  if (t.gen_idx_.empty()) t.gen_idx_.push_back(0);
  return t;
}

GroupTable GroupTable::from_elements(std::vector<Permutation> elems) {
  if (elems.empty()) throw Error("group table: empty element list");
  GroupTable t;
  t.degree_ = elems.front().degree();
  for (const Permutation& p : elems)
    if (p.degree() != t.degree_) throw Error("group table: mixed degrees");
  t.elems_ = std::move(elems);
  std::sort(t.elems_.begin(), t.elems_.end());
  t.elems_.erase(std::unique(t.elems_.begin(), t.elems_.end()),
                 t.elems_.end());
  if (!t.elems_.front().is_identity())
    throw Error("group table: identity missing");
  t.build_index();
  // Closure check; inverses follow from closure in a finite set.
  for (std::uint32_t a = 0; a < t.order(); ++a)
    for (std::uint32_t b = 0; b < t.order(); ++b)
      if (!t.find(t.elems_[a].then(t.elems_[b])))
        throw Error("group table: element list not closed");
  for (std::uint32_t i = 0; i < t.order(); ++i) t.gen_idx_.push_back(i);
  return t;
}

void GroupTable::build_index() {
  const std::size_t n = elems_.size();
  index_.reserve(n * 2);
  for (std::uint32_t i = 0; i < n; ++i) index_.emplace(elems_[i], i);
  if (index_.size() != n) throw Error("group table: duplicate elements");

  auto lookup = [&](const Permutation& p) {
    auto it = index_.find(p);
    if (it == index_.end())
      throw Error("group table: element list not closed");
    return it->second;
  };

  if (n <= kDenseOrderLimit && degree_ <= kDenseDegreeLimit) {
    dense_.assign(n * n, 0);
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b)
        dense_[a * n + b] = lookup(elems_[a].then(elems_[b]));
  }

  inv_.assign(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) inv_[i] = lookup(elems_[i].inverse());
}

std::optional<std::uint32_t> GroupTable::find(const Permutation& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t GroupTable::index_of(const Permutation& p) const {
  auto i = find(p);
  if (!i) throw Error("group table: element not in group");
  return *i;
}

std::uint32_t GroupTable::mul(std::uint32_t a, std::uint32_t b) const {
  if (!dense_.empty()) return dense_[a * elems_.size() + b];
  return index_.at(elems_[a].then(elems_[b]));
}

std::uint32_t GroupTable::inv(std::uint32_t a) const { return inv_[a]; }

std::uint32_t GroupTable::conj(std::uint32_t x, std::uint32_t g) const {
  return mul(mul(inv_[g], x), g);
}

std::uint64_t GroupTable::order_of(std::uint32_t x) const {
  return elems_[x].element_order();
}

std::vector<std::uint32_t> GroupTable::closure(
    const std::vector<std::uint32_t>& seed) const {
  std::vector<char> in(order(), 0);
  std::vector<std::uint32_t> work{0};
  in[0] = 1;
  for (std::size_t head = 0; head < work.size(); ++head)
    for (std::uint32_t s : seed) {
      std::uint32_t t = mul(work[head], s);
      if (!in[t]) {
        in[t] = 1;
        work.push_back(t);
      }
    }
  std::sort(work.begin(), work.end());
  return work;
}

std::vector<std::uint32_t> GroupTable::full_index_list() const {
  std::vector<std::uint32_t> all(order());
  for (std::uint32_t i = 0; i < order(); ++i) all[i] = i;
  return all;
}

bool GroupTable::is_subgroup(const std::vector<std::uint32_t>& sub) const {
  std::vector<char> in(order(), 0);
  for (std::uint32_t s : sub) in[s] = 1;
  if (sub.empty() || !in[0]) return false;
  for (std::uint32_t a : sub)
    for (std::uint32_t b : sub)
      if (!in[mul(a, b)]) return false;
  return true;
}

bool GroupTable::is_normal(const std::vector<std::uint32_t>& sub) const {
  std::vector<char> in(order(), 0);
  for (std::uint32_t s : sub) in[s] = 1;
  for (std::uint32_t g : gen_idx_)
    for (std::uint32_t s : sub)
      if (!in[conj(s, g)]) return false;
  return true;
}

std::vector<std::uint32_t> GroupTable::left_transversal(
    const std::vector<std::uint32_t>& sub) const {
  std::vector<char> covered(order(), 0);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t i = 0; i < order(); ++i) {
    if (covered[i]) continue;
    reps.push_back(i);
    for (std::uint32_t s : sub) covered[mul(i, s)] = 1;
  }
  return reps;
}

Permutation GroupTable::regular_perm(std::uint32_t x) const {
  std::vector<Point> img(order());
  for (std::uint32_t i = 0; i < order(); ++i) img[i] = mul(i, x);
  return Permutation(std::move(img));
}

std::vector<Permutation> GroupTable::regular_perms(
    const std::vector<std::uint32_t>& xs) const {
  std::vector<Permutation> out;
  out.reserve(xs.size());
  for (std::uint32_t x : xs) out.push_back(regular_perm(x));
  return out;
}

PermGroup GroupTable::regular_group() const {
  std::vector<Permutation> gens;
  for (std::uint32_t g : gen_idx_)
    if (g != 0) gens.push_back(regular_perm(g));
  return PermGroup(static_cast<Point>(order()), std::move(gens),
                   mpz_class(static_cast<unsigned long>(order())));
}

std::optional<std::unordered_map<std::uint32_t, std::uint32_t>>
extend_homomorphism(const GroupTable& table,
                    const std::vector<std::uint32_t>& gens,
                    const std::vector<std::uint32_t>& images) {
  if (gens.size() != images.size())
    throw Error("homomorphism extension: generator/image count mismatch");
  std::unordered_map<std::uint32_t, std::uint32_t> map;
  map.emplace(0, 0);
  std::vector<std::uint32_t> work{0};
  for (std::size_t head = 0; head < work.size(); ++head) {
    std::uint32_t r = work[head];
    std::uint32_t rimg = map.at(r);
    for (std::size_t k = 0; k < gens.size(); ++k) {
      std::uint32_t s = table.mul(r, gens[k]);
      std::uint32_t simg = table.mul(rimg, images[k]);
      auto [it, fresh] = map.emplace(s, simg);
      if (fresh)
        work.push_back(s);
      else if (it->second != simg)
        return std::nullopt;
    }
  }
  return map;
}

} // namespace qlocal
