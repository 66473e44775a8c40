#include "qlocal/perm_group.hpp"

#include <algorithm>
#include <unordered_set>

namespace qlocal {

namespace {

constexpr std::size_t kCacheOrbitLimit = 4096;
constexpr std::size_t kCacheCellLimit = 30'000'000;

} // namespace

StabChain::StabChain(Point degree, std::vector<Permutation> gens,
                     std::vector<Point> prescribed_base, const mpz_class* known_order)
    : degree_(degree) {
  for (const auto& g : gens)
    if (g.degree() != degree) throw Error("generator degree mismatch");

  for (Point b : prescribed_base) {
    if (b >= degree) throw Error("prescribed base point out of range");
    bool dup = false;
    for (const auto& lv : levels_) dup = dup || lv.base == b;
    if (dup) continue;
    Level lv;
    lv.base = b;
    levels_.push_back(std::move(lv));
  }
  prescribed_ = levels_.size();

  for (const auto& g : gens)
    if (!g.is_identity()) insert_generator(g, 0);
  recompute_order();
  if (known_order && order_ == *known_order) return;

  // Process levels top-down.  New strong generators are only ever attached to
  // levels strictly below the one being scanned, and transversal labels are
  // append-only, so a finished level stays finished.
  for (std::size_t li = 0; li < levels_.size(); ++li) {
    extend_orbit(li);
    for (std::size_t oi = 0; oi < levels_[li].orbit.size(); ++oi) {
      Point p = levels_[li].orbit[oi];
      Permutation u_p = transversal(li, p);
      for (std::size_t kg = 0; kg < levels_[li].gen_idx.size(); ++kg) {
        const Permutation& s = pool_[levels_[li].gen_idx[kg]];
        Point q = s[p];
        Permutation w = u_p.then(s);
        apply_inverse_transversal(w, li, q);
        if (w.is_identity()) continue;
        // sift the Schreier generator through the deeper levels
        std::size_t d = li + 1;
        while (d < levels_.size()) {
          Point t = w[levels_[d].base];
          if (levels_[d].pos_of(t) < 0) break;
          apply_inverse_transversal(w, d, t);
          ++d;
        }
        if (w.is_identity()) continue;
        insert_generator(w, li + 1);
        recompute_order();
        if (known_order && order_ == *known_order) return;
      }
    }
  }
  recompute_order();
}

void StabChain::insert_generator(const Permutation& g, std::size_t from_level) {
  // Deepest level whose leading base points g fixes.
  std::size_t depth = from_level;
  while (depth < levels_.size() && g[levels_[depth].base] == levels_[depth].base)
    ++depth;
  if (depth == levels_.size()) {
    Level lv;
    lv.base = g.smallest_moved();
    levels_.push_back(std::move(lv));
  }
  pool_.push_back(g);
  pool_inv_.push_back(g.inverse());
  auto idx = static_cast<std::uint32_t>(pool_.size() - 1);
  for (std::size_t l = from_level; l <= depth && l < levels_.size(); ++l) {
    levels_[l].gen_idx.push_back(idx);
    extend_orbit(l);
  }
}

void StabChain::extend_orbit(std::size_t li) {
  Level& L = levels_[li];
  if (L.orbit.empty()) {
    L.orbit.push_back(L.base);
    L.via_gen.push_back(-1);
    L.via_from.push_back(L.base);
  }
  for (std::size_t oi = 0; oi < L.orbit.size(); ++oi) {
    Point p = L.orbit[oi];
    for (std::uint32_t gi : L.gen_idx) {
      Point q = pool_[gi][p];
      if (L.pos_of(q) >= 0) continue;
      if (L.pos.empty()) {
        L.pos.assign(degree_, -1);
        L.pos[L.base] = 0;
        if (L.cache_on) L.cache.emplace_back(degree_);
      }
      L.pos[q] = static_cast<std::int64_t>(L.orbit.size());
      L.orbit.push_back(q);
      L.via_gen.push_back(static_cast<std::int32_t>(gi));
      L.via_from.push_back(p);
      if (L.cache_on) {
        L.cache.push_back(L.cache[static_cast<std::size_t>(L.pos[p])].then(pool_[gi]));
        if (L.orbit.size() > kCacheOrbitLimit ||
            L.orbit.size() * degree_ > kCacheCellLimit) {
          L.cache.clear();
          L.cache.shrink_to_fit();
          L.cache_on = false;
        }
      }
    }
  }
}

Permutation StabChain::transversal(std::size_t li, Point p) const {
  const Level& L = levels_[li];
  if (L.pos_of(p) < 0) throw Error("point outside basic orbit");
  if (L.pos.empty()) return Permutation(degree_);
  if (L.cache_on) return L.cache[static_cast<std::size_t>(L.pos[p])];
  // Walk to the root collecting edge labels, then compose root-to-p.
  std::vector<std::int32_t> labels;
  Point q = p;
  while (q != L.base) {
    auto oi = static_cast<std::size_t>(L.pos[q]);
    labels.push_back(L.via_gen[oi]);
    q = L.via_from[oi];
  }
  Permutation u(degree_);
  for (auto it = labels.rbegin(); it != labels.rend(); ++it)
    u = u.then(pool_[static_cast<std::uint32_t>(*it)]);
  return u;
}

void StabChain::apply_inverse_transversal(Permutation& x, std::size_t li, Point p) const {
  const Level& L = levels_[li];
  if (L.pos.empty()) return;  // trivial orbit, identity transversal
  if (L.cache_on) {
    x = x.then(L.cache[static_cast<std::size_t>(L.pos[p])].inverse());
    return;
  }
  Point q = p;
  while (q != L.base) {
    auto oi = static_cast<std::size_t>(L.pos[q]);
    x = x.then(pool_inv_[static_cast<std::uint32_t>(L.via_gen[oi])]);
    q = L.via_from[oi];
  }
}

void StabChain::recompute_order() {
  order_ = 1;
  for (const auto& L : levels_)
    order_ *= static_cast<unsigned long>(std::max<std::size_t>(L.orbit.size(), 1));
}

SiftResult StabChain::sift(Permutation x) const {
  if (x.degree() != degree_) throw Error("degree mismatch in sift");
  for (std::size_t li = 0; li < levels_.size(); ++li) {
    Point p = x[levels_[li].base];
    if (levels_[li].pos_of(p) < 0) return SiftResult{std::move(x), li};
    apply_inverse_transversal(x, li, p);
  }
  return SiftResult{std::move(x), levels_.size()};
}

bool StabChain::contains(const Permutation& x) const { return sift(x).member(); }

std::vector<Permutation> StabChain::level_generators(std::size_t level) const {
  std::vector<Permutation> out;
  if (level >= levels_.size()) return out;
  out.reserve(levels_[level].gen_idx.size());
  for (std::uint32_t gi : levels_[level].gen_idx) out.push_back(pool_[gi]);
  return out;
}

std::vector<Permutation> StabChain::elements(std::uint64_t max_count) const {
  if (order_ > max_count)
    throw BudgetExceeded("element enumeration: order " + order_.get_str() +
                         " exceeds budget " + std::to_string(max_count));
  std::vector<Permutation> out{Permutation(degree_)};
  for (std::size_t li = levels_.size(); li-- > 0;) {
    const Level& L = levels_[li];
    if (L.orbit.size() <= 1) continue;
    std::vector<Permutation> next;
    next.reserve(out.size() * L.orbit.size());
    for (Point p : L.orbit) {
      Permutation u = transversal(li, p);
      for (const auto& e : out) next.push_back(e.then(u));
    }
    out = std::move(next);
  }
  return out;
}

Permutation StabChain::random_element(std::mt19937_64& rng) const {
  Permutation e(degree_);
  for (std::size_t li = levels_.size(); li-- > 0;) {
    const Level& L = levels_[li];
    if (L.orbit.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, L.orbit.size() - 1);
    e = e.then(transversal(li, L.orbit[pick(rng)]));
  }
  return e;
}

PermGroup::PermGroup(Point degree, std::vector<Permutation> gens)
    : degree_(degree), gens_(std::move(gens)), box_(std::make_shared<ChainBox>()) {
  for (const auto& g : gens_)
    if (g.degree() != degree_) throw Error("generator degree mismatch");
}

PermGroup::PermGroup(Point degree, std::vector<Permutation> gens, mpz_class order_hint)
    : PermGroup(degree, std::move(gens)) {
  if (order_hint < 1) throw Error("order hint must be positive");
  hint_ = std::move(order_hint);
}

PermGroup PermGroup::trivial(Point degree) { return PermGroup(degree, {}); }

const StabChain& PermGroup::chain() const {
  std::lock_guard<std::mutex> lock(box_->m);
  if (!box_->chain) {
    box_->chain = std::make_shared<const StabChain>(
        degree_, gens_, std::vector<Point>{}, hint_ ? &*hint_ : nullptr);
  }
  return *box_->chain;
}

bool PermGroup::is_trivial() const {
  for (const auto& g : gens_)
    if (!g.is_identity()) return false;
  return true;
}

std::vector<std::vector<Point>> PermGroup::orbits() const {
  std::vector<std::int64_t> owner(degree_, -1);
  std::vector<std::vector<Point>> out;
  for (Point s = 0; s < degree_; ++s) {
    if (owner[s] >= 0) continue;
    std::vector<Point> orb{s};
    owner[s] = static_cast<std::int64_t>(out.size());
    for (std::size_t i = 0; i < orb.size(); ++i)
      for (const auto& g : gens_) {
        Point q = g[orb[i]];
        if (owner[q] < 0) {
          owner[q] = owner[s];
          orb.push_back(q);
        }
      }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

bool PermGroup::is_transitive() const {
  return degree_ > 0 && orbits().size() == 1;
}

bool PermGroup::is_abelian() const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    for (std::size_t j = i + 1; j < gens_.size(); ++j)
      if (gens_[i].then(gens_[j]) != gens_[j].then(gens_[i])) return false;
  return true;
}

PermGroup PermGroup::with_order_hint(mpz_class order) const {
  return PermGroup(degree_, gens_, std::move(order));
}

PermGroup bsgs_build(const PermGroup& g, std::uint64_t) {
  g.chain();
  return g;
}

mpz_class group_order(const PermGroup& g) { return g.order(); }

bool is_member(const PermGroup& g, const Permutation& x) { return g.contains(x); }

PermGroup normal_closure(const PermGroup& g, const std::vector<Permutation>& elems) {
  std::vector<Permutation> ngens;
  for (const auto& e : elems) {
    if (!g.contains(e)) throw Error("normal closure: element outside the group");
    if (!e.is_identity()) ngens.push_back(e);
  }
  if (ngens.empty()) return PermGroup::trivial(g.degree());
  PermGroup n(g.degree(), ngens);
  for (;;) {
    std::vector<Permutation> fresh;
    for (const auto& x : g.generators()) {
      for (const auto& s : n.generators()) {
        Permutation t = s.conjugated_by(x);
        if (!n.contains(t)) {
          bool dup = false;
          for (const auto& f : fresh) dup = dup || f == t;
          if (!dup) fresh.push_back(std::move(t));
        }
      }
    }
    if (fresh.empty()) return n;
    std::vector<Permutation> all = n.generators();
    all.insert(all.end(), fresh.begin(), fresh.end());
    n = PermGroup(g.degree(), std::move(all));
  }
}

PermGroup pointwise_stabilizer(const PermGroup& g, const std::vector<Point>& pts) {
  std::vector<Point> base;
  for (Point p : pts) {
    if (p >= g.degree()) throw Error("stabilized point out of range");
    if (std::find(base.begin(), base.end(), p) == base.end()) base.push_back(p);
  }
  StabChain chain(g.degree(), g.generators(), base, nullptr);
  return PermGroup(g.degree(), chain.level_generators(base.size()));
}

PermGroup conjugate_group(const PermGroup& g, const Permutation& x) {
  std::vector<Permutation> gens;
  gens.reserve(g.generators().size());
  for (const auto& s : g.generators()) gens.push_back(s.conjugated_by(x));
  if (g.order_hint()) return PermGroup(g.degree(), std::move(gens), *g.order_hint());
  return PermGroup(g.degree(), std::move(gens));
}

bool subgroup_of(const PermGroup& a, const PermGroup& b) {
  if (a.degree() != b.degree()) throw Error("degree mismatch in subgroup test");
  for (const auto& s : a.generators())
    if (!b.contains(s)) return false;
  return true;
}

bool group_equal(const PermGroup& a, const PermGroup& b) {
  return subgroup_of(a, b) && a.order() == b.order();
}

std::vector<Permutation> group_elements(const PermGroup& g, const Budget& budget) {
  mpz_class cells = g.order() * g.degree();
  if (cells > static_cast<unsigned long>(budget.enumeration_cells))
    throw BudgetExceeded("element enumeration would use " + cells.get_str() + " cells");
  return g.chain().elements(budget.enumeration_order);
}

namespace {

PermGroup extend_with(PermGroup k, const Permutation& e) {
  std::vector<Permutation> gens = k.generators();
  gens.push_back(e);
  return PermGroup(k.degree(), std::move(gens));
}

PermGroup intersection_enumerate(const PermGroup& small, const PermGroup& other,
                                 const Budget& budget) {
  PermGroup k = PermGroup::trivial(small.degree());
  for (const auto& e : group_elements(small, budget))
    if (!e.is_identity() && other.contains(e) && !k.contains(e))
      k = extend_with(std::move(k), e);
  return k;
}

// Base-image backtrack over a's chain with b rebased onto a's base.  At each
// level the chosen image must stay inside b's aligned basic orbit.
PermGroup intersection_backtrack(const PermGroup& a, const PermGroup& b,
                                 const Budget& budget) {
  const StabChain& ca = a.chain();
  std::vector<Point> base_a;
  base_a.reserve(ca.levels().size());
  for (const auto& lv : ca.levels()) base_a.push_back(lv.base);
  StabChain cb(a.degree(), b.generators(), base_a, nullptr);

  const std::size_t la = ca.levels().size();
  const Point n = a.degree();
  PermGroup k = PermGroup::trivial(n);
  std::uint64_t nodes = 0;

  // s_stack[l][p]: image of p under the transversals chosen at levels 0..l-1,
  // shallow level applied last.  t_stack[l]: the b-side strip of those images.
  std::vector<std::vector<Point>> s_stack(la + 1), t_stack(la + 1);
  s_stack[0].resize(n);
  t_stack[0].resize(n);
  for (Point p = 0; p < n; ++p) {
    s_stack[0][p] = p;
    t_stack[0][p] = p;
  }

  auto rec = [&](auto&& self, std::size_t l) -> void {
    if (l == la) {
      Permutation g{std::vector<Point>(s_stack[la])};
      if (cb.contains(g) && !g.is_identity() && !k.contains(g))
        k = extend_with(std::move(k), g);
      return;
    }
    for (Point delta : ca.levels()[l].orbit) {
      if (++nodes > budget.backtrack_nodes)
        throw BudgetExceeded("intersection backtrack exceeded node budget");
      Point q = s_stack[l][delta];
      Point t = t_stack[l][q];
      if (cb.levels()[l].pos_of(t) < 0) continue;
      Permutation u = ca.transversal(l, delta);
      Permutation v_inv = cb.transversal(l, t).inverse();
      auto& s_next = s_stack[l + 1];
      auto& t_next = t_stack[l + 1];
      s_next.resize(n);
      t_next.resize(n);
      for (Point p = 0; p < n; ++p) {
        s_next[p] = s_stack[l][u[p]];
        t_next[p] = v_inv[t_stack[l][p]];
      }
      self(self, l + 1);
    }
  };
  rec(rec, 0);
  return k;
}

} // namespace

PermGroup intersection(const PermGroup& a, const PermGroup& b, const Budget& budget) {
  if (a.degree() != b.degree()) throw Error("degree mismatch in intersection");
  mpz_class oa = a.order(), ob = b.order();
  const PermGroup& small = oa <= ob ? a : b;
  const PermGroup& other = oa <= ob ? b : a;
  mpz_class so = small.order();
  if (so <= static_cast<unsigned long>(budget.enumeration_order) &&
      so * small.degree() <= static_cast<unsigned long>(budget.enumeration_cells))
    return intersection_enumerate(small, other, budget);
  return intersection_backtrack(a, b, budget);
}

PermGroup derived_subgroup(const PermGroup& g) {
  std::vector<Permutation> comms;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Permutation c = gens[i].inverse().then(gens[j].inverse()).then(gens[i]).then(gens[j]);
      if (!c.is_identity()) comms.push_back(std::move(c));
    }
  if (comms.empty()) return PermGroup::trivial(g.degree());
  return normal_closure(g, comms);
}

Permutation random_element(const PermGroup& g, std::mt19937_64& rng) {
  return g.chain().random_element(rng);
}

PermGroup direct_product(const PermGroup& a, const PermGroup& b) {
  Point total = a.degree() + b.degree();
  std::vector<Permutation> gens;
  for (const Permutation& p : a.generators())
    gens.push_back(embed_at(p, 0, total));
  for (const Permutation& p : b.generators())
    gens.push_back(embed_at(p, a.degree(), total));
  return PermGroup(total, std::move(gens), a.order() * b.order());
}

} // namespace qlocal
