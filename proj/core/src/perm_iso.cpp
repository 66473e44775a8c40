#include "qlocal/perm_iso.hpp"

#include <algorithm>
#include <map>

namespace qlocal {

namespace {

// Per-point invariant: the point's orbit size plus the sorted orbit sizes of
// its stabilizer. Conjugation preserves both, so matching keys are a
// precondition for p -> q.
struct PointKey {
  std::uint64_t orbit_size = 0;
  std::vector<std::uint64_t> stab_orbit_sizes;
  auto operator<=>(const PointKey&) const = default;
};

// Stabilizer refinement priced per point; skip it on very large degrees.
constexpr Point kRefineDegreeCap = 1024;
// The ordered-pair orbit table costs degree^2 cells.
constexpr Point kPairTableDegreeCap = 1500;

std::vector<PointKey> point_keys(const PermGroup& g) {
  const Point n = g.degree();
  std::vector<std::uint64_t> orbit_size(n, 0);
  for (const auto& orb : g.orbits())
    for (Point p : orb) orbit_size[p] = orb.size();

  std::vector<PointKey> keys(n);
  for (Point p = 0; p < n; ++p) {
    keys[p].orbit_size = orbit_size[p];
    if (n <= kRefineDegreeCap) {
      PermGroup stab = pointwise_stabilizer(g, {p});
      for (const auto& orb : stab.orbits())
        keys[p].stab_orbit_sizes.push_back(orb.size());
      std::sort(keys[p].stab_orbit_sizes.begin(),
                keys[p].stab_orbit_sizes.end());
    }
  }
  return keys;
}

// Orbit id per point, ids in order of least point.
std::vector<std::uint32_t> orbit_ids(const PermGroup& g,
                                     std::uint32_t& count) {
  std::vector<std::uint32_t> id(g.degree(), 0);
  std::uint32_t next = 0;
  for (const auto& orb : g.orbits()) {
    for (Point p : orb) id[p] = next;
    ++next;
  }
  count = next;
  return id;
}

// Orbit id of every ordered pair (u,v) under the diagonal action of g,
// flattened as u*n+v. Membership in a common pair orbit is exactly the
// existence of one group element mapping one pair to the other.
std::vector<std::uint32_t> pair_orbit_table(const PermGroup& g) {
  const std::size_t n = g.degree();
  std::vector<std::uint32_t> id(n * n, UINT32_MAX);
  std::vector<std::vector<Point>> gens;
  for (const Permutation& s : g.generators()) gens.push_back(s.images());
  std::uint32_t next = 0;
  std::vector<std::size_t> work;
  for (std::size_t start = 0; start < n * n; ++start) {
    if (id[start] != UINT32_MAX) continue;
    id[start] = next;
    work.assign(1, start);
    while (!work.empty()) {
      std::size_t cell = work.back();
      work.pop_back();
      Point u = static_cast<Point>(cell / n), v = static_cast<Point>(cell % n);
      for (const auto& s : gens) {
        std::size_t target = static_cast<std::size_t>(s[u]) * n + s[v];
        if (id[target] == UINT32_MAX) {
          id[target] = next;
          work.push_back(target);
        }
      }
    }
    ++next;
  }
  return id;
}

struct Searcher {
  Point n = 0;
  const PermGroup* b = nullptr;
  std::vector<std::vector<Point>> gen_img, gen_inv;  // generators of a
  std::vector<std::vector<Point>> candidates;        // per domain point
  std::vector<std::uint32_t> class_of_a;             // key class per point
  std::vector<std::uint64_t> class_size;
  std::vector<std::uint32_t> aorb, borb;
  std::vector<std::int64_t> orbit_map, orbit_rev;    // a-orbit <-> b-orbit
  std::vector<std::uint64_t> orbit_map_count, orbit_rev_count;
  std::vector<std::vector<Point>> neighbours;        // generator adjacency
  std::vector<std::int64_t> lambda;                  // domain point -> image
  std::vector<char> used;
  // Per generator, the image-side pairs (u,v) already forced: the conjugated
  // generator must send u to v.
  std::vector<std::vector<std::pair<Point, Point>>> mu;
  std::vector<std::uint32_t> pair_table;             // of b; may be empty
  std::uint64_t nodes = 0, node_budget = 0;
  bool out_of_budget = false;
  std::vector<Point> found;

  bool pairs_consistent(std::size_t gen, Point u, Point v) const {
    if (pair_table.empty()) return true;
    const std::size_t nn = n;
    for (auto [pu, pv] : mu[gen])
      if (pair_table[pu * nn + u] != pair_table[pv * nn + v]) return false;
    return true;
  }

  Point pick_point() const {
    Point best = n;
    std::tuple<int, std::uint64_t, Point> best_score{2, 0, 0};
    for (Point p = 0; p < n; ++p) {
      if (lambda[p] >= 0) continue;
      int touched = 1;
      for (Point r : neighbours[p])
        if (lambda[r] >= 0) {
          touched = 0;
          break;
        }
      std::tuple<int, std::uint64_t, Point> score{touched,
                                                  class_size[class_of_a[p]], p};
      if (best == n || score < best_score) {
        best = p;
        best_score = score;
      }
    }
    return best;
  }

  bool dfs(Point assigned) {
    if (assigned == n) return leaf();
    Point p = pick_point();
    for (Point q : candidates[p]) {
      if (used[q]) continue;
      ++nodes;
      if (nodes > node_budget) {
        out_of_budget = true;
        return false;
      }
      std::uint32_t oa = aorb[p], ob = borb[q];
      if (orbit_map[oa] >= 0 && orbit_map[oa] != ob) continue;
      if (orbit_rev[ob] >= 0 && orbit_rev[ob] != oa) continue;

      // Collect the image pairs this assignment forces, checking each
      // against the pairs already in place.
      std::vector<std::pair<std::size_t, std::pair<Point, Point>>> added;
      bool ok = true;
      for (std::size_t i = 0; i < gen_img.size() && ok; ++i) {
        Point fwd = gen_img[i][p];
        if (fwd == p) {  // fixed point: the image must be fixed too
          if (!pairs_consistent(i, q, q)) {
            ok = false;
            break;
          }
          mu[i].emplace_back(q, q);
          added.push_back({i, {q, q}});
          continue;
        }
        if (lambda[fwd] >= 0) {
          Point v = static_cast<Point>(lambda[fwd]);
          if (!pairs_consistent(i, q, v)) {
            ok = false;
            break;
          }
          mu[i].emplace_back(q, v);
          added.push_back({i, {q, v}});
        }
        Point bwd = gen_inv[i][p];
        if (lambda[bwd] >= 0) {
          Point u = static_cast<Point>(lambda[bwd]);
          if (!pairs_consistent(i, u, q)) {
            ok = false;
            break;
          }
          mu[i].emplace_back(u, q);
          added.push_back({i, {u, q}});
        }
      }
      if (ok) {
        lambda[p] = q;
        used[q] = 1;
        orbit_map[oa] = ob;
        orbit_rev[ob] = oa;
        ++orbit_map_count[oa];
        ++orbit_rev_count[ob];
        if (dfs(assigned + 1)) return true;
        lambda[p] = -1;
        used[q] = 0;
        if (--orbit_map_count[oa] == 0) orbit_map[oa] = -1;
        if (--orbit_rev_count[ob] == 0) orbit_rev[ob] = -1;
      }
      for (auto it = added.rbegin(); it != added.rend(); ++it)
        mu[it->first].pop_back();
      if (out_of_budget) return false;
    }
    return false;
  }

  bool leaf() {
    std::vector<Point> img(n);
    for (Point p = 0; p < n; ++p) img[p] = static_cast<Point>(lambda[p]);
    Permutation L{img};
    for (const auto& gi : gen_img) {
      Permutation y = Permutation{gi}.conjugated_by(L);
      if (!b->contains(y)) return false;
    }
    found = std::move(img);
    return true;
  }
};

PermIsoCertificate yes_certificate(const PermGroup& a, Permutation bij,
                                   std::uint64_t nodes) {
  PermIsoCertificate cert;
  cert.verdict = IsoVerdict::yes;
  for (const Permutation& x : a.generators())
    cert.generator_images.push_back(x.conjugated_by(bij));
  cert.point_bijection = std::move(bij);
  cert.nodes = nodes;
  return cert;
}

} // namespace

bool PermIsoCertificate::verify(const PermGroup& a, const PermGroup& b) const {
  if (verdict != IsoVerdict::yes) return false;
  if (!point_bijection) return false;
  const Permutation& L = *point_bijection;
  if (L.degree() != a.degree() || a.degree() != b.degree()) return false;
  if (a.order() != b.order()) return false;
  const auto& gens = a.generators();
  if (generator_images.size() != gens.size()) return false;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Permutation& y = generator_images[i];
    if (!b.contains(y)) return false;
    for (Point p = 0; p < a.degree(); ++p)
      if (y[L[p]] != L[gens[i][p]]) return false;
  }
  return true;
}

PermIsoCertificate perm_isomorphic(const PermGroup& a, const PermGroup& b,
                                   const Budget& budget) {
  PermIsoCertificate cert;
  cert.verdict = IsoVerdict::no;
  if (a.degree() != b.degree()) return cert;
  const Point n = a.degree();
  if (a.order() != b.order()) return cert;
  if (a.is_abelian() != b.is_abelian()) return cert;

  // Equal groups get the identity bijection without a search.
  bool equal = true;
  for (const Permutation& x : a.generators())
    if (!b.contains(x)) {
      equal = false;
      break;
    }
  if (equal) {
    std::vector<Point> img(n);
    for (Point p = 0; p < n; ++p) img[p] = p;
    return yes_certificate(a, Permutation{img}, 0);
  }

  std::vector<PointKey> ka = point_keys(a), kb = point_keys(b);
  {
    std::vector<PointKey> sa = ka, sb = kb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return cert;
  }

  Searcher s;
  s.n = n;
  s.b = &b;
  for (const Permutation& x : a.generators()) {
    s.gen_img.push_back(x.images());
    s.gen_inv.push_back(x.inverse().images());
  }
  std::map<PointKey, std::uint32_t> class_ids;
  for (const PointKey& k : ka) class_ids.emplace(k, 0);
  {
    std::uint32_t next = 0;
    for (auto& [k, id] : class_ids) id = next++;
  }
  s.class_of_a.resize(n);
  s.class_size.assign(class_ids.size(), 0);
  s.candidates.assign(n, {});
  for (Point p = 0; p < n; ++p) {
    s.class_of_a[p] = class_ids.at(ka[p]);
    ++s.class_size[s.class_of_a[p]];
    for (Point q = 0; q < n; ++q)
      if (kb[q] == ka[p]) s.candidates[p].push_back(q);
    if (s.candidates[p].empty()) return cert;
  }

  std::uint32_t na = 0, nb = 0;
  s.aorb = orbit_ids(a, na);
  s.borb = orbit_ids(b, nb);
  if (na != nb) return cert;
  s.orbit_map.assign(na, -1);
  s.orbit_rev.assign(nb, -1);
  s.orbit_map_count.assign(na, 0);
  s.orbit_rev_count.assign(nb, 0);

  s.neighbours.assign(n, {});
  for (Point p = 0; p < n; ++p) {
    std::vector<Point> nb_list;
    for (std::size_t i = 0; i < s.gen_img.size(); ++i) {
      nb_list.push_back(s.gen_img[i][p]);
      nb_list.push_back(s.gen_inv[i][p]);
    }
    std::sort(nb_list.begin(), nb_list.end());
    nb_list.erase(std::unique(nb_list.begin(), nb_list.end()), nb_list.end());
    s.neighbours[p] = std::move(nb_list);
  }

  s.lambda.assign(n, -1);
  s.used.assign(n, 0);
  s.mu.assign(s.gen_img.size(), {});
  if (n <= kPairTableDegreeCap) s.pair_table = pair_orbit_table(b);
  s.node_budget = budget.backtrack_nodes;

  bool hit = s.dfs(0);
  if (hit) return yes_certificate(a, Permutation{s.found}, s.nodes);
  cert.nodes = s.nodes;
  cert.verdict = s.out_of_budget ? IsoVerdict::unknown : IsoVerdict::no;
  return cert;
}

} // namespace qlocal
