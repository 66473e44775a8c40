#include "qlocal/compatibility.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qlocal/numbers.hpp"

namespace qlocal {

namespace {

std::vector<std::uint32_t> sorted_unique(std::vector<std::uint32_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void require_subgroup(const GroupTable& t, const std::vector<std::uint32_t>& ids,
                      const char* what) {
  for (std::uint32_t x : ids)
    if (x >= t.order()) throw Error(std::string(what) + ": element id out of range");
  if (!t.is_subgroup(ids)) throw Error(std::string(what) + ": not a subgroup");
}

std::string id_set_string(const std::set<SimpleGroupId>& s) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& id : s) {
    if (!first) os << ", ";
    os << id.name;
    first = false;
  }
  os << "}";
  return os.str();
}

// Prime divisors of a nonnegative integer; the flag drops when a composite
// cofactor resists the trial bound and primality test.
std::pair<std::vector<mpz_class>, bool> prime_divisors(mpz_class v) {
  std::vector<mpz_class> out;
  if (v <= 1) return {out, true};
  if (v.fits_ulong_p()) {
    for (const auto& [p, e] : factorize(v.get_ui())) out.emplace_back(p);
    return {out, true};
  }
  for (unsigned long d = 2; d <= 1000000; d = (d == 2 ? 3 : d + 2)) {
    if (!mpz_divisible_ui_p(v.get_mpz_t(), d)) continue;
    out.emplace_back(d);
    while (mpz_divisible_ui_p(v.get_mpz_t(), d)) v /= d;
    if (v.fits_ulong_p()) {
      unsigned long rest = v.get_ui();
      if (rest > 1)
        for (const auto& [p, e] : factorize(rest)) out.emplace_back(p);
      return {out, true};
    }
  }
  if (v > 1) {
    if (mpz_probab_prime_p(v.get_mpz_t(), 40) > 0) {
      out.push_back(v);
      return {out, true};
    }
    return {out, false};
  }
  return {out, true};
}

std::string prime_list_string(const std::vector<mpz_class>& ps) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) os << ", ";
    os << ps[i].get_str();
  }
  os << "}";
  return os.str();
}

Permutation doubled_perm(const GroupTable& t, std::uint32_t x) {
  const Permutation r = t.regular_perm(x);
  const Point n = static_cast<Point>(t.order());
  std::vector<Point> img(2 * static_cast<std::size_t>(n));
  for (Point p = 0; p < n; ++p) {
    img[p] = r[p];
    img[n + p] = n + r[p];
  }
  return Permutation(std::move(img));
}

// ---- conjugator search ----------------------------------------------------

struct SearchContext {
  const GroupTable& t;
  Point n = 0;
  const std::vector<std::uint32_t>& a_ids;
  const std::vector<std::uint32_t>& b_ids;
  std::vector<std::uint32_t> u{};  // left transversal of a, identity first
  std::vector<std::uint32_t> w{};  // left transversal of b, identity first
  std::vector<std::uint32_t> phi_vals{};           // parallel to a_ids
  std::vector<std::vector<std::uint32_t>> pt{};    // pt[j][i] = u_j * a_i
  std::vector<Permutation> emb_gens{};             // doubled generators of H
  std::uint32_t k = 0;                             // coset count
  bool a_normal = false;
  bool b_normal = false;
};

SearchContext make_context(const CompatProblem& p) {
  SearchContext cx{p.table, static_cast<Point>(p.table.order()), p.a_ids, p.b_ids};
  cx.u = p.table.left_transversal(p.a_ids);
  cx.w = p.table.left_transversal(p.b_ids);
  cx.k = static_cast<std::uint32_t>(cx.u.size());
  cx.phi_vals.reserve(p.a_ids.size());
  for (std::uint32_t a : p.a_ids) cx.phi_vals.push_back(p.phi.apply(a));
  cx.pt.resize(cx.k);
  for (std::uint32_t j = 0; j < cx.k; ++j) {
    cx.pt[j].reserve(p.a_ids.size());
    for (std::uint32_t a : p.a_ids) cx.pt[j].push_back(p.table.mul(cx.u[j], a));
  }
  for (std::uint32_t gi : p.table.generator_indices())
    cx.emb_gens.push_back(doubled_perm(p.table, gi));
  cx.a_normal = p.table.is_normal(p.a_ids);
  cx.b_normal = p.table.is_normal(p.b_ids);
  return cx;
}

struct ScanOutcome {
  std::uint64_t survivors = 0;
  bool exact = false;
};

// Exhaustive decision of H meet H^g against the embedded right translations:
// h^g lies in H exactly when it agrees pointwise with the translation fixed
// by the image of the two identity points.  Exactness additionally requires
// the surviving set to be a_ids and its conjugate image set to be b_ids.
ScanOutcome scan_candidate(const GroupTable& t,
                           const std::vector<std::uint32_t>& a_ids,
                           const std::vector<std::uint32_t>& b_ids,
                           const std::vector<Point>& g,
                           const std::vector<Point>& ginv) {
  const Point n = static_cast<Point>(t.order());
  auto act = [&](Point p, std::uint32_t h) -> Point {
    return p < n ? static_cast<Point>(t.mul(p, h))
                 : static_cast<Point>(n + t.mul(p - n, h));
  };
  const Point e0 = ginv[0];
  const Point e1 = ginv[n];
  std::vector<std::uint32_t> surv;
  std::vector<std::uint32_t> imgs;
  for (std::uint32_t h = 0; h < n; ++h) {
    const Point z = g[act(e0, h)];
    if (z >= n) continue;
    if (g[act(e1, h)] != n + z) continue;
    bool ok = true;
    for (Point p = 0; p < 2 * n && ok; ++p) {
      const Point want = p < n ? static_cast<Point>(t.mul(p, z))
                               : static_cast<Point>(n + t.mul(p - n, z));
      if (g[act(ginv[p], h)] != want) ok = false;
    }
    if (!ok) continue;
    surv.push_back(h);
    imgs.push_back(z);
  }
  std::sort(imgs.begin(), imgs.end());
  return {surv.size(), surv == a_ids && imgs == b_ids};
}

// Membership in the embedded copy of H: a right translation fixed by the
// image of the first identity point, duplicated across both copies.
bool is_embedded_translation(const GroupTable& t, const std::vector<Point>& x) {
  const Point n = static_cast<Point>(t.order());
  const Point z = x[0];
  if (z >= n || x[n] != n + z) return false;
  for (Point p = 0; p < n; ++p) {
    const Point want = static_cast<Point>(t.mul(p, z));
    if (x[p] != want || x[n + p] != n + want) return false;
  }
  return true;
}

// Walks powers of g until one returns to the embedded subgroup: the first m
// powers landing outside certify the cosets H g^i, i < m, pairwise distinct,
// so m is a lower bound on the subgroup index in <H, g>.  Gives up at cap
// and reports cap + 1.
std::uint64_t coset_power_count(const GroupTable& t, const Permutation& g,
                                std::uint64_t cap) {
  const std::vector<Point>& step = g.images();
  std::vector<Point> cur = step;
  std::vector<Point> next(cur.size());
  for (std::uint64_t m = 1; m <= cap; ++m) {
    if (is_embedded_translation(t, cur)) return m;
    for (std::size_t p = 0; p < cur.size(); ++p) next[p] = cur[step[p]];
    cur.swap(next);
  }
  return cap + 1;
}

// Keeps the best exact candidate.  On small doubled degrees every strategy
// keeps feeding it and the candidate generating the smallest <H, g> wins,
// ties broken by image array among candidates that reach the order
// evaluation; otherwise the first exact candidate ends the search.  Two
// guards keep the minimizing mode affordable: the search stops outright once
// the winner attains floor_order (no smaller generated group exists), and a
// candidate is discarded without evaluation when its power walk already
// certifies more cosets than the winner has room for.
struct Collector {
  const SearchContext& cx;
  bool minimize = false;
  mpz_class floor_order = 0;
  std::uint64_t candidates = 0;
  std::uint64_t best_survivors = std::numeric_limits<std::uint64_t>::max();
  std::optional<Permutation> winner{};
  mpz_class winner_order = 0;
  std::string winner_strategy{};
  std::uint64_t order_evals = 0;
  static constexpr std::uint64_t kMaxOrderEvals = 256;
  static constexpr std::uint64_t kMaxWalk = 4096;

  bool satisfied() const {
    if (!winner) return false;
    return !minimize || winner_order == floor_order;
  }

  void offer(std::vector<Point> img, const char* strategy) {
    ++candidates;
    Permutation g(std::move(img));
    const Permutation gi = g.inverse();
    const ScanOutcome sc =
        scan_candidate(cx.t, cx.a_ids, cx.b_ids, g.images(), gi.images());
    best_survivors = std::min(best_survivors, sc.survivors);
    if (!sc.exact) return;
    if (!minimize) {
      if (!winner) {
        winner = std::move(g);
        winner_strategy = strategy;
      }
      return;
    }
    if (winner) {
      // Walk only when it can conclude: past the cap the certified bound
      // cap * |H| no longer exceeds the winner and the walk proves nothing.
      const mpz_class room = winner_order / cx.n + 1;
      if (room.fits_ulong_p() && room.get_ui() <= kMaxWalk) {
        const std::uint64_t cnt = coset_power_count(cx.t, g, room.get_ui());
        if (mpz_class(static_cast<unsigned long>(cnt)) * cx.n > winner_order)
          return;
      }
    }
    if (order_evals >= kMaxOrderEvals) {
      if (!winner) {
        winner = std::move(g);
        winner_strategy = strategy;
      }
      return;
    }
    ++order_evals;
    std::vector<Permutation> gens = cx.emb_gens;
    gens.push_back(g);
    const mpz_class ord = PermGroup(2 * cx.n, std::move(gens)).order();
    if (!winner || ord < winner_order ||
        (ord == winner_order && g.images() < winner->images())) {
      winner = std::move(g);
      winner_order = ord;
      winner_strategy = strategy;
    }
  }
};

std::vector<Point> build_block(const SearchContext& cx,
                               const std::vector<std::uint32_t>& pi0,
                               const std::vector<std::uint32_t>& off0,
                               const std::vector<std::uint32_t>& pi1,
                               const std::vector<std::uint32_t>& off1) {
  const Point n = cx.n;
  std::vector<Point> img(2 * static_cast<std::size_t>(n));
  for (int c = 0; c < 2; ++c) {
    const auto& pi = c ? pi1 : pi0;
    const auto& off = c ? off1 : off0;
    const Point base = c ? n : 0;
    for (std::uint32_t j = 0; j < cx.k; ++j) {
      std::uint32_t tbase = cx.w[pi[j]];
      if (off[j]) tbase = cx.t.mul(tbase, cx.b_ids[off[j]]);
      const auto& pts = cx.pt[j];
      for (std::size_t i = 0; i < pts.size(); ++i)
        img[base + pts[i]] = base + cx.t.mul(tbase, cx.phi_vals[i]);
    }
  }
  return img;
}

// Both subgroups normal: pair second-copy target cosets so that the rep
// differences w_tau(j) * w_j^-1 are pairwise distinct.  Then a translation
// commuting with the copy-relabeling must translate by an element of b, and
// the intersection collapses to b exactly.
void run_normal_pair(const SearchContext& cx, std::uint64_t seed,
                     const Budget& budget, Collector& col) {
  const std::uint32_t k = cx.k;
  std::vector<std::uint32_t> id_pi(k), zero(k, 0);
  std::iota(id_pi.begin(), id_pi.end(), 0);
  std::uint64_t examined = 0;
  for (std::uint32_t restart = 0; restart < 64; ++restart) {
    if (col.satisfied() || examined >= budget.pairing_samples) return;
    std::vector<std::uint32_t> js = id_pi;
    std::vector<std::uint32_t> pool = id_pi;
    if (restart > 0) {
      std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + restart);
      std::shuffle(js.begin(), js.end(), rng);
      std::shuffle(pool.begin(), pool.end(), rng);
    }
    std::vector<std::uint32_t> tau(k, k);
    std::vector<char> used_i(k, 0);
    std::vector<char> used_d(cx.n, 0);
    bool ok = true;
    for (std::uint32_t j : js) {
      bool found = false;
      for (std::uint32_t i : pool) {
        if (used_i[i]) continue;
        const std::uint32_t d = cx.t.mul(cx.w[i], cx.t.inv(cx.w[j]));
        if (used_d[d]) continue;
        used_i[i] = 1;
        used_d[d] = 1;
        tau[j] = i;
        found = true;
        break;
      }
      if (!found) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    ++examined;
    col.offer(build_block(cx, id_pi, zero, tau, zero), "normal_pair");
  }
}

void run_block_sweep(const SearchContext& cx, std::uint64_t seed,
                     const Budget& budget, Collector& col) {
  const std::uint32_t k = cx.k;
  const std::uint32_t m = static_cast<std::uint32_t>(cx.a_ids.size());
  std::vector<std::uint32_t> id_pi(k), zero(k, 0);
  std::iota(id_pi.begin(), id_pi.end(), 0);

  // Single-copy configuration count k! * m^k, saturated.
  const std::uint64_t cap = budget.pairing_samples + 1;
  std::uint64_t single = 1;
  for (std::uint32_t i = 2; i <= k && single < cap; ++i) single *= i;
  for (std::uint32_t i = 0; i < k && single < cap; ++i) single *= m;
  const bool exhaustive = single < cap && single * single <= budget.pairing_samples;

  std::uint64_t examined = 0;
  if (exhaustive) {
    std::vector<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> confs;
    std::vector<std::uint32_t> pi = id_pi;
    do {
      std::vector<std::uint32_t> off(k, 0);
      while (true) {
        confs.emplace_back(pi, off);
        std::uint32_t d = 0;
        while (d < k && ++off[d] == m) off[d++] = 0;
        if (d == k) break;
      }
    } while (std::next_permutation(pi.begin(), pi.end()));
    for (const auto& c0 : confs) {
      for (const auto& c1 : confs) {
        if (col.satisfied() || examined >= budget.pairing_samples) return;
        ++examined;
        col.offer(build_block(cx, c0.first, c0.second, c1.first, c1.second),
                  "block_sweep");
      }
    }
    return;
  }

  // Deterministic shifted pairings first, then seeded random configurations.
  for (std::uint32_t s = 1; s < k; ++s) {
    if (col.satisfied() || examined >= budget.pairing_samples) return;
    std::vector<std::uint32_t> pi1(k);
    for (std::uint32_t j = 0; j < k; ++j) pi1[j] = (j + s) % k;
    ++examined;
    col.offer(build_block(cx, id_pi, zero, pi1, zero), "block_sweep");
  }
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL ^ 0xB10C5EEDULL);
  std::vector<std::uint32_t> pi0 = id_pi, pi1 = id_pi, off0(k), off1(k);
  while (!col.satisfied() && examined < budget.pairing_samples) {
    std::shuffle(pi0.begin(), pi0.end(), rng);
    std::shuffle(pi1.begin(), pi1.end(), rng);
    for (std::uint32_t j = 0; j < k; ++j) {
      off0[j] = static_cast<std::uint32_t>(rng() % m);
      off1[j] = static_cast<std::uint32_t>(rng() % m);
    }
    ++examined;
    col.offer(build_block(cx, pi0, off0, pi1, off1), "block_sweep");
  }
}

// Coset-slot assignment: the image of one a-coset representative per copy
// determines g on the whole coset, and images may land in either copy.  This
// space is complete for conjugators realizing phi pointwise.
struct SlotBacktrack {
  const SearchContext& cx;
  Collector& col;
  std::uint64_t node_budget;
  std::uint64_t nodes = 0;
  bool out_of_nodes = false;
  std::vector<Point> img{};
  std::vector<char> used{};

  void run() {
    img.assign(2 * static_cast<std::size_t>(cx.n), 0);
    used.assign(2 * static_cast<std::size_t>(cx.k), 0);
    dfs(0);
  }

  void dfs(std::uint32_t s) {
    if (s == 2 * cx.k) {
      col.offer(img, "backtrack");
      return;
    }
    const int c = s < cx.k ? 0 : 1;
    const std::uint32_t j = s < cx.k ? s : s - cx.k;
    const Point base = c ? cx.n : 0;
    const std::uint32_t m = static_cast<std::uint32_t>(cx.a_ids.size());
    for (int tc = 0; tc < 2; ++tc) {
      for (std::uint32_t i = 0; i < cx.k; ++i) {
        if (used[tc * cx.k + i]) continue;
        for (std::uint32_t o = 0; o < m; ++o) {
          if (++nodes > node_budget) {
            out_of_nodes = true;
            return;
          }
          std::uint32_t tbase = cx.w[i];
          if (o) tbase = cx.t.mul(tbase, cx.b_ids[o]);
          const Point tb = tc ? cx.n : 0;
          const auto& pts = cx.pt[j];
          for (std::size_t idx = 0; idx < pts.size(); ++idx)
            img[base + pts[idx]] = tb + cx.t.mul(tbase, cx.phi_vals[idx]);
          used[tc * cx.k + i] = 1;
          dfs(s + 1);
          used[tc * cx.k + i] = 0;
          if (out_of_nodes || col.satisfied()) return;
        }
      }
    }
  }
};

} // namespace

// ---- iso table -------------------------------------------------------------

std::uint32_t IsoTable::apply(std::uint32_t a) const {
  const auto it = std::lower_bound(domain.begin(), domain.end(), a);
  if (it == domain.end() || *it != a)
    throw Error("isomorphism table: element outside domain");
  return map_to[static_cast<std::size_t>(it - domain.begin())];
}

void IsoTable::validate(const GroupTable& t) const {
  if (domain.size() != map_to.size() || domain.size() != image.size())
    throw Error("isomorphism table: size mismatch");
  if (domain.empty()) throw Error("isomorphism table: empty");
  if (!std::is_sorted(domain.begin(), domain.end()) ||
      std::adjacent_find(domain.begin(), domain.end()) != domain.end())
    throw Error("isomorphism table: domain not sorted");
  require_subgroup(t, domain, "isomorphism domain");
  require_subgroup(t, image, "isomorphism image");
  std::vector<std::uint32_t> vals = sorted_unique(map_to);
  if (vals != image) throw Error("isomorphism table: not a bijection onto the image");
  if (apply(0) != 0) throw Error("isomorphism table: identity does not map to identity");

  const std::size_t sz = domain.size();
  auto check_pair = [&](std::size_t i, std::size_t j) {
    const std::uint32_t prod = t.mul(domain[i], domain[j]);
    if (apply(prod) != t.mul(map_to[i], map_to[j]))
      throw Error("isomorphism table: not a homomorphism");
  };
  if (sz <= kMaxTableValidation) {
    for (std::size_t i = 0; i < sz; ++i)
      for (std::size_t j = 0; j < sz; ++j) check_pair(i, j);
    return;
  }
  // Too large for the full pair sweep: every generator pair plus a seeded
  // sample.  Construction paths validate exhaustively by closure.
  const std::vector<std::uint32_t> gens = generating_subset(t, domain);
  std::vector<std::size_t> gpos;
  for (std::uint32_t g : gens)
    gpos.push_back(static_cast<std::size_t>(
        std::lower_bound(domain.begin(), domain.end(), g) - domain.begin()));
  for (std::size_t gi : gpos)
    for (std::size_t j = 0; j < sz; ++j) {
      check_pair(gi, j);
      check_pair(j, gi);
    }
  std::mt19937_64 rng(0x51A55EEDULL);
  for (int it = 0; it < 20000; ++it)
    check_pair(rng() % sz, rng() % sz);
}

IsoTable iso_from_table(const GroupTable& t,
                        const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
  std::map<std::uint32_t, std::uint32_t> m;
  for (const auto& [x, y] : pairs) {
    const auto it = m.find(x);
    if (it != m.end() && it->second != y)
      throw Error("isomorphism table: conflicting images");
    m.emplace(x, y);
  }
  if (m.size() > IsoTable::kMaxTableValidation)
    throw Error("isomorphism table too large; supply generator images");
  IsoTable iso;
  for (const auto& [x, y] : m) {
    iso.domain.push_back(x);
    iso.map_to.push_back(y);
    iso.image.push_back(y);
  }
  iso.image = sorted_unique(iso.image);
  iso.validate(t);
  return iso;
}

IsoTable iso_from_generator_images(const GroupTable& t,
                                   const std::vector<std::uint32_t>& gens,
                                   const std::vector<std::uint32_t>& images) {
  const auto m = extend_homomorphism(t, gens, images);
  if (!m) throw Error("generator images do not extend to a homomorphism");
  IsoTable iso;
  for (const auto& [x, y] : std::map<std::uint32_t, std::uint32_t>(m->begin(), m->end())) {
    iso.domain.push_back(x);
    iso.map_to.push_back(y);
    iso.image.push_back(y);
  }
  iso.image = sorted_unique(iso.image);
  if (iso.image.size() != iso.domain.size())
    throw Error("generator images do not extend injectively");
  iso.validate(t);
  return iso;
}

std::vector<std::uint32_t> generating_subset(const GroupTable& t,
                                             const std::vector<std::uint32_t>& sub) {
  std::vector<std::uint32_t> gens;
  std::vector<std::uint32_t> cl{0};
  for (std::uint32_t x : sub) {
    if (std::binary_search(cl.begin(), cl.end(), x)) continue;
    gens.push_back(x);
    cl = t.closure(gens);
    if (cl.size() == sub.size()) break;
  }
  return gens;
}

PermGroup regular_subgroup(const GroupTable& t, const std::vector<std::uint32_t>& sub) {
  const Point n = static_cast<Point>(t.order());
  const std::vector<std::uint32_t> gens = generating_subset(t, sub);
  if (gens.empty()) return PermGroup::trivial(n);
  return PermGroup(n, t.regular_perms(gens),
                   mpz_class(static_cast<unsigned long>(sub.size())));
}

PermGroup doubled_regular_group(const GroupTable& t) {
  const Point n = static_cast<Point>(t.order());
  std::vector<Permutation> gens;
  for (std::uint32_t gi : t.generator_indices()) gens.push_back(doubled_perm(t, gi));
  return PermGroup(2 * n, std::move(gens), mpz_class(static_cast<unsigned long>(n)));
}

PermGroup doubled_regular_subgroup(const GroupTable& t,
                                   const std::vector<std::uint32_t>& sub) {
  const Point n = static_cast<Point>(t.order());
  const std::vector<std::uint32_t> gens = generating_subset(t, sub);
  if (gens.empty()) return PermGroup::trivial(2 * n);
  std::vector<Permutation> emb;
  for (std::uint32_t g : gens) emb.push_back(doubled_perm(t, g));
  return PermGroup(2 * n, std::move(emb),
                   mpz_class(static_cast<unsigned long>(sub.size())));
}

// ---- problem ---------------------------------------------------------------

CompatProblem make_compat_problem(GroupTable table,
                                  std::vector<std::uint32_t> a_ids,
                                  std::vector<std::uint32_t> b_ids,
                                  IsoTable phi) {
  a_ids = sorted_unique(std::move(a_ids));
  b_ids = sorted_unique(std::move(b_ids));
  require_subgroup(table, a_ids, "subgroup a");
  require_subgroup(table, b_ids, "subgroup b");
  if (a_ids.size() != b_ids.size())
    throw Error("compat problem: subgroups have different orders");
  if (phi.domain != a_ids || phi.image != b_ids)
    throw Error("compat problem: isomorphism endpoints do not match the subgroups");
  phi.validate(table);
  PermGroup h = table.regular_group();
  PermGroup a = regular_subgroup(table, a_ids);
  PermGroup b = regular_subgroup(table, b_ids);
  return CompatProblem{std::move(table), std::move(h), std::move(a_ids),
                       std::move(b_ids), std::move(phi), std::move(a), std::move(b)};
}

// ---- search ----------------------------------------------------------------

HnnSearch find_hnn_element(const CompatProblem& p, HnnStrategy strategy,
                           std::uint64_t seed, const Budget& budget) {
  if (p.phi.domain != p.a_ids || p.phi.image != p.b_ids)
    throw Error("compat problem: isomorphism endpoints do not match the subgroups");
  p.phi.validate(p.table);

  const SearchContext cx = make_context(p);
  Collector col{cx, 2 * static_cast<std::uint64_t>(cx.n) <= 64};
  // Unbeatable order: <H, g> contains H and, whenever a is proper (forcing g
  // outside H), the disjoint double coset HgH of size |H| * [H:a].
  col.floor_order = cx.k == 1 ? mpz_class(cx.n)
                              : mpz_class(cx.n) * (1 + mpz_class(cx.k));
  HnnSearch out;

  const bool auto_mode = strategy == HnnStrategy::automatic;
  if (auto_mode || strategy == HnnStrategy::normal_pair) {
    if (cx.a_normal && cx.b_normal) {
      out.tried.push_back("normal_pair");
      run_normal_pair(cx, seed, budget, col);
    } else if (!auto_mode) {
      out.note = "normal_pair needs both subgroups normal";
    }
  }
  if ((auto_mode && !col.satisfied()) || strategy == HnnStrategy::block_sweep) {
    out.tried.push_back("block_sweep");
    run_block_sweep(cx, seed, budget, col);
  }
  if ((auto_mode && !col.satisfied()) || strategy == HnnStrategy::backtrack) {
    if (cx.n <= 24) {
      out.tried.push_back("backtrack");
      SlotBacktrack bt{cx, col, budget.backtrack_nodes};
      bt.run();
      if (bt.out_of_nodes) out.note += "backtrack node budget exhausted; ";
    } else if (!auto_mode) {
      out.note = "backtrack is gated at group order 24";
    }
  }

  out.g = col.winner;
  out.strategy = col.winner ? col.winner_strategy : "";
  out.candidates = col.candidates;
  out.best_survivors =
      col.best_survivors == std::numeric_limits<std::uint64_t>::max()
          ? 0
          : col.best_survivors;
  if (!col.winner) {
    std::ostringstream os;
    os << "no conjugator found; " << col.candidates
       << " candidates examined, best intersection size " << out.best_survivors;
    if (!out.note.empty()) os << "; " << out.note;
    out.note = os.str();
  }
  return out;
}

// ---- witness ---------------------------------------------------------------

Witness build_witness(const CompatProblem& p, const Budget& budget) {
  const HnnSearch res =
      find_hnn_element(p, HnnStrategy::automatic, budget.seed, budget);
  if (!res.success())
    throw Error("witness search failed: " + res.note);
  return build_witness(p, *res.g, budget);
}

Witness build_witness(const CompatProblem& p, const Permutation& g,
                      const Budget& budget) {
  const Point n = static_cast<Point>(p.table.order());
  if (g.degree() != 2 * n)
    throw Error("witness: conjugator degree must be twice the group order");

  PermGroup emb_h = doubled_regular_group(p.table);
  PermGroup emb_a = doubled_regular_subgroup(p.table, p.a_ids);
  PermGroup emb_b = doubled_regular_subgroup(p.table, p.b_ids);

  WitnessChecks checks;
  const Permutation gi = g.inverse();
  const ScanOutcome sc =
      scan_candidate(p.table, p.a_ids, p.b_ids, g.images(), gi.images());
  checks.survivors = sc.survivors;
  checks.intersection_is_b = sc.exact;
  checks.conjugate_moves_a_to_b = group_equal(conjugate_group(emb_a, g), emb_b);
  checks.degree_doubled = true;
  if (2 * static_cast<std::uint64_t>(n) <= 64) {
    const PermGroup meet = intersection(emb_h, conjugate_group(emb_h, g), budget);
    checks.intersection_cross_checked = group_equal(meet, emb_b);
    if (!checks.intersection_cross_checked)
      throw Error("witness: group-level intersection disagrees with the scan");
  }
  if (!checks.intersection_is_b)
    throw Error("witness: H meet H^g differs from the target subgroup");
  if (!checks.conjugate_moves_a_to_b)
    throw Error("witness: conjugate of the first subgroup is not the second");

  const std::uint64_t idx = p.table.order() / p.a_ids.size();
  const bool a_normal = p.table.is_normal(p.a_ids);
  const bool b_normal = p.table.is_normal(p.b_ids);
  CosetAction ca = coset_action(p.h, p.a, idx, a_normal ? &p.a : nullptr, budget);
  CosetAction cb = coset_action(p.h, p.b, idx, b_normal ? &p.b : nullptr, budget);
  checks.local_minus_order = ca.action.image.order();
  checks.local_plus_order = cb.action.image.order();
  checks.local_minus_degree = ca.action.image.degree();
  checks.local_plus_degree = cb.action.image.degree();

  std::vector<Permutation> big_gens = emb_h.generators();
  big_gens.push_back(g);
  PermGroup big(2 * n, std::move(big_gens));

  return Witness{p,
                 g,
                 std::move(emb_h),
                 std::move(big),
                 std::move(ca.action.image),
                 std::move(cb.action.image),
                 std::move(ca.action.kernel),
                 std::move(cb.action.kernel),
                 std::move(checks)};
}

std::string witness_json(const Witness& w) {
  nlohmann::json j;
  j["groupOrder"] = w.problem.table.order();
  j["subgroupOrder"] = w.problem.a_ids.size();
  j["g"] = w.g.cycle_string();
  j["bigGroupDegree"] = w.big_group.degree();
  nlohmann::json c;
  c["conjugateMovesAToB"] = w.checks.conjugate_moves_a_to_b;
  c["intersectionIsB"] = w.checks.intersection_is_b;
  c["intersectionCrossChecked"] = w.checks.intersection_cross_checked;
  c["survivors"] = w.checks.survivors;
  c["degreeDoubled"] = w.checks.degree_doubled;
  c["localMinusOrder"] = w.checks.local_minus_order.get_str();
  c["localPlusOrder"] = w.checks.local_plus_order.get_str();
  c["localMinusDegree"] = w.checks.local_minus_degree;
  c["localPlusDegree"] = w.checks.local_plus_degree;
  j["checks"] = c;
  return j.dump(1);
}

WitnessDigraph witness_digraph(const Witness& w, std::uint64_t max_index,
                               const Budget& budget) {
  WitnessDigraph out;
  if (w.h_embedded.contains(w.g)) {
    out.degenerate = true;
    return out;
  }
  CosetAction ca = coset_action(w.big_group, w.h_embedded, max_index, nullptr, budget);
  const auto vg = ca.space.coset_of(w.g);
  if (!vg) throw Error("witness digraph: conjugator escaped the coset range");
  out.gamma = orbital_digraph(ca.action.image, 0, *vg);
  out.out_local = local_action(out.gamma, 0, Direction::out);
  out.in_local = local_action(out.gamma, 0, Direction::in);
  out.out_cert = perm_isomorphic(out.out_local.induced, w.local_plus, budget);
  out.in_cert = perm_isomorphic(out.in_local.induced, w.local_minus, budget);
  return out;
}

// ---- necessary battery -----------------------------------------------------

bool NecessaryReport::all_pass() const {
  return degree_equal.pass && orbit_count_equal.pass && sections_equal.pass &&
         primes_equal.pass && soluble_agree.pass && common_simple_quotient.pass;
}

bool NecessaryReport::incompatibility_certified() const {
  for (const CompatVerdict* v :
       {&degree_equal, &orbit_count_equal, &sections_equal, &primes_equal,
        &soluble_agree, &common_simple_quotient})
    if (v->applicable && v->complete && !v->pass) return true;
  return false;
}

bool NecessaryReport::complete() const {
  return degree_equal.complete && orbit_count_equal.complete &&
         sections_equal.complete && primes_equal.complete &&
         soluble_agree.complete && common_simple_quotient.complete;
}

std::string NecessaryReport::summary() const {
  auto line = [](const char* name, const CompatVerdict& v) {
    std::string s = std::string(name) + ": " + v.evidence + " -> ";
    if (!v.applicable)
      s += "not applicable";
    else
      s += v.pass ? "pass" : "fail";
    if (!v.complete) s += " (incomplete)";
    return s + "\n";
  };
  return line("degree", degree_equal) + line("orbit count", orbit_count_equal) +
         line("simple sections", sections_equal) + line("primes", primes_equal) +
         line("solubility", soluble_agree) +
         line("common simple quotient", common_simple_quotient);
}

NecessaryReport necessary_compat_check(const PermGroup& l_minus,
                                       const PermGroup& l_plus,
                                       const Budget& budget) {
  NecessaryReport r;
  std::ostringstream os;

  os << l_minus.degree() << " vs " << l_plus.degree();
  r.degree_equal.evidence = os.str();
  r.degree_equal.pass = l_minus.degree() == l_plus.degree();

  const std::size_t om = l_minus.orbits().size();
  const std::size_t op = l_plus.orbits().size();
  os.str("");
  os << om << " vs " << op;
  r.orbit_count_equal.evidence = os.str();
  r.orbit_count_equal.pass = om == op;

  const SectionSet sm = simple_sections(l_minus, budget);
  const SectionSet sp = simple_sections(l_plus, budget);
  r.sections_equal.evidence = id_set_string(sm.ids) + " vs " + id_set_string(sp.ids);
  r.sections_equal.complete = sm.complete && sp.complete;
  if (r.sections_equal.complete)
    r.sections_equal.pass = sm.ids == sp.ids;
  else
    r.sections_equal.pass = true;

  const mpz_class ord_m = l_minus.order();
  const mpz_class ord_p = l_plus.order();
  const auto [pm, pm_complete] = prime_divisors(ord_m);
  const auto [pp, pp_complete] = prime_divisors(ord_p);
  r.primes_equal.evidence = prime_list_string(pm) + " vs " + prime_list_string(pp);
  r.primes_equal.complete = pm_complete && pp_complete;
  r.primes_equal.pass = true;
  for (const mpz_class& q : pm)
    if (!mpz_divisible_p(ord_p.get_mpz_t(), q.get_mpz_t())) r.primes_equal.pass = false;
  for (const mpz_class& q : pp)
    if (!mpz_divisible_p(ord_m.get_mpz_t(), q.get_mpz_t())) r.primes_equal.pass = false;

  const bool sol_m = is_soluble(l_minus);
  const bool sol_p = is_soluble(l_plus);
  os.str("");
  os << (sol_m ? "soluble" : "insoluble") << " vs " << (sol_p ? "soluble" : "insoluble");
  r.soluble_agree.evidence = os.str();
  r.soluble_agree.pass = sol_m == sol_p;

  const bool applicable = l_minus.is_transitive() && l_plus.is_transitive() &&
                          ord_m > 1 && ord_p > 1;
  r.common_simple_quotient.applicable = applicable;
  if (!applicable) {
    r.common_simple_quotient.evidence = "needs both transitive and nontrivial";
  } else {
    const SimpleQuotients qm = simple_quotients(l_minus, budget);
    const SimpleQuotients qp = simple_quotients(l_plus, budget);
    std::set<SimpleGroupId> common;
    for (const auto& id : qm.ids)
      if (qp.ids.count(id)) common.insert(id);
    r.common_simple_quotient.evidence =
        id_set_string(qm.ids) + " vs " + id_set_string(qp.ids);
    if (!common.empty()) {
      r.common_simple_quotient.pass = true;
      r.common_simple_quotient.evidence += "; common " + id_set_string(common);
    } else if (qm.complete && qp.complete) {
      r.common_simple_quotient.pass = false;
    } else {
      r.common_simple_quotient.pass = true;
      r.common_simple_quotient.complete = false;
      r.common_simple_quotient.evidence += "; indeterminate";
    }
  }
  return r;
}

// ---- regular pairs and series ----------------------------------------------

Witness regular_pair_witness(const GroupTable& h,
                             const std::vector<std::uint32_t>& a_ids,
                             const std::vector<std::uint32_t>& b_ids,
                             const IsoTable& phi, const Budget& budget) {
  if (!h.is_normal(a_ids) || !h.is_normal(b_ids))
    throw Error("regular pair: both subgroups must be normal");
  CompatProblem p = make_compat_problem(h, a_ids, b_ids, phi);
  Witness w = build_witness(p, budget);
  const std::uint64_t idx = h.order() / a_ids.size();
  if (w.local_minus.order() != idx || w.local_plus.order() != idx)
    throw Error("regular pair: coset image is not regular");
  if (!group_equal(w.kernel_minus, w.problem.a) ||
      !group_equal(w.kernel_plus, w.problem.b))
    throw Error("regular pair: coset kernel is not the stabilized subgroup");
  return w;
}

SeriesWitness subnormal_series_witness(const GroupTable& l,
                                       const std::vector<std::vector<std::uint32_t>>& series,
                                       const Budget& budget) {
  if (series.empty()) throw Error("series: empty");
  std::vector<std::vector<std::uint32_t>> chain;
  for (const auto& raw : series) {
    std::vector<std::uint32_t> ids = sorted_unique(raw);
    require_subgroup(l, ids, "series member");
    if (ids.size() == 1 && chain.empty()) continue;  // leading trivial member
    chain.push_back(std::move(ids));
  }
  if (chain.empty()) chain.push_back({0});
  if (chain.back().size() != l.order())
    throw Error("series: last member must be the whole group");
  const std::size_t n = chain.size();

  // Normality of each member in the next, decided on generating subsets
  // closed under inversion.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!std::includes(chain[i + 1].begin(), chain[i + 1].end(),
                       chain[i].begin(), chain[i].end()))
      throw Error("series: members must be ascending");
    std::vector<std::uint32_t> outer = generating_subset(l, chain[i + 1]);
    const std::size_t osz = outer.size();
    for (std::size_t t = 0; t < osz; ++t) outer.push_back(l.inv(outer[t]));
    for (std::uint32_t s : generating_subset(l, chain[i]))
      for (std::uint32_t x : outer)
        if (!std::binary_search(chain[i].begin(), chain[i].end(), l.conj(s, x)))
          throw Error("series: member is not normal in its successor");
  }

  // Chain members as permutation groups on the original points.
  const Point d = l.degree();
  std::vector<PermGroup> xg;
  for (const auto& ids : chain) {
    const std::vector<std::uint32_t> gens = generating_subset(l, ids);
    if (gens.empty()) {
      xg.push_back(PermGroup::trivial(d));
      continue;
    }
    std::vector<Permutation> perms;
    for (std::uint32_t g : gens) perms.push_back(l.element(g));
    xg.emplace_back(d, std::move(perms),
                    mpz_class(static_cast<unsigned long>(ids.size())));
  }

  // Predicted factor product, multiset and order.
  CompositionMultiset factor_multiset;
  mpz_class factor_order = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || chain[i - 1].size() == 1) {
      factor_multiset.add(composition_multiset(xg[i], budget));
      factor_order *= mpz_class(static_cast<unsigned long>(chain[i].size()));
      continue;
    }
    const std::uint64_t fidx = chain[i].size() / chain[i - 1].size();
    CosetAction q = coset_action(xg[i], xg[i - 1], fidx, &xg[i - 1], budget);
    factor_multiset.add(composition_multiset(q.action.image, budget));
    factor_order *= q.action.image.order();
  }

  // H = X_1 x ... x X_n on n disjoint copies of the points.
  PermGroup dp = xg[0];
  for (std::size_t i = 1; i < n; ++i) dp = direct_product(dp, xg[i]);
  GroupTable ht = GroupTable::from_group(dp);
  mpz_class expect = 1;
  for (const auto& ids : chain) expect *= mpz_class(static_cast<unsigned long>(ids.size()));
  if (mpz_class(static_cast<unsigned long>(ht.order())) != expect)
    throw Error("series: direct product order mismatch");

  // Classify elements of H and build the shift isomorphism.
  auto block_of = [&](const Permutation& p, std::size_t k) {
    std::vector<Point> img(d);
    for (Point q = 0; q < d; ++q)
      img[q] = p[static_cast<Point>(k * d) + q] - static_cast<Point>(k * d);
    return Permutation(std::move(img));
  };
  std::vector<std::uint32_t> minus_ids, plus_ids;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> phi_pairs;
  for (std::uint32_t e = 0; e < ht.order(); ++e) {
    const Permutation& p = ht.element(e);
    if (block_of(p, n - 1).is_identity()) {
      minus_ids.push_back(e);
      std::vector<Point> shifted(static_cast<std::size_t>(n) * d);
      for (Point q = 0; q < d; ++q) shifted[q] = q;
      for (std::size_t k = 1; k < n; ++k) {
        const Permutation b = block_of(p, k - 1);
        for (Point q = 0; q < d; ++q)
          shifted[k * d + q] = static_cast<Point>(k * d) + b[q];
      }
      phi_pairs.emplace_back(e, ht.index_of(Permutation(std::move(shifted))));
    }
    bool in_plus = block_of(p, 0).is_identity();
    for (std::size_t k = 1; k < n && in_plus; ++k) {
      const std::uint32_t lid = l.index_of(block_of(p, k));
      if (!std::binary_search(chain[k - 1].begin(), chain[k - 1].end(), lid))
        in_plus = false;
    }
    if (in_plus) plus_ids.push_back(e);
  }

  IsoTable phi;
  if (minus_ids.size() <= IsoTable::kMaxTableValidation) {
    phi = iso_from_table(ht, phi_pairs);
  } else {
    std::map<std::uint32_t, std::uint32_t> pm(phi_pairs.begin(), phi_pairs.end());
    std::vector<std::uint32_t> gens = generating_subset(ht, minus_ids);
    std::vector<std::uint32_t> images;
    for (std::uint32_t g : gens) images.push_back(pm.at(g));
    phi = iso_from_generator_images(ht, gens, images);
  }

  CompatProblem problem =
      make_compat_problem(std::move(ht), minus_ids, plus_ids, std::move(phi));

  const std::uint64_t n_h = problem.table.order();
  CosetAction qm = coset_action(problem.h, problem.a, n_h / problem.a_ids.size(),
                                &problem.a, budget);
  CosetAction qp = coset_action(problem.h, problem.b, n_h / problem.b_ids.size(),
                                &problem.b, budget);

  const mpz_class l_order(static_cast<unsigned long>(l.order()));
  const bool order_ok = qm.action.image.order() == l_order &&
                        qp.action.image.order() == factor_order;
  const bool multiset_ok =
      composition_multiset(qm.action.image, budget) ==
          composition_multiset(xg[n - 1], budget) &&
      composition_multiset(qp.action.image, budget) == factor_multiset;
  return SeriesWitness{std::move(problem),
                       std::move(factor_multiset),
                       std::move(factor_order),
                       std::move(qm.action.image),
                       std::move(qp.action.image),
                       order_ok,
                       multiset_ok};
}

// ---- json ------------------------------------------------------------------

namespace {

std::uint32_t parse_element(const nlohmann::json& v, const GroupTable& t,
                            const std::vector<std::uint32_t>* remap) {
  if (v.is_number_integer()) {
    const std::int64_t x = v.get<std::int64_t>();
    if (x < 0 || static_cast<std::uint64_t>(x) >= t.order())
      throw Error("compat problem: element id out of range");
    return remap ? (*remap)[static_cast<std::size_t>(x)]
                 : static_cast<std::uint32_t>(x);
  }
  if (v.is_string())
    return t.index_of(Permutation::parse_cycles(v.get<std::string>(), t.degree()));
  throw Error("compat problem: elements must be ids or cycle strings");
}

} // namespace

CompatProblem compat_problem_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("compat problem: ") + e.what());
  }
  if (!j.is_object() || !j.contains("group") || !j.contains("subgroupA") ||
      !j.contains("subgroupB") || !j.contains("phi"))
    throw Error("compat problem: need group, subgroupA, subgroupB, phi");

  GroupTable t = [&] {
    const nlohmann::json& g = j["group"];
    if (g.is_object() && g.contains("table")) {
      const auto& rows = g["table"];
      if (!rows.is_array() || rows.empty())
        throw Error("compat problem: table must be a nonempty square matrix");
      const std::size_t m = rows.size();
      std::vector<std::vector<std::int64_t>> mt(m);
      for (std::size_t i = 0; i < m; ++i) {
        if (!rows[i].is_array() || rows[i].size() != m)
          throw Error("compat problem: table must be square");
        for (const auto& cell : rows[i]) mt[i].push_back(cell.get<std::int64_t>());
      }
      std::vector<Permutation> cols;
      for (std::size_t x = 0; x < m; ++x) {
        std::vector<std::int64_t> col(m);
        for (std::size_t i = 0; i < m; ++i) col[i] = mt[i][x];
        cols.push_back(Permutation::from_images(col));
      }
      return GroupTable::from_elements(std::move(cols));
    }
    if (g.is_object() && g.contains("generators") && g.contains("degree")) {
      const Point deg = g["degree"].get<Point>();
      std::vector<Permutation> gens;
      for (const auto& s : g["generators"])
        gens.push_back(Permutation::parse_cycles(s.get<std::string>(), deg));
      return GroupTable::from_group(PermGroup(deg, std::move(gens)));
    }
    throw Error("compat problem: group needs a table or generators with degree");
  }();

  // Table input is re-sorted internally; ids in the file refer to row order.
  std::optional<std::vector<std::uint32_t>> remap;
  if (j["group"].contains("table")) {
    const auto& rows = j["group"]["table"];
    const std::size_t m = rows.size();
    remap.emplace(m);
    for (std::size_t x = 0; x < m; ++x) {
      std::vector<std::int64_t> col(m);
      for (std::size_t i = 0; i < m; ++i) col[i] = rows[i][x].get<std::int64_t>();
      (*remap)[x] = t.index_of(Permutation::from_images(col));
    }
  }
  const std::vector<std::uint32_t>* rm = remap ? &*remap : nullptr;

  // Listed elements generate the subgroup; a closed list stays as it is.
  auto parse_list = [&](const char* key) {
    std::vector<std::uint32_t> out;
    for (const auto& v : j[key]) out.push_back(parse_element(v, t, rm));
    return t.closure(out);
  };
  const std::vector<std::uint32_t> a = parse_list("subgroupA");
  const std::vector<std::uint32_t> b = parse_list("subgroupB");

  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (const auto& pr : j["phi"]) {
    if (!pr.is_array() || pr.size() != 2)
      throw Error("compat problem: phi must be a list of pairs");
    pairs.emplace_back(parse_element(pr[0], t, rm), parse_element(pr[1], t, rm));
  }
  std::vector<std::uint32_t> firsts;
  for (const auto& [x, y] : pairs) firsts.push_back(x);
  firsts = sorted_unique(std::move(firsts));

  IsoTable phi;
  if (firsts == a) {
    phi = iso_from_table(t, pairs);
  } else {
    std::vector<std::uint32_t> gs, is;
    for (const auto& [x, y] : pairs) {
      gs.push_back(x);
      is.push_back(y);
    }
    phi = iso_from_generator_images(t, gs, is);
  }
  return make_compat_problem(std::move(t), a, b, std::move(phi));
}

std::string compat_problem_to_json(const CompatProblem& p) {
  nlohmann::json j;
  nlohmann::json group;
  group["degree"] = p.table.degree();
  nlohmann::json gens = nlohmann::json::array();
  for (std::uint32_t gi : p.table.generator_indices())
    gens.push_back(p.table.element(gi).cycle_string());
  group["generators"] = gens;
  j["group"] = group;
  j["subgroupA"] = p.a_ids;
  j["subgroupB"] = p.b_ids;
  nlohmann::json pairs = nlohmann::json::array();
  for (std::size_t i = 0; i < p.phi.domain.size(); ++i)
    pairs.push_back({p.phi.domain[i], p.phi.map_to[i]});
  j["phi"] = pairs;
  return j.dump(1);
}

} // namespace qlocal
