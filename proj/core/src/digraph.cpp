#include "qlocal/digraph.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace qlocal {

namespace {

std::uint64_t pack(Point u, Point v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

void sort_unique(std::vector<std::pair<Point, Point>>& arcs) {
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
}

// Induced action of sub on a fixed point list; every generator must map the
// set onto itself.
PermGroup restrict_to(const PermGroup& sub, const std::vector<Point>& pts) {
  std::vector<std::int64_t> pos(sub.degree(), -1);
  for (std::size_t i = 0; i < pts.size(); ++i) pos[pts[i]] = static_cast<std::int64_t>(i);
  std::vector<Permutation> gens;
  for (const Permutation& s : sub.generators()) {
    std::vector<Point> img(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      Point t = s[pts[i]];
      if (pos[t] < 0)
        throw Error("local action: stabilizer does not preserve the set");
      img[i] = static_cast<Point>(pos[t]);
    }
    Permutation p{std::move(img)};
    if (!p.is_identity()) gens.push_back(std::move(p));
  }
  return PermGroup(static_cast<Point>(pts.size()), std::move(gens));
}

} // namespace

std::vector<Point> Digraph::out_neighbours(Point v) const {
  std::vector<Point> out;
  for (auto [a, b] : arcs)
    if (a == v) out.push_back(b);
  return out;  // arcs sorted, so ascending already
}

std::vector<Point> Digraph::in_neighbours(Point v) const {
  std::vector<Point> in;
  for (auto [a, b] : arcs)
    if (b == v) in.push_back(a);
  return in;
}

bool Digraph::has_arc(Point u, Point v) const {
  return std::binary_search(arcs.begin(), arcs.end(), std::make_pair(u, v));
}

bool Digraph::verify_invariance() const {
  if (!group) return true;
  for (const Permutation& s : group->generators())
    for (auto [u, v] : arcs)
      if (!has_arc(s[u], s[v])) return false;
  return true;
}

bool Digraph::vertex_transitive() const {
  if (!group) return false;
  return group->degree() == vertex_count && group->is_transitive();
}

bool Digraph::arc_transitive() const {
  if (!group || arcs.empty()) return false;
  std::unordered_set<std::uint64_t> seen{pack(arcs[0].first, arcs[0].second)};
  std::vector<std::pair<Point, Point>> work{arcs[0]};
  while (!work.empty()) {
    auto [u, v] = work.back();
    work.pop_back();
    for (const Permutation& s : group->generators()) {
      Point a = s[u], b = s[v];
      if (seen.insert(pack(a, b)).second) work.emplace_back(a, b);
    }
  }
  return seen.size() == arcs.size();
}

Digraph orbital_digraph(const PermGroup& g, Point u, Point v) {
  if (u == v) throw Error("orbital digraph: loops are excluded");
  if (u >= g.degree() || v >= g.degree())
    throw Error("orbital digraph: vertex out of range");
  if (!g.is_transitive()) throw Error("orbital digraph: group not transitive");

  std::unordered_set<std::uint64_t> seen{pack(u, v)};
  std::vector<std::pair<Point, Point>> work{{u, v}};
  Digraph d;
  d.vertex_count = g.degree();
  d.arcs.emplace_back(u, v);
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    for (const Permutation& s : g.generators()) {
      Point x = s[a], y = s[b];
      if (seen.insert(pack(x, y)).second) {
        work.emplace_back(x, y);
        d.arcs.emplace_back(x, y);
      }
    }
  }
  sort_unique(d.arcs);
  d.group = g;
  return d;
}

LocalActionReport local_action(const Digraph& d, Point v, Direction dir) {
  if (!d.group) throw Error("local action: no group attached");
  if (v >= d.vertex_count) throw Error("local action: vertex out of range");
  LocalActionReport r;
  r.vertex = v;
  r.direction = dir;
  r.neighbours =
      dir == Direction::out ? d.out_neighbours(v) : d.in_neighbours(v);
  if (r.neighbours.empty()) {
    r.induced = PermGroup::trivial(0);
    return r;
  }
  PermGroup stab = pointwise_stabilizer(*d.group, {v});
  r.induced = restrict_to(stab, r.neighbours);
  return r;
}

StrongComponents strongly_connected(const Digraph& d) {
  const Point n = d.vertex_count;
  // Tarjan, iterative.
  std::vector<std::vector<Point>> adj(n);
  for (auto [u, v] : d.arcs) adj[u].push_back(v);

  std::vector<std::int64_t> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<Point> stack;
  StrongComponents out;
  std::int64_t next = 0;

  struct Frame {
    Point v;
    std::size_t child;
  };
  for (Point root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = next++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.child < adj[f.v].size()) {
        Point w = adj[f.v][f.child++];
        if (index[w] < 0) {
          index[w] = low[w] = next++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          std::vector<Point> comp;
          Point w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp.push_back(w);
          } while (w != f.v);
          std::sort(comp.begin(), comp.end());
          out.components.push_back(std::move(comp));
        }
        Point done = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[done]);
      }
    }
  }
  std::sort(out.components.begin(), out.components.end());
  out.strongly_connected = out.components.size() == 1 && n > 0;
  return out;
}

StabilizerSeries stabilizer_series(const Digraph& d) {
  if (!d.group) throw Error("stabilizer series: no group attached");
  if (!strongly_connected(d).strongly_connected)
    throw Error("stabilizer series: digraph not strongly connected");
  if (!d.vertex_transitive() || !d.arc_transitive())
    throw Error("stabilizer series: group not vertex- and arc-transitive");

  const Point n = d.vertex_count;
  std::vector<std::vector<Point>> adj(n);
  for (auto [u, v] : d.arcs) adj[u].push_back(v);

  // Breadth-first ordering from vertex 0, out-neighbours ascending.
  StabilizerSeries s;
  std::vector<char> seen(n, 0);
  s.ordering.push_back(0);
  seen[0] = 1;
  for (std::size_t head = 0; head < s.ordering.size(); ++head)
    for (Point w : adj[s.ordering[head]])
      if (!seen[w]) {
        seen[w] = 1;
        s.ordering.push_back(w);
      }
  if (s.ordering.size() != n)
    throw Error("stabilizer series: ordering failed to cover all vertices");

  s.groups.push_back(pointwise_stabilizer(*d.group, {0}));
  std::vector<Point> fixed;
  for (Point vi : s.ordering) {
    if (s.groups.back().is_trivial()) break;
    fixed.push_back(vi);
    for (Point w : adj[vi]) fixed.push_back(w);
    s.groups.push_back(pointwise_stabilizer(*d.group, fixed));
    const PermGroup& prev = s.groups[s.groups.size() - 2];
    const PermGroup& cur = s.groups.back();
    s.factor_orders.push_back(prev.order() / cur.order());
  }

  s.normality_verified = true;
  for (std::size_t i = 0; i + 1 < s.groups.size(); ++i) {
    const PermGroup& a = s.groups[i];
    const PermGroup& b = s.groups[i + 1];
    if (!subgroup_of(b, a)) s.normality_verified = false;
    for (const Permutation& x : a.generators())
      for (const Permutation& y : b.generators())
        if (!b.contains(y.conjugated_by(x))) s.normality_verified = false;
  }

  // Factor embedding route: the image of groups[i] on the out-neighbourhood
  // of v_{i+1} sits inside the image of the full vertex stabilizer there.
  s.local_containment_verified = true;
  for (std::size_t i = 0; i + 1 < s.groups.size(); ++i) {
    Point vi = s.ordering[i];
    std::vector<Point> nb = d.out_neighbours(vi);
    if (nb.empty()) continue;
    for (const Permutation& x : s.groups[i].generators())
      if (i > 0 && x[vi] != vi) s.local_containment_verified = false;
    PermGroup big = restrict_to(pointwise_stabilizer(*d.group, {vi}), nb);
    PermGroup small = restrict_to(s.groups[i], nb);
    if (!subgroup_of(small, big)) s.local_containment_verified = false;
  }
  return s;
}

std::string digraph_dot(const Digraph& d) {
  std::ostringstream os;
  os << "digraph G {\n";
  for (Point v = 0; v < d.vertex_count; ++v) os << "  " << v << ";\n";
  for (auto [u, v] : d.arcs) os << "  " << u << " -> " << v << ";\n";
  os << "}\n";
  return os.str();
}

std::string digraph_json(const Digraph& d) {
  nlohmann::json j;
  j["vertexCount"] = d.vertex_count;
  auto& arr = j["arcs"] = nlohmann::json::array();
  for (auto [u, v] : d.arcs) arr.push_back({u, v});
  if (d.group) {
    auto& gens = j["generators"] = nlohmann::json::array();
    for (const Permutation& s : d.group->generators())
      gens.push_back(s.cycle_string());
  }
  return j.dump(1);
}

Digraph digraph_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Digraph d;
  d.vertex_count = j.at("vertexCount").get<Point>();
  for (const auto& a : j.at("arcs")) {
    if (!a.is_array() || a.size() != 2)
      throw Error("digraph json: arc must be a pair");
    Point u = a[0].get<Point>(), v = a[1].get<Point>();
    if (u >= d.vertex_count || v >= d.vertex_count)
      throw Error("digraph json: arc endpoint out of range");
    d.arcs.emplace_back(u, v);
  }
  sort_unique(d.arcs);
  if (j.contains("generators")) {
    std::vector<Permutation> gens;
    for (const auto& s : j.at("generators"))
      gens.push_back(
          Permutation::parse_cycles(s.get<std::string>(), d.vertex_count));
    d.group = PermGroup(d.vertex_count, std::move(gens));
    if (!d.verify_invariance())
      throw Error("digraph json: arcs not invariant under the generators");
  }
  return d;
}

} // namespace qlocal
