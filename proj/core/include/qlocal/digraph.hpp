#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlocal/perm_group.hpp"

namespace qlocal {

// Finite digraph on vertices 0..vertex_count-1 with an optional group acting
// on the vertices.  Arcs are kept sorted and duplicate-free; when a group is
// attached the arc set must be closed under it (orbital digraphs are closed
// by construction, imported digraphs can be checked via verify_invariance).
struct Digraph {
  Point vertex_count = 0;
  std::vector<std::pair<Point, Point>> arcs;
  std::optional<PermGroup> group;

  std::vector<Point> out_neighbours(Point v) const;
  std::vector<Point> in_neighbours(Point v) const;
  bool has_arc(Point u, Point v) const;

  bool verify_invariance() const;  // arcs closed under the attached group
  bool vertex_transitive() const;
  bool arc_transitive() const;
};

// Arc set = orbit of (u, v) under g.  g must be transitive and u != v.
Digraph orbital_digraph(const PermGroup& g, Point u, Point v);

enum class Direction { in, out };

// Permutation group induced by the stabilizer of v on its in- or
// out-neighbours (listed ascending; the induced group acts on positions).
struct LocalActionReport {
  Point vertex = 0;
  Direction direction = Direction::out;
  std::vector<Point> neighbours;
  PermGroup induced = PermGroup::trivial(0);
};

LocalActionReport local_action(const Digraph& d, Point v, Direction dir);

struct StrongComponents {
  bool strongly_connected = false;
  std::vector<std::vector<Point>> components;  // each sorted, by least vertex
};

StrongComponents strongly_connected(const Digraph& d);

// The vertex ordering and pointwise-stabilizer chain used to relate vertex
// stabilizers to the out-local action: v_1 = 0, later vertices appear once
// they are an out-neighbour of an earlier one (breadth-first, ascending);
// groups[0] is the stabilizer of v_1 and groups[i] (i >= 1) additionally
// fixes v_1..v_i and all their out-neighbours pointwise.  The list stops at
// the first trivial group.  Every factor embeds into the out-local action;
// normality and that embedding's containment are verified computationally.
struct StabilizerSeries {
  std::vector<Point> ordering;
  std::vector<PermGroup> groups;
  std::vector<mpz_class> factor_orders;  // consecutive index, per step
  bool normality_verified = false;
  bool local_containment_verified = false;
};

StabilizerSeries stabilizer_series(const Digraph& d);

// DOT (directed) and JSON round-trip.  The JSON schema is
// {"vertexCount": n, "arcs": [[u,v],...], "generators": ["(0 1)", ...]} with
// generators optional.
std::string digraph_dot(const Digraph& d);
std::string digraph_json(const Digraph& d);
Digraph digraph_from_json(const std::string& text);

} // namespace qlocal
