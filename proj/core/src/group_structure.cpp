#include "qlocal/group_structure.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>
#include <unordered_map>

#include "qlocal/actions.hpp"
#include "qlocal/numbers.hpp"

namespace qlocal {

namespace {

bool normal_in(const PermGroup& g, const PermGroup& h) {
  for (const Permutation& x : g.generators())
    for (const Permutation& y : h.generators())
      if (!h.contains(y.conjugated_by(x))) return false;
  return true;
}

// Exhaustive strategies enumerate elements; this is the shared gate.
bool enumerable(const PermGroup& g, const Budget& budget) {
  mpz_class cap = std::min<std::uint64_t>(1'000'000, budget.enumeration_order);
  if (g.order() > cap) return false;
  mpz_class cells = g.order() * g.degree();
  return cells <= mpz_class(budget.enumeration_cells);
}

// One representative per conjugacy class, identity excluded.
std::vector<Permutation> class_representatives(const PermGroup& g,
                                               const Budget& budget) {
  std::vector<Permutation> elems = group_elements(g, budget);
  std::unordered_map<Permutation, std::size_t> index;
  index.reserve(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);

  std::vector<char> visited(elems.size(), 0);
  std::vector<Permutation> reps;
  std::vector<std::size_t> work;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (visited[i]) continue;
    visited[i] = 1;
    if (!elems[i].is_identity()) reps.push_back(elems[i]);
    work.assign(1, i);
    while (!work.empty()) {
      std::size_t cur = work.back();
      work.pop_back();
      for (const Permutation& s : g.generators()) {
        std::size_t j = index.at(elems[cur].conjugated_by(s));
        if (!visited[j]) {
          visited[j] = 1;
          work.push_back(j);
        }
      }
    }
  }
  return reps;
}

// Keeps one group per distinct element set, then drops every group that
// properly contains another.
std::vector<PermGroup> minimal_distinct(std::vector<PermGroup> cands) {
  std::vector<PermGroup> distinct;
  for (PermGroup& c : cands) {
    bool fresh = true;
    for (const PermGroup& d : distinct)
      if (d.order() == c.order() && subgroup_of(c, d)) {
        fresh = false;
        break;
      }
    if (fresh) distinct.push_back(std::move(c));
  }
  std::vector<PermGroup> out;
  for (const PermGroup& c : distinct) {
    bool minimal = true;
    for (const PermGroup& d : distinct)
      if (d.order() < c.order() && subgroup_of(d, c)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(c);
  }
  return out;
}

SimpleGroupId identify_simple_unchecked(const PermGroup& g,
                                        const Budget& budget) {
  const mpz_class& order = g.order();
  if (!order.fits_ulong_p())
    throw Error("identify simple: order exceeds the table range");
  std::uint64_t n = order.get_ui();
  if (is_prime(n)) return cyclic_id(n);

  auto rows = SimpleOrderTable::instance().rows_of_order(n);
  if (rows.empty())
    throw Error("identify simple: no simple group of order " +
                order.get_str());
  if (rows.size() == 1) return rows[0]->group_id();

  // Order collision (A8 vs PSL(3,4) in the shipped table): decide by the
  // exact element-order spectrum.
  if (!enumerable(g, budget))
    throw BudgetExceeded("identify simple: order collision beyond budget");
  std::set<std::uint64_t> spectrum;
  for (const Permutation& x : group_elements(g, budget))
    spectrum.insert(x.element_order());
  std::vector<std::uint64_t> observed(spectrum.begin(), spectrum.end());
  const SimpleRow* hit = nullptr;
  for (const SimpleRow* r : rows)
    if (r->spectrum == observed) {
      if (hit) throw Error("identify simple: spectrum does not discriminate");
      hit = r;
    }
  if (!hit) throw Error("identify simple: no table row matches the spectrum");
  return hit->group_id();
}

bool verified_simple(const PermGroup& g, const Budget& budget) {
  if (g.order() == 1) return false;
  if (g.order().fits_ulong_p() && is_prime(g.order().get_ui())) return true;
  if (enumerable(g, budget)) {
    MinimalNormals mn = minimal_normal_subgroups(g, budget);
    return mn.subgroups.size() == 1 &&
           mn.subgroups[0].subgroup.order() == g.order();
  }
  // Sampled check: every nontrivial closure must fill the group.
  std::mt19937_64 rng(budget.seed);
  for (std::uint64_t i = 0; i < budget.sample_words; ++i) {
    Permutation y = random_element(g, rng);
    if (y.is_identity()) continue;
    if (normal_closure(g, {y}).order() != g.order()) return false;
  }
  return true;
}

// Minimal normal subgroups whose coset space fits the index budget, largest
// order first; the order among equals is the discovery order.
std::vector<const PermGroup*> feasible_normals(const MinimalNormals& mn,
                                               const PermGroup& g,
                                               const Budget& budget) {
  std::vector<const PermGroup*> feas;
  for (const NormalWitness& w : mn.subgroups)
    if (g.order() / w.subgroup.order() <= budget.max_index)
      feas.push_back(&w.subgroup);
  std::stable_sort(feas.begin(), feas.end(),
                   [](const PermGroup* a, const PermGroup* b) {
                     return a->order() > b->order();
                   });
  return feas;
}

void composition_rec(const PermGroup& g, const Budget& budget,
                     CompositionMultiset& out) {
  if (g.order() == 1) return;
  MinimalNormals mn = minimal_normal_subgroups(g, budget);
  if (!mn.complete)
    throw BudgetExceeded("composition multiset: normal scan incomplete");
  if (mn.subgroups.size() == 1 &&
      mn.subgroups[0].subgroup.order() == g.order()) {
    out.add(identify_simple_unchecked(g, budget));
    return;
  }
  std::vector<const PermGroup*> feas = feasible_normals(mn, g, budget);
  if (feas.empty())
    throw BudgetExceeded("composition multiset: no quotient fits the index");
  const PermGroup& n = *feas[budget.seed % feas.size()];
  composition_rec(n, budget, out);
  CosetAction ca = coset_action(g, n, budget.max_index, &n, budget);
  composition_rec(ca.action.image, budget, out);
}

SimpleGroupId section_id(const std::string& name) {
  if (name.size() > 1 && name[0] == 'C') {
    bool digits = true;
    for (std::size_t i = 1; i < name.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) {
        digits = false;
        break;
      }
    if (digits) return cyclic_id(std::stoull(name.substr(1)));
  }
  const SimpleRow* row = SimpleOrderTable::instance().row_named(name);
  if (!row) throw Error("section set: unknown id " + name);
  return row->group_id();
}

// Centralizer of m in g, via the pointwise stabilizer of the conjugation
// action on m's elements attached as extra points.
PermGroup centralizer_of_normal(const PermGroup& g, const PermGroup& m,
                                const Budget& budget) {
  std::vector<Permutation> elems = group_elements(m, budget);
  std::unordered_map<Permutation, Point> index;
  for (std::size_t i = 0; i < elems.size(); ++i)
    index.emplace(elems[i], static_cast<Point>(i));

  const Point n = g.degree();
  const Point total = n + static_cast<Point>(elems.size());
  std::vector<Permutation> combined;
  for (const Permutation& s : g.generators()) {
    std::vector<Point> img(total);
    for (Point p = 0; p < n; ++p) img[p] = s[p];
    for (std::size_t i = 0; i < elems.size(); ++i)
      img[n + i] = n + index.at(elems[i].conjugated_by(s));
    combined.emplace_back(std::move(img));
  }
  std::vector<Point> block(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i)
    block[i] = n + static_cast<Point>(i);
  PermGroup fix = pointwise_stabilizer(PermGroup(total, std::move(combined)),
                                       block);
  std::vector<Permutation> gens;
  for (const Permutation& s : fix.generators()) {
    std::vector<Point> img(s.images().begin(), s.images().begin() + n);
    Permutation p{std::move(img)};
    if (!p.is_identity()) gens.push_back(std::move(p));
  }
  return PermGroup(n, std::move(gens));
}

void simple_quotients_rec(const PermGroup& g, const Budget& budget,
                          SimpleQuotients& out) {
  if (g.order() == 1) return;

  // Abelian quotients: one C_p per prime dividing the abelianisation.
  PermGroup der = derived_subgroup(g);
  mpz_class ab = g.order() / der.order();
  if (ab > 1) {
    if (!ab.fits_ulong_p())
      throw Error("simple quotients: abelianisation too large to factor");
    for (auto [p, e] : factorize(ab.get_ui())) out.ids.insert(cyclic_id(p));
  }

  MinimalNormals mn = minimal_normal_subgroups(g, budget);
  if (!mn.complete) {
    out.complete = false;
    return;
  }
  if (mn.subgroups.size() == 1 &&
      mn.subgroups[0].subgroup.order() == g.order()) {
    out.ids.insert(identify_simple_unchecked(g, budget));
    return;
  }

  std::vector<const PermGroup*> feas = feasible_normals(mn, g, budget);
  if (feas.empty()) {
    out.complete = false;
    return;
  }
  const PermGroup& m = *feas.front();

  // A maximal normal subgroup avoiding m complements it, and then it equals
  // the centralizer of m; the quotient is m itself, so m must be simple.
  bool m_abelian = m.is_abelian();
  if (!m_abelian && verified_simple(m, budget)) {
    if (!enumerable(m, budget)) {
      out.complete = false;
    } else {
      PermGroup cent = centralizer_of_normal(g, m, budget);
      if (cent.order() * m.order() == g.order())
        out.ids.insert(identify_simple_unchecked(m, budget));
    }
  }

  CosetAction ca = coset_action(g, m, budget.max_index, &m, budget);
  simple_quotients_rec(ca.action.image, budget, out);
}

} // namespace

PermGroup core_subgroup(const PermGroup& g, const PermGroup& h,
                        const Budget& budget) {
  if (!subgroup_of(h, g)) throw Error("core: not a subgroup");
  if (normal_in(g, h)) return h;
  return coset_action(g, h, budget.max_index, nullptr, budget).action.kernel;
}

bool NormalWitness::verify(const PermGroup& g) const {
  if (subgroup.degree() != g.degree()) return false;
  for (const Permutation& y : subgroup.generators())
    if (!g.contains(y)) return false;
  return normal_in(g, subgroup);
}

MinimalNormals minimal_normal_subgroups(const PermGroup& g,
                                        const Budget& budget) {
  if (g.order() <= 1)
    throw Error("minimal normal subgroups: group is trivial");

  MinimalNormals out;
  std::vector<PermGroup> cands;
  if (enumerable(g, budget)) {
    for (const Permutation& rep : class_representatives(g, budget))
      cands.push_back(normal_closure(g, {rep}));
    out.complete = true;
  } else {
    std::mt19937_64 rng(budget.seed);
    for (std::uint64_t t = 0; t < budget.sample_words; ++t) {
      Permutation y = random_element(g, rng);
      if (y.is_identity()) continue;
      PermGroup n = normal_closure(g, {y});
      bool improved = true;
      while (improved) {
        improved = false;
        for (int tries = 0; tries < 16; ++tries) {
          Permutation z = random_element(n, rng);
          if (z.is_identity()) continue;
          PermGroup smaller = normal_closure(g, {z});
          if (smaller.order() < n.order()) {
            n = std::move(smaller);
            improved = true;
            break;
          }
        }
      }
      cands.push_back(std::move(n));
    }
    out.complete = false;
  }

  std::mt19937_64 rng(budget.seed + 1);
  for (PermGroup& n : minimal_distinct(std::move(cands))) {
    std::vector<Permutation> evidence;
    for (int draws = 0; draws < 24 && evidence.size() < 8; ++draws) {
      Permutation y = random_element(n, rng);
      if (y.is_identity()) continue;
      bool dup = false;
      for (const Permutation& seen : evidence)
        if (seen == y) {
          dup = true;
          break;
        }
      if (dup) continue;
      if (normal_closure(g, {y}).order() != n.order())
        throw Error("minimal normal subgroups: closure evidence failed");
      evidence.push_back(std::move(y));
    }
    const char* source = out.complete
                             ? "normal closures of one element per conjugacy "
                               "class"
                             : "normal closures of sampled elements, shrunk "
                               "while possible";
    out.subgroups.push_back(
        NormalWitness{std::move(n), source, std::move(evidence)});
  }
  return out;
}

SocleResult socle(const PermGroup& g, const Budget& budget) {
  MinimalNormals mn = minimal_normal_subgroups(g, budget);
  std::vector<Permutation> gens;
  for (const NormalWitness& w : mn.subgroups)
    for (const Permutation& y : w.subgroup.generators()) gens.push_back(y);
  SocleResult out{PermGroup(g.degree(), std::move(gens)), mn.complete};
  return out;
}

mpz_class CompositionMultiset::order_product() const {
  mpz_class prod = 1;
  for (const auto& [id, mult] : entries)
    for (unsigned i = 0; i < mult; ++i) prod *= id.order;
  return prod;
}

CompositionMultiset& CompositionMultiset::add(const SimpleGroupId& id,
                                              unsigned mult) {
  entries[id] += mult;
  return *this;
}

CompositionMultiset& CompositionMultiset::add(const CompositionMultiset& o) {
  for (const auto& [id, mult] : o.entries) entries[id] += mult;
  return *this;
}

std::string CompositionMultiset::to_string() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [id, mult] : entries) {
    if (!first) os << ", ";
    first = false;
    os << id.name << ":" << mult;
  }
  os << "}";
  return os.str();
}

CompositionMultiset composition_multiset(const PermGroup& g,
                                         const Budget& budget) {
  CompositionMultiset out;
  composition_rec(g, budget, out);
  if (out.order_product() != g.order())
    throw Error("composition multiset: order product mismatch");
  return out;
}

SimpleGroupId identify_simple(const PermGroup& g, const Budget& budget) {
  if (g.order() == 1) throw Error("identify simple: trivial group");
  if (!verified_simple(g, budget))
    throw Error("identify simple: group has a proper normal subgroup");
  return identify_simple_unchecked(g, budget);
}

SectionSet simple_sections(const PermGroup& g, const Budget& budget) {
  SectionSet out;
  out.complete = true;
  CompositionMultiset cm = composition_multiset(g, budget);
  for (const auto& [id, mult] : cm.entries) {
    if (id.kind == SimpleKind::Cyclic) {
      out.ids.insert(id);
      continue;
    }
    const SimpleRow* row = SimpleOrderTable::instance().row_named(id.name);
    if (row && !row->sections.empty()) {
      for (const std::string& s : row->sections) out.ids.insert(section_id(s));
    } else {
      // Sections not on file: report the factor itself plus the cyclic
      // groups of the primes dividing it, flagged as an under-approximation.
      out.ids.insert(id);
      for (auto [p, e] : factorize(id.order.get_ui()))
        out.ids.insert(cyclic_id(p));
      out.complete = false;
    }
  }
  return out;
}

bool is_soluble(const PermGroup& g) {
  PermGroup cur = g;
  for (int step = 0; step < 128; ++step) {
    if (cur.order() == 1) return true;
    PermGroup next = derived_subgroup(cur);
    if (next.order() == cur.order()) return false;
    cur = std::move(next);
  }
  throw Error("solubility: derived series did not settle");
}

SimpleQuotients simple_quotients(const PermGroup& g, const Budget& budget) {
  SimpleQuotients out;
  out.complete = true;
  simple_quotients_rec(g, budget, out);
  return out;
}

QuotientIdentity quotient_multiset_identity(const PermGroup& g,
                                            const PermGroup& n,
                                            const Budget& budget) {
  if (!subgroup_of(n, g) || !normal_in(g, n))
    throw Error("quotient identity: subgroup is not normal");
  QuotientIdentity out;
  out.sub = composition_multiset(n, budget);
  if (n.order() == g.order()) {
    out.quotient = CompositionMultiset{};
  } else if (n.order() == 1) {
    out.quotient = composition_multiset(g, budget);
  } else {
    CosetAction ca = coset_action(g, n, budget.max_index, &n, budget);
    out.quotient = composition_multiset(ca.action.image, budget);
  }
  CompositionMultiset whole = composition_multiset(g, budget);
  CompositionMultiset combined = out.sub;
  combined.add(out.quotient);
  out.holds = whole == combined;
  return out;
}

} // namespace qlocal
