#pragma once

#include <gmpxx.h>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "qlocal/common.hpp"
#include "qlocal/order_table.hpp"
#include "qlocal/perm_group.hpp"

namespace qlocal {

// Largest normal subgroup of g contained in h: the kernel of the action of g
// on the cosets of h.
PermGroup core_subgroup(const PermGroup& g, const PermGroup& h,
                        const Budget& budget = {});

struct NormalWitness {
  PermGroup subgroup;
  std::string generators_source;
  // Nontrivial members whose normal closures were recomputed and found equal
  // to the subgroup itself.
  std::vector<Permutation> minimality_evidence;

  bool verify(const PermGroup& g) const;  // normality under g's generators
};

struct MinimalNormals {
  std::vector<NormalWitness> subgroups;
  bool complete = false;  // true only for the exhaustive class-scan strategy
};

// pre: |g| > 1.
MinimalNormals minimal_normal_subgroups(const PermGroup& g,
                                        const Budget& budget = {});

struct SocleResult {
  PermGroup group;
  bool complete = false;
};

SocleResult socle(const PermGroup& g, const Budget& budget = {});

struct CompositionMultiset {
  std::map<SimpleGroupId, unsigned> entries;

  mpz_class order_product() const;
  CompositionMultiset& add(const SimpleGroupId& id, unsigned mult = 1);
  CompositionMultiset& add(const CompositionMultiset& other);
  std::string to_string() const;  // "{A5:1, C2:3}", ascending ids

  bool operator==(const CompositionMultiset& o) const {
    return entries == o.entries;
  }
};

// Jordan-Hoelder factor multiset; the choice among feasible minimal normal
// subgroups is steered by budget.seed, the result is seed-independent.
CompositionMultiset composition_multiset(const PermGroup& g,
                                         const Budget& budget = {});

// pre: g simple. Errors when g is visibly not simple or the order has no
// table row; the A8 / PSL(3,4) order collision is resolved by the
// element-order spectrum.
SimpleGroupId identify_simple(const PermGroup& g, const Budget& budget = {});

struct SectionSet {
  std::set<SimpleGroupId> ids;
  bool complete = false;
};

// Union of the stored section sets of the composition factors; factors whose
// sections are not on file contribute themselves plus the cyclic groups of
// the primes dividing them, with complete = false.
SectionSet simple_sections(const PermGroup& g, const Budget& budget = {});

bool is_soluble(const PermGroup& g);

struct SimpleQuotients {
  std::set<SimpleGroupId> ids;
  bool complete = false;
};

// {identity of g/N : N maximal normal in g}.
SimpleQuotients simple_quotients(const PermGroup& g, const Budget& budget = {});

struct QuotientIdentity {
  CompositionMultiset sub;       // [n]
  CompositionMultiset quotient;  // [g/n]
  bool holds = false;            // [g] == [n][g/n]
};

// pre: n normal in g.
QuotientIdentity quotient_multiset_identity(const PermGroup& g,
                                            const PermGroup& n,
                                            const Budget& budget = {});

} // namespace qlocal
