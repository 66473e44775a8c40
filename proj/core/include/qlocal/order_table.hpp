#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qlocal/common.hpp"
#include "qlocal/permutation.hpp"

namespace qlocal {

enum class SimpleKind { Cyclic, Alternating, Classical, Sporadic };

// Identifier of a finite simple group: a cyclic group of prime order, or a
// nonabelian group named by the data-file row it matches.
struct SimpleGroupId {
  SimpleKind kind = SimpleKind::Cyclic;
  std::string name;  // "C7", "A5", "PSL(2,7)", "M11", ...
  mpz_class order = 1;

  bool operator==(const SimpleGroupId& o) const { return name == o.name; }
  bool operator!=(const SimpleGroupId& o) const { return !(*this == o); }
  bool operator<(const SimpleGroupId& o) const {
    if (order != o.order) return order < o.order;
    return name < o.name;
  }
};

SimpleGroupId cyclic_id(std::uint64_t p);  // throws Error when p is not prime

struct SimpleRow {
  std::string id;
  std::string kind;  // alternating | psl | psu | psp | sz | g2 | tits | sporadic
  std::vector<std::uint64_t> params;
  std::uint64_t order = 0;
  std::uint64_t outOrder = 0;
  std::vector<std::uint64_t> spectrum;  // element orders; empty when not stored
  std::vector<std::string> sections;    // simple-section ids; empty when not stored
  std::string oracle;

  SimpleGroupId group_id() const;
};

struct NamedGroupData {
  std::string id;
  Point degree = 0;
  mpz_class order;
  std::vector<Permutation> generators;
  std::string oracle;
};

// Simple-group data rows (orders <= 1e8) plus shipped generator lists.  Every
// order is re-derived from its formula at load time; mismatches throw.
class SimpleOrderTable {
public:
  explicit SimpleOrderTable(const std::string& path);
  static const SimpleOrderTable& instance();  // loads default_catalog_path() once

  const std::vector<SimpleRow>& rows() const { return rows_; }
  std::vector<const SimpleRow*> rows_of_order(std::uint64_t order) const;
  const SimpleRow* row_named(const std::string& id) const;  // null when absent

  const std::vector<NamedGroupData>& groups() const { return groups_; }
  const NamedGroupData* group_named(const std::string& id) const;

  std::uint64_t order_limit() const { return orderLimit_; }
  std::uint64_t section_bound() const { return sectionBound_; }

private:
  std::vector<SimpleRow> rows_;  // sorted by (order, id)
  std::vector<NamedGroupData> groups_;
  std::uint64_t orderLimit_ = 0;
  std::uint64_t sectionBound_ = 0;
};

// QLOCAL_CATALOG env var when set, else the source-tree data file, else the
// installed one.
std::string default_catalog_path();

// All (row, m) with row->order ^ m == n; ascending by row order, then m.
std::vector<std::pair<const SimpleRow*, unsigned>> simple_power_degree(std::uint64_t n);

} // namespace qlocal
