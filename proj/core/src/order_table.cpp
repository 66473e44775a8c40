#include "qlocal/order_table.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>

#include "json.hpp"
#include "qlocal/numbers.hpp"

namespace qlocal {

namespace {

mpz_class mpz_pow(std::uint64_t base, unsigned exp) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exp);
  return r;
}

mpz_class factorial(unsigned n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

const std::map<std::string, std::uint64_t>& sporadic_orders() {
  static const std::map<std::string, std::uint64_t> table = {
      {"M11", 7920},      {"M12", 95040},     {"J1", 175560},
      {"M22", 443520},    {"J2", 604800},     {"M23", 10200960},
      {"HS", 44352000},   {"J3", 50232960},
  };
  return table;
}

mpz_class expected_order(const SimpleRow& r) {
  if (r.kind == "alternating") {
    return factorial(static_cast<unsigned>(r.params.at(0))) / 2;
  }
  if (r.kind == "psl") {
    auto n = static_cast<unsigned>(r.params.at(0));
    std::uint64_t q = r.params.at(1);
    mpz_class o = mpz_pow(q, n * (n - 1) / 2);
    for (unsigned i = 2; i <= n; ++i) o *= mpz_pow(q, i) - 1;
    return o / std::gcd<std::uint64_t>(n, q - 1);
  }
  if (r.kind == "psu") {
    auto n = static_cast<unsigned>(r.params.at(0));
    std::uint64_t q = r.params.at(1);
    mpz_class o = mpz_pow(q, n * (n - 1) / 2);
    for (unsigned i = 2; i <= n; ++i)
      o *= mpz_pow(q, i) - (i % 2 == 0 ? 1 : -1);
    return o / std::gcd<std::uint64_t>(n, q + 1);
  }
  if (r.kind == "psp") {
    auto m = static_cast<unsigned>(r.params.at(0)) / 2;
    std::uint64_t q = r.params.at(1);
    mpz_class o = mpz_pow(q, m * m);
    for (unsigned i = 1; i <= m; ++i) o *= mpz_pow(q, 2 * i) - 1;
    return o / std::gcd<std::uint64_t>(2, q - 1);
  }
  if (r.kind == "sz") {
    std::uint64_t q = r.params.at(0);
    return mpz_class(q) * q * (mpz_class(q) * q + 1) * (q - 1);
  }
  if (r.kind == "g2") {
    std::uint64_t q = r.params.at(0);
    return mpz_pow(q, 6) * (mpz_pow(q, 6) - 1) * (mpz_pow(q, 2) - 1);
  }
  if (r.kind == "tits") return mpz_class(2048) * 27 * 25 * 13;
  if (r.kind == "sporadic") {
    auto it = sporadic_orders().find(r.id);
    if (it == sporadic_orders().end())
      throw Error("unknown sporadic group in catalog: " + r.id);
    return mpz_class(static_cast<unsigned long>(it->second));
  }
  throw Error("unknown simple-group kind in catalog: " + r.kind);
}

} // namespace

SimpleGroupId cyclic_id(std::uint64_t p) {
  if (!is_prime(p)) throw Error("cyclic simple groups have prime order");
  SimpleGroupId id;
  id.kind = SimpleKind::Cyclic;
  id.name = "C" + std::to_string(p);
  id.order = static_cast<unsigned long>(p);
  return id;
}

SimpleGroupId SimpleRow::group_id() const {
  SimpleGroupId out;
  out.kind = kind == "alternating" ? SimpleKind::Alternating
             : kind == "sporadic"  ? SimpleKind::Sporadic
                                   : SimpleKind::Classical;
  out.name = id;
  out.order = static_cast<unsigned long>(order);
  return out;
}

SimpleOrderTable::SimpleOrderTable(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open catalog data file: " + path);
  nlohmann::json doc;
  in >> doc;
  if (doc.at("version").get<int>() != 1)
    throw Error("unsupported catalog data version");
  orderLimit_ = doc.at("orderLimit").get<std::uint64_t>();
  sectionBound_ = doc.at("sectionBound").get<std::uint64_t>();

  for (const auto& j : doc.at("simples")) {
    SimpleRow r;
    r.id = j.at("id").get<std::string>();
    r.kind = j.at("kind").get<std::string>();
    r.params = j.at("params").get<std::vector<std::uint64_t>>();
    r.order = j.at("order").get<std::uint64_t>();
    r.outOrder = j.at("out").get<std::uint64_t>();
    r.oracle = j.at("oracle").get<std::string>();
    if (j.contains("spectrum"))
      r.spectrum = j.at("spectrum").get<std::vector<std::uint64_t>>();
    if (j.contains("sections"))
      r.sections = j.at("sections").get<std::vector<std::string>>();
    if (expected_order(r) != static_cast<unsigned long>(r.order))
      throw Error("catalog order mismatch for " + r.id);
    if (r.order > orderLimit_) throw Error("catalog order above limit: " + r.id);
    rows_.push_back(std::move(r));
  }

  for (std::size_t i = 0; i + 1 < rows_.size(); ++i)
    if (rows_[i].order > rows_[i + 1].order)
      throw Error("catalog rows not sorted by order");
  std::map<std::uint64_t, std::vector<std::string>> collisions;
  for (const auto& r : rows_) collisions[r.order].push_back(r.id);
  for (const auto& [o, ids] : collisions)
    if (ids.size() > 1 &&
        !(o == 20160 && ids == std::vector<std::string>{"A8", "PSL(3,4)"}))
      throw Error("unexpected duplicate catalog order " + std::to_string(o));
  // Rows that collide in order must carry distinguishing spectra.
  for (const auto& r : rows_)
    if (collisions[r.order].size() > 1 && r.spectrum.empty())
      throw Error("order collision without spectrum: " + r.id);
  for (const auto& r : rows_)
    for (const auto& s : r.sections) {
      if (s.size() > 1 && s[0] == 'C') {
        std::uint64_t p = std::stoull(s.substr(1));
        if (!is_prime(p) || r.order % p != 0)
          throw Error("bad cyclic section " + s + " in " + r.id);
        continue;
      }
      bool found = false;
      for (const auto& other : rows_) found = found || other.id == s;
      if (!found) throw Error("section id not in catalog: " + s);
    }

  for (const auto& j : doc.at("groups")) {
    NamedGroupData g;
    g.id = j.at("id").get<std::string>();
    g.degree = j.at("degree").get<Point>();
    g.order = mpz_class(static_cast<unsigned long>(j.at("order").get<std::uint64_t>()));
    g.oracle = j.at("oracle").get<std::string>();
    for (const auto& s : j.at("generators"))
      g.generators.push_back(Permutation::parse_cycles(s.get<std::string>(), g.degree));
    groups_.push_back(std::move(g));
  }
}

const SimpleOrderTable& SimpleOrderTable::instance() {
  static const SimpleOrderTable table(default_catalog_path());
  return table;
}

std::vector<const SimpleRow*> SimpleOrderTable::rows_of_order(std::uint64_t order) const {
  std::vector<const SimpleRow*> out;
  for (const auto& r : rows_)
    if (r.order == order) out.push_back(&r);
  return out;
}

const SimpleRow* SimpleOrderTable::row_named(const std::string& id) const {
  for (const auto& r : rows_)
    if (r.id == id) return &r;
  return nullptr;
}

const NamedGroupData* SimpleOrderTable::group_named(const std::string& id) const {
  for (const auto& g : groups_)
    if (g.id == id) return &g;
  return nullptr;
}

std::string default_catalog_path() {
  if (const char* env = std::getenv("QLOCAL_CATALOG")) return env;
  const std::string source = std::string(QLOCAL_SOURCE_DATA_DIR) + "/catalog.json";
  if (std::filesystem::exists(source)) return source;
  return std::string(QLOCAL_INSTALL_DATA_DIR) + "/catalog.json";
}

std::vector<std::pair<const SimpleRow*, unsigned>> simple_power_degree(std::uint64_t n) {
  std::vector<std::pair<const SimpleRow*, unsigned>> out;
  if (n < 2) return out;
  for (const auto& r : SimpleOrderTable::instance().rows()) {
    if (r.order > n) break;
    if (auto e = exact_power_exponent(n, r.order)) out.emplace_back(&r, *e);
  }
  return out;
}

} // namespace qlocal
