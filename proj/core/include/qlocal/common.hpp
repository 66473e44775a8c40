#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qlocal {

using Point = std::uint32_t;

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class BudgetExceeded : public Error {
public:
  explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

// Resource limits shared by the search and enumeration routines.  Every
// routine that can give up reports it (exception or an explicit flag in the
// result), never silently.
struct Budget {
  std::uint64_t enumeration_order = 1'000'000;    // max group order for element enumeration
  std::uint64_t enumeration_cells = 200'000'000;  // order * degree memory guard for element tables
  std::uint64_t pairing_samples = 100'000;        // random draws per strategy in the witness search
  std::uint64_t backtrack_nodes = 10'000'000;     // node budget for backtrack searches
  std::uint64_t max_index = 20'000;               // largest coset space materialised
  std::uint64_t sample_words = 64;                // random words probed when sampling normal subgroups
  std::uint64_t seed = 0;
};

} // namespace qlocal
