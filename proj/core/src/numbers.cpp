#include "qlocal/numbers.hpp"

#include <algorithm>

namespace qlocal {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  if (n == 0) throw Error("factorize(0)");
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    if (d != n / d) out.push_back(n / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t vp_factorial(std::uint64_t k, std::uint64_t p) {
  if (!is_prime(p)) throw Error("vp_factorial: modulus is not prime");
  std::uint64_t total = 0;
  for (std::uint64_t q = p; q <= k; q *= p) {
    total += k / q;
    if (q > k / p) break;  // next q would overflow past k anyway
  }
  return total;
}

bool power_divides_factorial(std::uint64_t x, std::uint64_t k) {
  if (x < 2 || k < 2) throw Error("power_divides_factorial: arguments must exceed 1");
  for (auto [p, e] : factorize(x))
    if (k * e > vp_factorial(k, p)) return false;
  return true;
}

bool four_power_divides_factorial(std::uint64_t k, std::uint64_t ell) {
  if (k < 2 || ell < 2) throw Error("four_power_divides_factorial: arguments must exceed 1");
  if (k % ell) throw Error("four_power_divides_factorial: second argument must divide the first");
  std::uint64_t needed = 2 * (k - k / ell);
  return needed <= vp_factorial(k, 2);
}

std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t n) {
  if (n < 2) return std::nullopt;
  auto f = factorize(n);
  if (f.size() != 1) return std::nullopt;
  return f[0];
}

std::optional<unsigned> exact_power_exponent(std::uint64_t n, std::uint64_t b) {
  if (b < 2) throw Error("exact_power_exponent: base must exceed 1");
  if (n < b) return std::nullopt;
  unsigned e = 0;
  std::uint64_t acc = 1;
  while (acc < n) {
    if (acc > n / b) return std::nullopt;  // acc*b would overflow or pass n
    acc *= b;
    ++e;
  }
  if (acc == n) return e;
  return std::nullopt;
}

} // namespace qlocal
