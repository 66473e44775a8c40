#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qlocal/common.hpp"

namespace qlocal {

bool is_prime(std::uint64_t n);

// (prime, exponent) pairs with primes ascending; factorize(1) == {}.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

std::vector<std::uint64_t> divisors(std::uint64_t n);  // ascending, n >= 1

// Exponent of p in k! (Legendre sum).  Throws Error when p is not prime.
std::uint64_t vp_factorial(std::uint64_t k, std::uint64_t p);

// Whether x^k divides k!.  Requires x, k >= 2.
bool power_divides_factorial(std::uint64_t x, std::uint64_t k);

// Whether 4^(k - k/ell) divides k!.  Requires ell >= 2 and ell | k.
bool four_power_divides_factorial(std::uint64_t k, std::uint64_t ell);

// n as p^a with p prime, a >= 1; nullopt when n is not a prime power.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t n);

// e >= 1 with b^e == n, when such an exponent exists.  Requires b >= 2.
std::optional<unsigned> exact_power_exponent(std::uint64_t n, std::uint64_t b);

} // namespace qlocal
