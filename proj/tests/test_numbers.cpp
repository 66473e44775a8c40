#include <cstdint>

#include "doctest.h"
#include "qlocal/numbers.hpp"

using namespace qlocal;

TEST_CASE("primality and factorization") {
  CHECK(!is_prime(0));
  CHECK(!is_prime(1));
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK(!is_prime(91));  // 7 * 13

  auto f = factorize(360);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::pair<std::uint64_t, unsigned>{2, 3});
  CHECK(f[1] == std::pair<std::uint64_t, unsigned>{3, 2});
  CHECK(f[2] == std::pair<std::uint64_t, unsigned>{5, 1});
  CHECK(factorize(1).empty());

  auto d = divisors(12);
  CHECK(d == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
  CHECK(divisors(1) == std::vector<std::uint64_t>{1});
}

TEST_CASE("factorial valuations") {
  CHECK(vp_factorial(8, 2) == 7);
  CHECK(vp_factorial(5, 7) == 0);
  CHECK(vp_factorial(100, 3) == 48);
  CHECK(vp_factorial(0, 2) == 0);
  CHECK_THROWS_AS(vp_factorial(10, 6), Error);

  // independent oracle: count factors of p in 1..k directly
  for (std::uint64_t k : {1u, 7u, 24u, 100u, 343u})
    for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
      std::uint64_t direct = 0;
      for (std::uint64_t m = 1; m <= k; ++m)
        for (std::uint64_t t = m; t % p == 0; t /= p) ++direct;
      CHECK(vp_factorial(k, p) == direct);
    }
}

TEST_CASE("power-of-x divisibility of factorials") {
  CHECK(!power_divides_factorial(2, 4));   // 16 does not divide 24
  CHECK(!power_divides_factorial(3, 3));   // 27 does not divide 6
  CHECK(!power_divides_factorial(2, 2));   // 4 does not divide 2
  CHECK_THROWS_AS(power_divides_factorial(1, 5), Error);

  CHECK(!four_power_divides_factorial(4, 2));
  CHECK(!four_power_divides_factorial(6, 3));
  CHECK(!four_power_divides_factorial(2, 2));
  CHECK_THROWS_AS(four_power_divides_factorial(5, 2), Error);
}

TEST_CASE("divisibility sweep and valuation bound") {
  // Over the sweep range: x^k never divides k!, 4^(k-k/l) never divides k!,
  // and the valuation of k! at p stays at most (k-1)/(p-1).
  for (std::uint64_t k = 2; k <= 2000; ++k) {
    for (std::uint64_t x = 2; x <= 50; ++x)
      if (power_divides_factorial(x, k)) {
        CAPTURE(x);
        CAPTURE(k);
        FAIL_CHECK("x^k divided k!");
      }
    for (std::uint64_t ell = 2; ell <= k; ++ell)
      if (k % ell == 0 && four_power_divides_factorial(k, ell)) {
        CAPTURE(ell);
        CAPTURE(k);
        FAIL_CHECK("4^(k-k/ell) divided k!");
      }
  }
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u,
                          41u, 43u, 47u, 53u, 59u, 61u, 67u, 71u, 73u, 79u, 83u,
                          89u, 97u})
    for (std::uint64_t k = 2; k <= 2000; ++k)
      CHECK(vp_factorial(k, p) * (p - 1) <= k - 1);
}

TEST_CASE("prime powers and exact powers") {
  REQUIRE(prime_power(8).has_value());
  CHECK(*prime_power(8) == std::pair<std::uint64_t, unsigned>{2, 3});
  CHECK(*prime_power(7) == std::pair<std::uint64_t, unsigned>{7, 1});
  CHECK(!prime_power(12).has_value());
  CHECK(!prime_power(1).has_value());

  CHECK(*exact_power_exponent(3600, 60) == 2);
  CHECK(*exact_power_exponent(60, 60) == 1);
  CHECK(!exact_power_exponent(100, 60).has_value());
  CHECK(*exact_power_exponent(1u << 20, 2) == 20);
}
