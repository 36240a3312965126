#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace wreath::numtheory {

inline constexpr std::uint64_t kFactorCap = std::numeric_limits<std::int64_t>::max();

struct PrimePower {
  std::uint64_t prime;
  std::uint32_t exponent;

  bool operator==(const PrimePower&) const = default;
};

struct Factorization {
  std::uint64_t value = 1;
  std::vector<PrimePower> factors;  // strictly increasing primes
};

/// Prime factorization by trial division. Throws PreconditionError for
/// n == 0 or n > kFactorCap.
Factorization factorize(std::uint64_t n);

/// All divisors of n in increasing order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

int mobius(std::uint64_t n);

/// Product of (1 - p) over the distinct primes p dividing n.
std::int64_t tau(std::uint64_t n);

bool is_prime(std::uint64_t n);

/// If n == p^k for some k >= 0 returns k, otherwise -1.
int log_exact(std::uint64_t n, std::uint64_t p);

/// base^e, throwing ResourceError on 64-bit overflow.
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t e);

/// a*b, throwing ResourceError on 64-bit overflow.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

}  // namespace wreath::numtheory
