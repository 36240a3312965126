#include "wreath/numtheory.hpp"

#include <algorithm>
#include <string>

#include "wreath/errors.hpp"

namespace wreath::numtheory {

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw PreconditionError("factorize: n must be positive");
  if (n > kFactorCap) {
    throw PreconditionError("factorize: " + std::to_string(n) + " exceeds the factorization cap");
  }
  Factorization f;
  f.value = n;
  std::uint64_t rest = n;
  for (std::uint64_t q = 2; q <= rest / q; q += (q == 2 ? 1 : 2)) {
    if (rest % q != 0) continue;
    PrimePower pp{q, 0};
    while (rest % q == 0) {
      rest /= q;
      ++pp.exponent;
    }
    f.factors.push_back(pp);
  }
  if (rest > 1) f.factors.push_back({rest, 1});
  return f;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  const auto f = factorize(n);
  std::vector<std::uint64_t> out{1};
  for (const auto& [p, e] : f.factors) {
    const std::size_t existing = out.size();
    std::uint64_t power = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
      power *= p;
      for (std::size_t j = 0; j < existing; ++j) out.push_back(out[j] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int mobius(std::uint64_t n) {
  const auto f = factorize(n);
  for (const auto& pp : f.factors) {
    if (pp.exponent > 1) return 0;
  }
  return f.factors.size() % 2 == 0 ? 1 : -1;
}

std::int64_t tau(std::uint64_t n) {
  std::int64_t result = 1;
  for (const auto& pp : factorize(n).factors) {
    result *= 1 - static_cast<std::int64_t>(pp.prime);
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q <= n / q; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

int log_exact(std::uint64_t n, std::uint64_t p) {
  if (n == 0 || p < 2) return -1;
  int k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return n == 1 ? k : -1;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw ResourceError("integer overflow: " + std::to_string(a) + " * " + std::to_string(b));
  }
  return out;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t e) {
  if (e == 0 || base == 1) return 1;
  if (base == 0) return 0;
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < e; ++i) out = checked_mul(out, base);
  return out;
}

}  // namespace wreath::numtheory
