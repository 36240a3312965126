#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "wreath/exact.hpp"
#include "wreath/groups.hpp"

namespace wreath {

// Exact number of elements of each order. Counts are arbitrary precision so
// spectra of wreath products far beyond enumeration range are representable.
class OrderSpectrum {
 public:
  /// Validates: counts positive, sum == group_size, d_1 == 1, every order
  /// divides group_size.
  OrderSpectrum(BigInt group_size, std::map<std::uint64_t, BigInt> counts);

  const BigInt& group_size() const noexcept { return group_size_; }
  const std::map<std::uint64_t, BigInt>& counts() const noexcept { return counts_; }

  /// d_n, zero when no element has order n.
  BigInt count(std::uint64_t order) const;

  /// group_size as uint64 (ResourceError when it does not fit).
  std::uint64_t size_u64() const { return to_u64(group_size_); }

  bool operator==(const OrderSpectrum&) const = default;

 private:
  BigInt group_size_;
  std::map<std::uint64_t, BigInt> counts_;
};

// r_k = (1 / p^a) * #{g : order(g) <= p^(d-k)} for k = 0..d.
struct CumulativeOrderDistribution {
  std::uint64_t p = 0;
  std::uint64_t a = 0;  // |G| = p^a
  std::uint64_t d = 0;  // m(G) = p^d
  std::vector<BigRational> r;

  /// r_k with r_k = 1 for k <= 0 and r_k = 0 for k > d.
  BigRational at(std::int64_t k) const;

  /// Throws InvariantError unless r_0 = 1, r is non-increasing and r_d = p^-a.
  void validate() const;

  bool operator==(const CumulativeOrderDistribution&) const = default;
};

OrderSpectrum spectrum(const FiniteGroup& g);

/// s_m = #{g : g^m = 1} = sum of d_n over n | m.
BigInt s_of_m(const OrderSpectrum& spec, std::uint64_t m);

BigRational average_order(const OrderSpectrum& spec);

std::uint64_t max_order(const OrderSpectrum& spec);

/// Cumulative distribution of a p-group. Throws PreconditionError naming the
/// offending size or order when spec is not a p-group for this p.
CumulativeOrderDistribution r_distribution(const OrderSpectrum& spec, std::uint64_t p);
CumulativeOrderDistribution r_distribution(const FiniteGroup& g, std::uint64_t p);

/// Number of cyclic factors of maximal exponent. Requires a nonempty,
/// nondecreasing list of positive exponents.
std::uint64_t t_invariant(std::span<const std::uint64_t> exponents);

/// The prime p with |G| = p^a, a >= 1, or 0 if the size is not a prime power.
std::uint64_t prime_of(const OrderSpectrum& spec);

// {"1": "1", "2": "5", ...}
nlohmann::json spectrum_to_json(const OrderSpectrum& spec);

}  // namespace wreath
