#include "wreath/spectra.hpp"

#include <algorithm>

#include "wreath/errors.hpp"
#include "wreath/numtheory.hpp"

namespace wreath {

OrderSpectrum::OrderSpectrum(BigInt group_size, std::map<std::uint64_t, BigInt> counts)
    : group_size_(std::move(group_size)), counts_(std::move(counts)) {
  if (sgn(group_size_) <= 0) throw InvariantError("spectrum: group size must be positive");
  BigInt total = 0;
  for (const auto& [order, c] : counts_) {
    if (order == 0 || sgn(c) <= 0) throw InvariantError("spectrum: nonpositive order or count");
    if (!mpz_divisible_p(group_size_.get_mpz_t(), to_bigint(order).get_mpz_t())) {
      throw InvariantError("spectrum: order " + std::to_string(order) + " does not divide " +
                           group_size_.get_str());
    }
    total += c;
  }
  if (total != group_size_) throw InvariantError("spectrum: counts do not sum to the group size");
  if (count(1) != 1) throw InvariantError("spectrum: exactly one element must have order 1");
}

BigInt OrderSpectrum::count(std::uint64_t order) const {
  const auto it = counts_.find(order);
  return it == counts_.end() ? BigInt(0) : it->second;
}

BigRational CumulativeOrderDistribution::at(std::int64_t k) const {
  if (k <= 0) return BigRational(1);
  if (static_cast<std::uint64_t>(k) > d) return BigRational(0);
  return r[static_cast<std::size_t>(k)];
}

void CumulativeOrderDistribution::validate() const {
  if (r.size() != d + 1) throw InvariantError("distribution: expected d + 1 entries");
  if (r.front() != BigRational(1)) throw InvariantError("distribution: r_0 must be 1");
  for (std::size_t k = 1; k < r.size(); ++k) {
    if (r[k] > r[k - 1]) throw InvariantError("distribution: r must be non-increasing");
  }
  if (r.back() != BigRational(1) / BigRational(int_pow(to_bigint(p), a))) {
    throw InvariantError("distribution: r_d must equal p^-a");
  }
}

OrderSpectrum spectrum(const FiniteGroup& g) {
  std::map<std::uint64_t, BigInt> counts;
  for (Element x = 0; x < g.size(); ++x) counts[element_order(g, x)] += 1;
  return OrderSpectrum(to_bigint(g.size()), std::move(counts));
}

BigInt s_of_m(const OrderSpectrum& spec, std::uint64_t m) {
  if (m == 0) throw PreconditionError("s_of_m: m must be positive");
  BigInt s = 0;
  for (const auto& [order, c] : spec.counts()) {
    if (m % order == 0) s += c;
  }
  return s;
}

BigRational average_order(const OrderSpectrum& spec) {
  BigInt total = 0;
  for (const auto& [order, c] : spec.counts()) total += to_bigint(order) * c;
  return rat(total, spec.group_size());
}

std::uint64_t max_order(const OrderSpectrum& spec) { return spec.counts().rbegin()->first; }

std::uint64_t prime_of(const OrderSpectrum& spec) {
  if (spec.group_size() < 2) return 0;
  const BigInt& n = spec.group_size();
  // smallest prime factor; p-group sizes are p^a so trial division by the
  // smallest factor suffices
  std::uint64_t p = 2;
  while (!mpz_divisible_ui_p(n.get_mpz_t(), p)) ++p;
  BigInt rest = n;
  while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) rest /= p;
  return rest == 1 ? p : 0;
}

CumulativeOrderDistribution r_distribution(const OrderSpectrum& spec, std::uint64_t p) {
  if (!numtheory::is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  BigInt rest = spec.group_size();
  std::uint64_t a = 0;
  while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
    rest /= p;
    ++a;
  }
  if (rest != 1) {
    throw PreconditionError("group of order " + spec.group_size().get_str() + " is not a " +
                            std::to_string(p) + "-group");
  }
  for (const auto& [order, c] : spec.counts()) {
    if (numtheory::log_exact(order, p) < 0) {
      throw PreconditionError("element order " + std::to_string(order) + " is not a power of " +
                              std::to_string(p));
    }
  }
  CumulativeOrderDistribution dist;
  dist.p = p;
  dist.a = a;
  dist.d = static_cast<std::uint64_t>(numtheory::log_exact(max_order(spec), p));
  const BigInt size = spec.group_size();
  for (std::uint64_t k = 0; k <= dist.d; ++k) {
    dist.r.push_back(rat(s_of_m(spec, numtheory::checked_pow(p, dist.d - k)), size));
  }
  dist.validate();
  return dist;
}

CumulativeOrderDistribution r_distribution(const FiniteGroup& g, std::uint64_t p) {
  return r_distribution(spectrum(g), p);
}

std::uint64_t t_invariant(std::span<const std::uint64_t> exponents) {
  if (exponents.empty()) throw PreconditionError("t_invariant: exponent list is empty");
  if (!std::is_sorted(exponents.begin(), exponents.end()) || exponents.front() == 0) {
    throw PreconditionError("t_invariant: exponents must be positive and nondecreasing");
  }
  return static_cast<std::uint64_t>(
      std::count(exponents.begin(), exponents.end(), exponents.back()));
}

nlohmann::json spectrum_to_json(const OrderSpectrum& spec) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [order, c] : spec.counts()) j[std::to_string(order)] = c.get_str();
  return j;
}

}  // namespace wreath
