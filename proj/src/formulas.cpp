#include "wreath/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wreath/errors.hpp"
#include "wreath/numtheory.hpp"

namespace wreath {

namespace {

BigRational power_of(std::uint64_t p, std::int64_t e) { return rat_pow_signed(BigRational(to_bigint(p)), e); }

BigInt big_power(std::uint64_t p, std::uint64_t e) { return int_pow(to_bigint(p), e); }

// Exponent b with |B| = p^b, rejecting anything that is not a nontrivial p-group.
std::uint64_t p_exponent(const OrderSpectrum& spec, std::uint64_t p, const char* what) {
  const std::uint64_t q = prime_of(spec);
  if (q == 0) {
    throw PreconditionError(std::string(what) + ": group of order " + spec.group_size().get_str() +
                            " is not a nontrivial p-group");
  }
  if (q != p) {
    throw PreconditionError(std::string(what) + ": prime mismatch (" + std::to_string(p) + " vs " +
                            std::to_string(q) + ")");
  }
  std::uint64_t b = 0;
  BigInt rest = spec.group_size();
  while (rest > 1) {
    rest /= p;
    ++b;
  }
  return b;
}

void require_profile(const PGroupProfile& profile, const char* what) {
  profile.validate();
  if (profile.a == 0) throw PreconditionError(std::string(what) + ": A must be nontrivial");
}

}  // namespace

void PGroupProfile::validate() const {
  if (!numtheory::is_prime(p)) throw PreconditionError("profile: " + std::to_string(p) + " is not prime");
  if (s.size() != a + 1) throw InvariantError("profile: expected a + 1 torsion counts");
  if (d > a) throw InvariantError("profile: d exceeds a");
  if (s[0] != 1) throw InvariantError("profile: s_1 must be 1");
  const BigInt order = big_power(p, a);
  for (std::uint64_t m = 0; m <= a; ++m) {
    if (m > 0 && s[m] < s[m - 1]) throw InvariantError("profile: torsion counts must be nondecreasing");
    // Frobenius: the number of solutions of x^n = 1 is a multiple of gcd(n, |G|)
    if (sgn(s[m]) <= 0 || !mpz_divisible_p(s[m].get_mpz_t(), big_power(p, m).get_mpz_t())) {
      throw InvariantError("profile: s_{p^m} must be a positive multiple of p^m");
    }
    if ((m >= d) != (s[m] == order)) throw InvariantError("profile: s_{p^m} = p^a exactly when m >= d");
  }
}

PGroupProfile profile_from_spectrum(const OrderSpectrum& spec, std::uint64_t p) {
  const auto dist = r_distribution(spec, p);
  PGroupProfile profile;
  profile.p = p;
  profile.a = dist.a;
  profile.d = dist.d;
  for (std::uint64_t m = 0; m <= dist.a; ++m) {
    profile.s.push_back(s_of_m(spec, numtheory::checked_pow(p, std::min(m, dist.d))));
  }
  profile.validate();
  return profile;
}

PGroupProfile profile_from_distribution(const CumulativeOrderDistribution& dist) {
  PGroupProfile profile;
  profile.p = dist.p;
  profile.a = dist.a;
  profile.d = dist.d;
  const BigRational order(big_power(dist.p, dist.a));
  for (std::uint64_t m = 0; m <= dist.a; ++m) {
    const BigRational s = order * dist.at(static_cast<std::int64_t>(dist.d) - static_cast<std::int64_t>(m));
    if (s.den() != 1) throw InvariantError("distribution does not come from integer counts");
    profile.s.push_back(s.num());
  }
  profile.validate();
  return profile;
}

CumulativeOrderDistribution distribution_from_profile(const PGroupProfile& profile) {
  profile.validate();
  CumulativeOrderDistribution dist;
  dist.p = profile.p;
  dist.a = profile.a;
  dist.d = profile.d;
  const BigInt order = big_power(profile.p, profile.a);
  for (std::uint64_t k = 0; k <= profile.d; ++k) dist.r.push_back(rat(profile.s_at(profile.d - k), order));
  dist.validate();
  return dist;
}

PGroupProfile abelian_profile(std::uint64_t p, std::span<const std::uint64_t> exponents) {
  if (exponents.empty()) throw PreconditionError("abelian_profile: exponent list is empty");
  PGroupProfile profile;
  profile.p = p;
  for (std::uint64_t e : exponents) {
    if (e == 0) throw PreconditionError("abelian_profile: exponents must be positive");
    profile.a += e;
    profile.d = std::max(profile.d, e);
  }
  for (std::uint64_t m = 0; m <= profile.a; ++m) {
    std::uint64_t log_s = 0;
    for (std::uint64_t e : exponents) log_s += std::min(m, e);
    profile.s.push_back(big_power(p, log_s));
  }
  profile.validate();
  return profile;
}

PGroupProfile elementary_abelian_profile(std::uint64_t p, std::uint64_t n) {
  if (n == 0) throw PreconditionError("elementary_abelian_profile: rank must be positive");
  const std::vector<std::uint64_t> ones(n, 1);
  return abelian_profile(p, ones);
}

BigRational theorem1_average(const OrderSpectrum& spec_a, const OrderSpectrum& spec_b) {
  if (spec_a.group_size() < 2 || spec_b.group_size() < 2) {
    throw PreconditionError("theorem1_average: both groups need at least 2 elements");
  }
  const std::uint64_t size_a = spec_a.size_u64();
  const std::uint64_t size_b = spec_b.size_u64();
  const auto divs_a = numtheory::divisors(size_a);
  const auto divs_b = numtheory::divisors(size_b);
  const BigInt big_a = to_bigint(size_a);

  BigRational total;
  for (std::uint64_t m : divs_a) {
    const BigRational ratio = rat(s_of_m(spec_a, m), big_a);
    const BigRational weight = BigRational(to_bigint(m)) * BigRational(numtheory::tau(size_a / m));
    for (std::uint64_t n : divs_b) {
      const BigInt d = spec_b.count(size_b / n);
      if (sgn(d) == 0) continue;
      total += weight * rat(d, to_bigint(n)) * rat_pow(ratio, n);
    }
  }
  return total;
}

KCoefficients k_coefficients(const OrderSpectrum& spec_b, std::uint64_t p) {
  KCoefficients kc;
  kc.p = p;
  kc.b = p_exponent(spec_b, p, "k_coefficients");
  const BigRational avg = average_order(spec_b);
  BigRational sum;
  for (std::uint64_t n = 0; n <= kc.b; ++n) {
    const BigInt d = spec_b.count(numtheory::checked_pow(p, kc.b - n));
    kc.k.push_back(BigRational(d) / (BigRational(big_power(p, n)) * avg));
    sum += kc.k.back();
  }
  if (sum != BigRational(1)) throw InvariantError("k_coefficients: weights do not sum to 1");
  return kc;
}

namespace {

// sum_n k_n sum_{m in [m_lo, m_hi)} p^m (s_{p^m}/p^a)^(p^n)
BigRational weighted_torsion_sum(const PGroupProfile& profile, const KCoefficients& kc,
                                 std::uint64_t m_lo, std::uint64_t m_hi) {
  const BigInt order = big_power(profile.p, profile.a);
  BigRational total;
  for (std::uint64_t n = 0; n <= kc.b; ++n) {
    if (kc.k[n].is_zero()) continue;
    const std::uint64_t exponent = numtheory::checked_pow(profile.p, n);
    BigRational inner;
    for (std::uint64_t m = m_lo; m < m_hi; ++m) {
      inner += BigRational(big_power(profile.p, m)) * rat_pow(rat(profile.s_at(m), order), exponent);
    }
    total += kc.k[n] * inner;
  }
  return total;
}

}  // namespace

BigRational theorem2_average(const PGroupProfile& profile_a, const OrderSpectrum& spec_b) {
  require_profile(profile_a, "theorem2_average");
  const auto kc = k_coefficients(spec_b, profile_a.p);
  const BigRational avg_b = average_order(spec_b);
  const BigRational p(to_bigint(profile_a.p));
  return BigRational(big_power(profile_a.p, profile_a.d)) * avg_b -
         (p - 1) * avg_b * weighted_torsion_sum(profile_a, kc, 0, profile_a.d);
}

bool theorem3_check(const BigRational& avg_b, const BigRational& avg_wreath, std::uint64_t p,
                    std::uint64_t d) {
  return avg_b <= avg_wreath && avg_wreath <= BigRational(big_power(p, d)) * avg_b;
}

BigRational theorem4_remainder(const PGroupProfile& profile_a, const OrderSpectrum& spec_b) {
  require_profile(profile_a, "theorem4_remainder");
  const auto kc = k_coefficients(spec_b, profile_a.p);
  const BigRational avg_b = average_order(spec_b);
  const BigRational p(to_bigint(profile_a.p));
  const std::uint64_t d = profile_a.d;
  const BigRational leading = (p - 1) * avg_b * weighted_torsion_sum(profile_a, kc, d - 1, d);
  return BigRational(big_power(profile_a.p, d)) * avg_b - theorem2_average(profile_a, spec_b) - leading;
}

BigRational theorem4_bound(const PGroupProfile& profile_a, const OrderSpectrum& spec_b) {
  require_profile(profile_a, "theorem4_bound");
  return (BigRational(big_power(profile_a.p, profile_a.d - 1)) - 1) * average_order(spec_b);
}

CumulativeOrderDistribution theorem5_distribution(const CumulativeOrderDistribution& ra,
                                                  const CumulativeOrderDistribution& rb) {
  if (ra.p != rb.p) {
    throw PreconditionError("theorem5_distribution: prime mismatch (" + std::to_string(ra.p) + " vs " +
                            std::to_string(rb.p) + ")");
  }
  ra.validate();
  rb.validate();
  const std::uint64_t p = ra.p;
  const std::uint64_t b = rb.a;
  const std::uint64_t e = rb.d;

  CumulativeOrderDistribution out;
  out.p = p;
  out.a = numtheory::checked_mul(ra.a, numtheory::checked_pow(p, b)) + b;
  out.d = ra.d + e;
  for (std::uint64_t k = 0; k <= out.d; ++k) {
    BigRational value;
    for (std::uint64_t i = 0; i <= e; ++i) {
      const auto ii = static_cast<std::int64_t>(i);
      const BigRational weight = rb.at(ii) - rb.at(ii + 1);
      if (weight.is_zero()) continue;
      const BigRational base = ra.at(static_cast<std::int64_t>(k) - ii);
      value += weight * rat_pow(base, numtheory::checked_pow(p, b - e + i));
    }
    out.r.push_back(std::move(value));
  }
  out.validate();
  return out;
}

CumulativeOrderDistribution cor51_step(const CumulativeOrderDistribution& ra) {
  ra.validate();
  const std::uint64_t p = ra.p;
  const BigRational inv_p = rat(BigInt(1), to_bigint(p));
  CumulativeOrderDistribution out;
  out.p = p;
  out.a = numtheory::checked_mul(ra.a, p) + 1;
  out.d = ra.d + 1;
  for (std::uint64_t k = 0; k <= out.d; ++k) {
    const auto kk = static_cast<std::int64_t>(k);
    out.r.push_back((BigRational(1) - inv_p) * ra.at(kk) + rat_pow(ra.at(kk - 1), p) * inv_p);
  }
  out.validate();
  return out;
}

double FloatDistribution::at(std::int64_t k) const {
  if (k <= 0) return 1.0;
  if (static_cast<std::uint64_t>(k) > d) return 0.0;
  return r[static_cast<std::size_t>(k)];
}

FloatDistribution to_float(const CumulativeOrderDistribution& dist) {
  FloatDistribution out;
  out.p = dist.p;
  out.a = static_cast<double>(dist.a);
  out.d = dist.d;
  for (const auto& v : dist.r) out.r.push_back(v.to_double());
  return out;
}

FloatDistribution cor51_step(const FloatDistribution& ra) {
  const double p = static_cast<double>(ra.p);
  FloatDistribution out;
  out.p = ra.p;
  out.a = ra.a * p + 1;
  out.d = ra.d + 1;
  for (std::uint64_t k = 0; k <= out.d; ++k) {
    const auto kk = static_cast<std::int64_t>(k);
    out.r.push_back((1 - 1 / p) * ra.at(kk) + std::pow(ra.at(kk - 1), p) / p);
  }
  return out;
}

TowerTrajectory iterate_tower(const CumulativeOrderDistribution& r0, std::uint64_t steps, TowerMode mode) {
  if (steps > kMaxTowerSteps) {
    throw PreconditionError("iterate_tower: at most " + std::to_string(kMaxTowerSteps) + " steps");
  }
  r0.validate();
  TowerTrajectory traj;
  traj.mode = mode;
  if (mode == TowerMode::Float) {
    traj.approx.push_back(to_float(r0));
    for (std::uint64_t n = 1; n <= steps; ++n) traj.approx.push_back(cor51_step(traj.approx.back()));
    return traj;
  }
  traj.exact.push_back(r0);
  for (std::uint64_t n = 1; n <= steps; ++n) {
    try {
      traj.exact.push_back(cor51_step(traj.exact.back()));
    } catch (const ResourceError& err) {
      throw ResourceError("tower step " + std::to_string(n) + ": " + err.what());
    }
  }
  return traj;
}

BigRational psi(const BigRational& avg_wreath, std::uint64_t max_order_a, const BigRational& avg_b) {
  if (max_order_a == 0) throw PreconditionError("psi: m(A) must be positive");
  if (avg_b.sign() <= 0) throw PreconditionError("psi: a(B) must be positive");
  return avg_wreath / (BigRational(to_bigint(max_order_a)) * avg_b);
}

BigRational psi_from_distribution(const CumulativeOrderDistribution& ra, const KCoefficients& kb) {
  if (ra.p != kb.p) throw PreconditionError("psi: prime mismatch");
  const std::uint64_t p = ra.p;
  const auto d = static_cast<std::int64_t>(ra.d);
  BigRational total;
  for (std::uint64_t r = 0; r <= kb.b; ++r) {
    if (kb.k[r].is_zero()) continue;
    const std::uint64_t exponent = numtheory::checked_pow(p, r);
    BigRational inner;
    for (std::int64_t m = 0; m < d; ++m) {
      inner += power_of(p, m) * rat_pow(ra.at(d - m), exponent);
    }
    total += kb.k[r] * inner;
  }
  return BigRational(1) - BigRational(to_bigint(p - 1)) * power_of(p, -d) * total;
}

std::vector<BigRational> psi_tower(const CumulativeOrderDistribution& r0, const OrderSpectrum& spec_b,
                                   std::uint64_t steps) {
  const auto kb = k_coefficients(spec_b, r0.p);
  const auto traj = iterate_tower(r0, steps, TowerMode::Exact);
  std::vector<BigRational> out;
  for (std::size_t n = 0; n < traj.exact.size(); ++n) {
    try {
      out.push_back(psi_from_distribution(traj.exact[n], kb));
    } catch (const ResourceError& err) {
      throw ResourceError("tower step " + std::to_string(n) + ": " + err.what());
    }
  }
  return out;
}

std::vector<double> psi_tower_float(const CumulativeOrderDistribution& r0, const OrderSpectrum& spec_b,
                                    std::uint64_t steps) {
  const auto kb = k_coefficients(spec_b, r0.p);
  const auto traj = iterate_tower(r0, steps, TowerMode::Float);
  const double p = static_cast<double>(r0.p);
  std::vector<double> out;
  for (const auto& dist : traj.approx) {
    const auto d = static_cast<std::int64_t>(dist.d);
    double total = 0;
    for (std::uint64_t r = 0; r <= kb.b; ++r) {
      double inner = 0;
      for (std::int64_t m = 0; m < d; ++m) {
        // p^m / p^d folded into one factor to stay in range for large d
        inner += std::pow(p, static_cast<double>(m - d)) * std::pow(dist.at(d - m), std::pow(p, r));
      }
      total += kb.k[r].to_double() * inner;
    }
    out.push_back(1 - (p - 1) * total);
  }
  return out;
}

bool AbelianCheck::holds() const {
  if (delta.sign() < 0 || delta > delta_bound) return false;
  return cyclic_b || psi >= lower;
}

AbelianCheck theorem6_check(std::span<const std::uint64_t> exponents_a, const OrderSpectrum& spec_b) {
  const std::uint64_t p = prime_of(spec_b);
  if (p == 0) throw PreconditionError("theorem6_check: B must be a nontrivial p-group");
  std::vector<std::uint64_t> sorted(exponents_a.begin(), exponents_a.end());
  std::sort(sorted.begin(), sorted.end());

  AbelianCheck out;
  out.t = t_invariant(sorted);
  const auto profile = abelian_profile(p, sorted);
  const auto kc = k_coefficients(spec_b, p);
  const BigRational avg_b = average_order(spec_b);
  const BigRational avg_w = theorem2_average(profile, spec_b);
  const BigRational pd(big_power(p, profile.d));
  const auto d = static_cast<std::int64_t>(profile.d);
  const auto tp = static_cast<std::int64_t>(numtheory::checked_mul(out.t, p));

  out.psi = psi(avg_w, numtheory::checked_pow(p, profile.d), avg_b);
  out.lower = BigRational(1) - power_of(p, -tp);
  out.cyclic_b = !kc.k[0].is_zero();

  const BigInt order = big_power(p, profile.a);
  BigRational first_order;
  for (std::uint64_t m = 0; m < profile.d; ++m) {
    first_order += BigRational(big_power(p, m)) * rat(profile.s_at(m), order);
  }
  out.delta = pd * avg_b - avg_w - BigRational(to_bigint(p - 1)) * avg_b * kc.k[0] * first_order;
  out.delta_bound = avg_b * power_of(p, d - tp);
  return out;
}

std::vector<BigRational> theorem7_sequence(const OrderSpectrum& spec_b, std::uint64_t p, std::uint64_t n_max) {
  if (n_max < 1 || n_max > kMaxLimitTerms) {
    throw PreconditionError("theorem7_sequence: nmax must be in 1.." + std::to_string(kMaxLimitTerms));
  }
  if (!numtheory::is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  std::vector<BigRational> out;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    out.push_back(theorem2_average(elementary_abelian_profile(p, n), spec_b));
  }
  return out;
}

BigRational average_order_limit(const OrderSpectrum& spec_b, std::uint64_t p, std::uint64_t r) {
  if (!numtheory::is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  return BigRational(big_power(p, r)) * average_order(spec_b);
}

BigRational elementary_limit_reference_form(std::uint64_t p, std::uint64_t b, std::uint64_t r) {
  const auto bb = static_cast<std::int64_t>(b);
  const auto rr = static_cast<std::int64_t>(r);
  return power_of(p, rr + bb + 1) - BigRational(to_bigint(p - 1)) * power_of(p, rr - bb);
}

BigRational lemma2_cyclic_average(std::uint64_t p, std::uint64_t b) {
  if (!numtheory::is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  if (b < 1) throw PreconditionError("lemma2_cyclic_average: b must be at least 1");
  const auto bb = static_cast<std::int64_t>(b);
  const BigRational inv = power_of(p, -bb);
  return inv + rat(to_bigint(p), to_bigint(p + 1)) * (power_of(p, bb) - inv);
}

}  // namespace wreath
