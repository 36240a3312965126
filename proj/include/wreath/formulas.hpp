#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wreath/exact.hpp"
#include "wreath/spectra.hpp"

namespace wreath {

// Torsion profile of a p-group A: s[m] = #{g : g^(p^m) = 1} for m = 0..a.
struct PGroupProfile {
  std::uint64_t p = 0;
  std::uint64_t a = 0;  // |A| = p^a
  std::uint64_t d = 0;  // m(A) = p^d
  std::vector<BigInt> s;

  /// s_{p^m}, equal to p^a for m >= d.
  const BigInt& s_at(std::uint64_t m) const { return s[std::min<std::uint64_t>(m, a)]; }

  void validate() const;
};

PGroupProfile profile_from_spectrum(const OrderSpectrum& spec, std::uint64_t p);
PGroupProfile profile_from_distribution(const CumulativeOrderDistribution& dist);
CumulativeOrderDistribution distribution_from_profile(const PGroupProfile& profile);

/// Profile of Z/p^e1 x ... x Z/p^ek from the exponents alone:
/// s_{p^m} = prod_i p^min(m, e_i).
PGroupProfile abelian_profile(std::uint64_t p, std::span<const std::uint64_t> exponents);

/// Profile of (Z/pZ)^n: a = n, d = 1.
PGroupProfile elementary_abelian_profile(std::uint64_t p, std::uint64_t n);

// k_n = p^-n d_{p^(b-n)} / a(B), n = 0..b.
struct KCoefficients {
  std::uint64_t p = 0;
  std::uint64_t b = 0;
  std::vector<BigRational> k;
};

/// Exact a(A wr B) from the order spectra of arbitrary finite A, B
/// (|A|, |B| >= 2): sum over m | |A|, n | |B| of
///   (m/n) (s_m / |A|)^n d_{|B|/n} tau(|A|/m).
BigRational theorem1_average(const OrderSpectrum& spec_a, const OrderSpectrum& spec_b);

KCoefficients k_coefficients(const OrderSpectrum& spec_b, std::uint64_t p);

/// a(A wr B) = p^d a(B) - (p-1) a(B) sum_n k_n sum_{m<d} p^m (s_{p^m}/p^a)^(p^n)
/// for p-groups A, B over the same prime.
BigRational theorem2_average(const PGroupProfile& profile_a, const OrderSpectrum& spec_b);

/// a(B) <= a(A wr B) <= p^d a(B)
bool theorem3_check(const BigRational& avg_b, const BigRational& avg_wreath, std::uint64_t p,
                    std::uint64_t d);

/// p^d a(B) - a(A wr B) - (p-1) a(B) sum_n k_n p^(d-1) (s_{p^(d-1)}/p^a)^(p^n).
/// Lies in [0, (p^(d-1) - 1) a(B)].
BigRational theorem4_remainder(const PGroupProfile& profile_a, const OrderSpectrum& spec_b);

/// Upper bound (p^(d-1) - 1) a(B) for theorem4_remainder.
BigRational theorem4_bound(const PGroupProfile& profile_a, const OrderSpectrum& spec_b);

/// Cumulative order distribution of A wr B from those of A and B.
CumulativeOrderDistribution theorem5_distribution(const CumulativeOrderDistribution& ra,
                                                  const CumulativeOrderDistribution& rb);

/// Distribution of A wr C_p: r'_k = (1 - 1/p) r_k + r_{k-1}^p / p.
CumulativeOrderDistribution cor51_step(const CumulativeOrderDistribution& ra);

/// Double-precision distribution for tower steps beyond the exact bit budget.
/// Values carry no error guarantee.
struct FloatDistribution {
  std::uint64_t p = 0;
  double a = 0;  // log_p |G|, held as double since it grows like p^n
  std::uint64_t d = 0;
  std::vector<double> r;

  double at(std::int64_t k) const;
};

FloatDistribution to_float(const CumulativeOrderDistribution& dist);
FloatDistribution cor51_step(const FloatDistribution& ra);

enum class TowerMode { Exact, Float };

inline constexpr std::uint64_t kMaxTowerSteps = 64;

// Trajectory of A_0 = A, A_n = A_{n-1} wr C_p. Exactly one of the vectors is
// filled, according to `mode`.
struct TowerTrajectory {
  TowerMode mode = TowerMode::Exact;
  std::vector<CumulativeOrderDistribution> exact;
  std::vector<FloatDistribution> approx;
};

/// In exact mode a ResourceError names the step that broke the bit budget.
TowerTrajectory iterate_tower(const CumulativeOrderDistribution& r0, std::uint64_t steps,
                              TowerMode mode = TowerMode::Exact);

/// a(A wr B) / (m(A) a(B))
BigRational psi(const BigRational& avg_wreath, std::uint64_t max_order_a, const BigRational& avg_b);

/// psi(A, B) written in terms of A's cumulative distribution:
///   1 - (p-1)/p^d sum_r k_r sum_{m<d} p^m r_{d-m}^(p^r)
BigRational psi_from_distribution(const CumulativeOrderDistribution& ra, const KCoefficients& kb);

/// psi(A_n, B) for n = 0..steps along the C_p tower over A.
std::vector<BigRational> psi_tower(const CumulativeOrderDistribution& r0,
                                   const OrderSpectrum& spec_b, std::uint64_t steps);
std::vector<double> psi_tower_float(const CumulativeOrderDistribution& r0,
                                    const OrderSpectrum& spec_b, std::uint64_t steps);

struct AbelianCheck {
  std::uint64_t t = 0;
  BigRational psi;
  BigRational lower;        // 1 - p^(-tp)
  BigRational delta;
  BigRational delta_bound;  // a(B) p^(d - tp)
  bool cyclic_b = false;

  /// 0 <= delta <= delta_bound, plus psi >= lower when B is noncyclic.
  bool holds() const;
};

/// Inequality chain for abelian A = Z/p^e1 x ... (exponents in any order)
/// and a p-group B.
AbelianCheck theorem6_check(std::span<const std::uint64_t> exponents_a, const OrderSpectrum& spec_b);

inline constexpr std::uint64_t kMaxLimitTerms = 40;

/// a((Z/pZ)^n wr B) for n = 1..n_max.
std::vector<BigRational> theorem7_sequence(const OrderSpectrum& spec_b, std::uint64_t p,
                                           std::uint64_t n_max);

/// p^r a(B), the limit reached by r nested (Z/pZ)^n layers over B.
BigRational average_order_limit(const OrderSpectrum& spec_b, std::uint64_t p, std::uint64_t r);

/// The reference closed form p^(r+b+1) - (p-1)/p^(b-r) for B = (Z/pZ)^b, kept
/// only so it can be reported next to the computed p^r a(B); the two differ.
BigRational elementary_limit_reference_form(std::uint64_t p, std::uint64_t b, std::uint64_t r);

/// p^-b + p/(p+1) (p^b - p^-b), the average order of Z/p^bZ.
BigRational lemma2_cyclic_average(std::uint64_t p, std::uint64_t b);

}  // namespace wreath
