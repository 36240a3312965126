#include "doctest.h"
#include "wreath/errors.hpp"
#include "wreath/formulas.hpp"
#include "wreath/groups.hpp"
#include "wreath/oracle.hpp"
#include "wreath/spectra.hpp"

using namespace wreath;

namespace {

OrderSpectrum spec(const FiniteGroup& g) { return spectrum(g); }

PGroupProfile profile(const FiniteGroup& g) {
  const auto s = spectrum(g);
  return profile_from_spectrum(s, prime_of(s));
}

// brute-force ground truth
BigRational oracle_average(const FiniteGroup& a, const FiniteGroup& b) {
  return average_order(oracle::brute_force_spectrum(a, b));
}

}  // namespace

TEST_CASE("theorem1_average pinned values") {
  CHECK(theorem1_average(spec(cyclic(2)), spec(cyclic(2))) == rat(19, 8));
  CHECK(theorem1_average(spec(cyclic(2)), spec(cyclic(3))) == rat(29, 8));
  CHECK(theorem1_average(spec(symmetric(3)), spec(cyclic(2))) == rat(283, 72));
  CHECK(theorem1_average(spec(cyclic(4)), spec(cyclic(2))) == rat(143, 32));

  CHECK(oracle_average(cyclic(2), cyclic(3)) == rat(29, 8));
  CHECK(oracle_average(symmetric(3), cyclic(2)) == rat(283, 72));
  CHECK(oracle_average(cyclic(4), cyclic(2)) == rat(143, 32));
}

TEST_CASE("theorem1_average rejects trivial groups") {
  const OrderSpectrum trivial(1, {{1, 1}});
  CHECK_THROWS_AS(theorem1_average(trivial, spec(cyclic(2))), PreconditionError);
  CHECK_THROWS_AS(theorem1_average(spec(cyclic(2)), trivial), PreconditionError);
}

TEST_CASE("k_coefficients") {
  const auto c2 = k_coefficients(spec(cyclic(2)), 2);
  CHECK(c2.k == std::vector<BigRational>{rat(2, 3), rat(1, 3)});
  // noncyclic B: no element of order |B|, so k_0 = 0
  const auto v4 = k_coefficients(spec(elementary_abelian(2, 2)), 2);
  CHECK(v4.k == std::vector<BigRational>{0, rat(6, 7), rat(1, 7)});
  const auto c4 = k_coefficients(spec(cyclic(4)), 2);
  CHECK(c4.k == std::vector<BigRational>{rat(8, 11), rat(2, 11), rat(1, 11)});

  for (const auto& g : {dihedral(4), quaternion8(), cyclic(9), elementary_abelian(3, 2), cyclic(8)}) {
    const auto s = spec(g);
    const auto kc = k_coefficients(s, prime_of(s));
    BigRational sum;
    for (const auto& k : kc.k) {
      REQUIRE(k.sign() >= 0);
      sum += k;
    }
    REQUIRE(sum == 1);
  }
  CHECK_THROWS_AS(k_coefficients(spec(symmetric(3)), 2), PreconditionError);
  CHECK_THROWS_AS(k_coefficients(spec(cyclic(3)), 2), PreconditionError);
}

TEST_CASE("theorem2_average") {
  CHECK(theorem2_average(profile(cyclic(4)), spec(cyclic(2))) == rat(143, 32));
  CHECK(theorem2_average(profile(cyclic(4)), spec(elementary_abelian(2, 2))) == rat(6271, 1024));
  CHECK(oracle_average(cyclic(4), elementary_abelian(2, 2)) == rat(6271, 1024));

  // (Z/2)^n wr C2 = 3 - 2^-n - 4^-n / 2
  for (std::uint64_t n = 1; n <= 12; ++n) {
    const BigRational expected = BigRational(3) - rat_pow(rat(1, 2), n) - rat_pow(rat(1, 4), n) / 2;
    REQUIRE(theorem2_average(elementary_abelian_profile(2, n), spec(cyclic(2))) == expected);
  }
  CHECK(theorem2_average(elementary_abelian_profile(2, 2), spec(cyclic(2))) == rat(87, 32));
  CHECK(oracle_average(elementary_abelian(2, 2), cyclic(2)) == rat(87, 32));

  CHECK_THROWS_AS(theorem2_average(profile(cyclic(4)), spec(cyclic(3))), PreconditionError);
}

TEST_CASE("theorem3_check") {
  CHECK(theorem3_check(rat(3, 2), rat(19, 8), 2, 1));
  CHECK(theorem3_check(rat(3, 2), rat(143, 32), 2, 2));
  CHECK(theorem3_check(rat(7, 4), rat(6271, 1024), 2, 2));
  CHECK_FALSE(theorem3_check(rat(3, 2), rat(1, 1), 2, 1));
  CHECK_FALSE(theorem3_check(rat(3, 2), rat(4, 1), 2, 1));
}

TEST_CASE("theorem4_remainder") {
  CHECK(theorem4_remainder(profile(cyclic(2)), spec(cyclic(2))) == 0);
  CHECK(theorem4_remainder(profile(cyclic(4)), spec(cyclic(2))) == rat(9, 32));
  CHECK(theorem4_bound(profile(cyclic(4)), spec(cyclic(2))) == rat(3, 2));

  const auto r8 = theorem4_remainder(profile(cyclic(8)), spec(cyclic(2)));
  CHECK(r8.sign() >= 0);
  CHECK(r8 <= BigRational(3) * rat(3, 2));
  CHECK(r8 == theorem4_remainder(profile(cyclic(8)), spec(cyclic(2))));
}

TEST_CASE("theorem5_distribution") {
  const auto c2 = r_distribution(cyclic(2), 2);
  const auto c4 = r_distribution(cyclic(4), 2);
  const auto d = theorem5_distribution(c2, c2);
  CHECK(d.r == std::vector<BigRational>{1, rat(3, 4), rat(1, 8)});
  CHECK(d.d == 2);
  CHECK(d.a == 3);
  CHECK(theorem5_distribution(c4, c2).r == std::vector<BigRational>{1, rat(3, 4), rat(1, 4), rat(1, 32)});
  CHECK(theorem5_distribution(c4, c2) == r_distribution(oracle::brute_force_spectrum(cyclic(4), cyclic(2)), 2));
  CHECK_THROWS_AS(theorem5_distribution(c2, r_distribution(cyclic(3), 3)), PreconditionError);
}

TEST_CASE("cor51_step") {
  const auto c2 = r_distribution(cyclic(2), 2);
  CHECK(cor51_step(c2).r == std::vector<BigRational>{1, rat(3, 4), rat(1, 8)});
  CHECK(cor51_step(cor51_step(c2)).at(1) == rat(7, 8));

  // (C2 x C2) wr C2, checked against 32-element enumeration
  const auto v4 = r_distribution(elementary_abelian(2, 2), 2);
  CHECK(cor51_step(v4).r == std::vector<BigRational>{1, rat(5, 8), rat(1, 32)});
  CHECK(cor51_step(v4) == r_distribution(oracle::brute_force_spectrum(elementary_abelian(2, 2), cyclic(2)), 2));

  for (const auto& g : {cyclic(4), dihedral(4), quaternion8()}) {
    const auto r = r_distribution(g, 2);
    REQUIRE(cor51_step(r) == theorem5_distribution(r, r_distribution(cyclic(2), 2)));
  }
}

TEST_CASE("iterate_tower") {
  const auto c2 = r_distribution(cyclic(2), 2);
  const auto zero = iterate_tower(c2, 0);
  REQUIRE(zero.exact.size() == 1);
  CHECK(zero.exact[0] == c2);

  const auto traj = iterate_tower(c2, 12);
  REQUIRE(traj.exact.size() == 13);
  CHECK(traj.exact[12].at(1) == BigRational(1) - rat_pow(rat(1, 2), 13));
  for (std::size_t n = 0; n <= 12; ++n) {
    REQUIRE(traj.exact[n].at(1) == BigRational(1) - rat_pow(rat(1, 2), n + 1));
  }
  for (std::size_t n = 1; n <= 12; ++n) {
    for (std::int64_t k = 0; k <= static_cast<std::int64_t>(traj.exact[n].d); ++k) {
      REQUIRE(traj.exact[n].at(k) >= traj.exact[n - 1].at(k));
    }
  }
  CHECK_THROWS_AS(iterate_tower(c2, 65), PreconditionError);
}

TEST_CASE("exact tower reports the step that exhausts the bit budget") {
  // A_n has order 2^(2^(n+1) - 1); r_d = 2^-1023 first exceeds 512 bits at n = 9
  const ScopedBitBudget budget(512);
  try {
    (void)iterate_tower(r_distribution(cyclic(2), 2), 20);
    FAIL("expected a resource error");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("tower step 9") != std::string::npos);
  }
  // float mode keeps going and tracks the exact values where both exist
  const auto approx = iterate_tower(r_distribution(cyclic(2), 2), 40, TowerMode::Float);
  REQUIRE(approx.approx.size() == 41);
  CHECK(approx.approx[5].at(1) == doctest::Approx(1 - 1.0 / 64));
}

TEST_CASE("psi") {
  CHECK(psi(rat(19, 8), 2, rat(3, 2)) == rat(19, 24));
  CHECK(psi(rat(143, 32), 4, rat(3, 2)) == rat(143, 192));
  CHECK(psi(rat(6271, 1024), 4, rat(7, 4)) == rat(6271, 7168));
  CHECK_THROWS_AS(psi(rat(1, 1), 0, rat(1, 1)), PreconditionError);
  CHECK_THROWS_AS(psi(rat(1, 1), 2, rat(0, 1)), PreconditionError);
}

TEST_CASE("psi_tower") {
  const auto c2 = r_distribution(cyclic(2), 2);
  const auto values = psi_tower(c2, spec(cyclic(2)), 2);
  CHECK(values[0] == rat(19, 24));
  // A_1 = D4, A_2 = D4 wr C2
  const auto d4 = spectrum(wreath_product(cyclic(2), cyclic(2)));
  CHECK(values[1] == psi(theorem1_average(d4, spec(cyclic(2))), 4, rat(3, 2)));
  const auto a2 = oracle::brute_force_spectrum(wreath_product(cyclic(2), cyclic(2)), cyclic(2));
  CHECK(values[2] == psi(theorem1_average(a2, spec(cyclic(2))), 8, rat(3, 2)));

  const auto approx = psi_tower_float(c2, spec(cyclic(2)), 2);
  for (std::size_t n = 0; n < 3; ++n) CHECK(approx[n] == doctest::Approx(values[n].to_double()));
}

TEST_CASE("theorem6_check") {
  const auto v4 = spec(elementary_abelian(2, 2));
  const std::vector<std::uint64_t> c4{2}, c2{1}, klein{1, 1};

  const auto a = theorem6_check(c4, v4);
  CHECK(a.psi == rat(6271, 7168));
  CHECK(a.lower == rat(3, 4));
  CHECK_FALSE(a.cyclic_b);
  CHECK(a.holds());

  const auto b = theorem6_check(c2, v4);
  CHECK(b.psi >= rat(3, 4));
  CHECK(b.psi == psi(oracle_average(cyclic(2), elementary_abelian(2, 2)), 2, rat(7, 4)));
  CHECK(b.holds());

  const auto c = theorem6_check(klein, v4);
  CHECK(c.t == 2);
  CHECK(c.lower == rat(15, 16));
  CHECK(c.psi >= rat(15, 16));
  CHECK(c.psi == psi(oracle_average(elementary_abelian(2, 2), elementary_abelian(2, 2)), 2, rat(7, 4)));
  CHECK(c.holds());

  const auto cyc = theorem6_check(c4, spec(cyclic(4)));
  CHECK(cyc.cyclic_b);
  CHECK(cyc.holds());
}

TEST_CASE("theorem7_sequence") {
  const auto c2 = spec(cyclic(2));
  const auto seq = theorem7_sequence(c2, 2, 10);
  CHECK(seq[1] == rat(87, 32));
  const BigRational gap = BigRational(3) - seq[9];
  CHECK(gap.sign() >= 0);
  CHECK(gap <= rat(3, 2) * rat_pow(rat(1, 2), 10));

  const auto e3 = spec(elementary_abelian(2, 3));
  CHECK(average_order(e3) == rat(15, 8));
  CHECK(average_order_limit(e3, 2, 1) == rat(15, 4));
  CHECK_THROWS_AS(theorem7_sequence(c2, 2, 41), PreconditionError);
  CHECK_THROWS_AS(theorem7_sequence(c2, 2, 0), PreconditionError);
  CHECK_THROWS_AS(theorem7_sequence(c2, 3, 4), PreconditionError);
}

TEST_CASE("elementary abelian limit: computed value versus the reference closed form") {
  // p^r a((Z/p)^b) = p^(r+1) - (p-1) p^(r-b)
  for (std::uint64_t p : {2, 3}) {
    for (std::uint64_t b = 3; b <= 4; ++b) {
      for (std::uint64_t r = 2; r + 1 <= b; ++r) {
        const auto eb = spec(elementary_abelian(p, b));
        const BigRational computed = average_order_limit(eb, p, r);
        const BigRational pp(static_cast<long>(p));
        REQUIRE(computed == rat_pow(pp, r + 1) - (pp - 1) * rat_pow_signed(pp, static_cast<std::int64_t>(r) - static_cast<std::int64_t>(b)));
        REQUIRE(computed != elementary_limit_reference_form(p, b, r));
      }
    }
  }
}

TEST_CASE("lemma2_cyclic_average") {
  CHECK(lemma2_cyclic_average(2, 1) == rat(3, 2));
  CHECK(lemma2_cyclic_average(2, 2) == rat(11, 4));
  CHECK(lemma2_cyclic_average(3, 2) == rat(61, 9));
  CHECK_THROWS_AS(lemma2_cyclic_average(4, 2), PreconditionError);
  CHECK_THROWS_AS(lemma2_cyclic_average(2, 0), PreconditionError);
}

TEST_CASE("profiles") {
  const std::vector<std::uint64_t> exps{1, 2};
  const auto p = abelian_profile(2, exps);
  CHECK(p.a == 3);
  CHECK(p.d == 2);
  CHECK(p.s == std::vector<BigInt>{1, 4, 8, 8});
  CHECK(profile_from_distribution(distribution_from_profile(p)).s == p.s);

  PGroupProfile broken = p;
  broken.s[1] = 3;
  CHECK_THROWS_AS(broken.validate(), InvariantError);
}

TEST_CASE("profile of a nonabelian p-group: torsion counts need not divide |A|") {
  // D4 has six elements with x^2 = 1
  const auto profile = profile_from_spectrum(spectrum(dihedral(4)), 2);
  CHECK(profile.s == std::vector<BigInt>{1, 6, 8, 8});
  CHECK(theorem2_average(profile, spectrum(cyclic(2))) == theorem1_average(spectrum(dihedral(4)), spectrum(cyclic(2))));

  PGroupProfile bad = profile;
  bad.s[1] = 5;  // not a multiple of p
  CHECK_THROWS_AS(bad.validate(), InvariantError);
}
