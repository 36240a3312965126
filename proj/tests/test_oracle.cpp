#include "doctest.h"
#include "perm_oracle.hpp"
#include "wreath/errors.hpp"
#include "wreath/oracle.hpp"

using namespace wreath;

namespace {

std::map<std::uint64_t, std::uint64_t> plain(const OrderSpectrum& s) {
  std::map<std::uint64_t, std::uint64_t> out;
  for (const auto& [k, v] : s.counts()) out[k] = to_u64(v);
  return out;
}

}  // namespace

TEST_CASE("brute force spectra") {
  using M = std::map<std::uint64_t, std::uint64_t>;
  CHECK(plain(oracle::brute_force_spectrum(cyclic(2), cyclic(2))) == M{{1, 1}, {2, 5}, {4, 2}});
  CHECK(plain(oracle::brute_force_spectrum(cyclic(2), cyclic(3))) == M{{1, 1}, {2, 7}, {3, 8}, {6, 8}});
  CHECK(plain(oracle::brute_force_spectrum(cyclic(4), cyclic(2))) == M{{1, 1}, {2, 7}, {4, 16}, {8, 8}});
}

TEST_CASE("brute force agrees with the permutation-group reference") {
  const auto c4 = perm_oracle::generate(perm_oracle::cyclic(4));
  CHECK(plain(oracle::brute_force_spectrum(cyclic(2), cyclic(4))) ==
        perm_oracle::spectrum(perm_oracle::generate(perm_oracle::wreath_action(perm_oracle::cyclic(2), c4))));
  const auto s3 = perm_oracle::generate(perm_oracle::symmetric3());
  CHECK(plain(oracle::brute_force_spectrum(cyclic(2), symmetric(3))) ==
        perm_oracle::spectrum(perm_oracle::generate(perm_oracle::wreath_action(perm_oracle::cyclic(2), s3))));
}

TEST_CASE("orbit oracle matches brute force") {
  const std::vector<FiniteGroup> groups = {cyclic(2), cyclic(3), cyclic(4), elementary_abelian(2, 2),
                                           symmetric(3), quaternion8()};
  for (const auto& a : groups) {
    for (const auto& b : groups) {
      if (wreath_size(a, b) > (BigInt(1) << 18)) continue;
      REQUIRE(oracle::orbit_spectrum(a, b) == oracle::brute_force_spectrum(a, b));
    }
  }
  CHECK(average_order(oracle::orbit_spectrum(symmetric(3), cyclic(2))) == rat(283, 72));
}

TEST_CASE("orbit oracle scales past the brute-force cap") {
  const auto s = oracle::orbit_spectrum(cyclic(8), cyclic(32));
  CHECK(s.group_size() == int_pow(BigInt(8), 32) * 32);
  CHECK(max_order(s) == 8 * 32);
}

TEST_CASE("worker count does not change results") {
  const auto one = oracle::brute_force_spectrum(cyclic(4), elementary_abelian(2, 2), {21, 1});
  const auto four = oracle::brute_force_spectrum(cyclic(4), elementary_abelian(2, 2), {21, 4});
  const auto many = oracle::brute_force_spectrum(cyclic(4), elementary_abelian(2, 2), {21, 64});
  CHECK(one == four);
  CHECK(one == many);
}

TEST_CASE("size cap") {
  CHECK_THROWS_AS(oracle::brute_force_spectrum(cyclic(8), cyclic(8)), SizeCapError);
  try {
    (void)oracle::brute_force_spectrum(cyclic(2), cyclic(4), {5, 1});
    FAIL("expected cap");
  } catch (const SizeCapError& e) {
    CHECK(e.would_be_size() == "64");
  }
  CHECK_NOTHROW(oracle::brute_force_spectrum(cyclic(2), cyclic(4), {6, 1}));
}
