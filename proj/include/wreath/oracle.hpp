#pragma once

#include <cstdint>

#include "wreath/groups.hpp"
#include "wreath/spectra.hpp"

namespace wreath::oracle {

// Largest |A|^|B| |B| the brute-force enumeration accepts, as a power of two.
inline constexpr unsigned kDefaultCapBits = 21;

struct Options {
  unsigned cap_bits = kDefaultCapBits;
  unsigned workers = 1;
};

/// Order spectrum of A wr B by enumerating every element and taking its order
/// by repeated semidirect multiplication. Work is partitioned by top element
/// across `workers` threads; the merged counts do not depend on the split.
/// Also asserts order(x) | order((alpha, x)) for every element.
/// Throws SizeCapError above 2^cap_bits elements.
OrderSpectrum brute_force_spectrum(const FiniteGroup& a, const FiniteGroup& b, const Options& opts = {});

/// Order spectrum of A wr B from the orbit structure of left multiplication
/// on B: for x of order d the order of (alpha, x^-1) is d times the lcm of the
/// orders of |B|/d independent, uniformly distributed orbit products.
/// Only |A| and |B| need to be enumerable, not the wreath product itself.
OrderSpectrum orbit_spectrum(const FiniteGroup& a, const FiniteGroup& b);

}  // namespace wreath::oracle
