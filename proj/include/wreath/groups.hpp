#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wreath/exact.hpp"

namespace wreath {

using Element = std::uint32_t;

// Largest group for which a full Cayley table is materialized.
inline constexpr std::size_t kTableCap = 4096;

// Groups up to this size get a full O(n^3) associativity check; larger ones
// are sampled.
inline constexpr std::size_t kFullAssociativityCheck = 512;

// Finite group given by its Cayley table, identity at index 0.
// table[i * size + j] is the index of i*j.
class FiniteGroup {
 public:
  FiniteGroup(std::size_t size, std::vector<Element> table, std::string name);

  std::size_t size() const noexcept { return size_; }
  const std::string& name() const noexcept { return name_; }

  Element mul(Element a, Element b) const noexcept { return table_[a * size_ + b]; }
  Element inverse(Element a) const noexcept { return inverse_[a]; }
  std::span<const Element> row(Element a) const noexcept {
    return {table_.data() + a * size_, size_};
  }
  std::span<const Element> table() const noexcept { return table_; }

 private:
  void validate() const;

  std::size_t size_;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::string name_;
};

FiniteGroup cyclic(std::uint64_t n);
FiniteGroup dihedral(std::uint64_t n);  // order 2n
FiniteGroup quaternion8();
FiniteGroup symmetric(std::uint64_t n);  // 2 <= n <= 6
FiniteGroup elementary_abelian(std::uint64_t p, std::uint64_t k);
/// Z/p^e1 x ... x Z/p^ek in the given order.
FiniteGroup abelian(std::uint64_t p, std::span<const std::uint64_t> exponents);

/// Componentwise product; (g, h) has index g * |H| + h.
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

/// |A|^|B| * |B|.
BigInt wreath_size(const FiniteGroup& a, const FiniteGroup& b);

// (alpha, x) in A wr B: alpha is indexed by the elements of B.
struct WreathElement {
  std::vector<Element> base;
  Element top = 0;

  bool operator==(const WreathElement&) const = default;
};

// Multiplication in A wr B without a materialized table:
//   (alpha, x)(beta, y) = (alpha * (x . beta), xy),  (x . beta)_b = beta_{x^-1 b}.
// Holds pointers to both groups, which must outlive it.
class WreathArithmetic {
 public:
  WreathArithmetic(const FiniteGroup& a, const FiniteGroup& b);

  const FiniteGroup& base_group() const noexcept { return *a_; }
  const FiniteGroup& top_group() const noexcept { return *b_; }

  WreathElement identity() const;
  bool is_identity(const WreathElement& g) const;

  /// out = u * v. `out` must not alias u or v.
  void multiply_into(const WreathElement& u, const WreathElement& v, WreathElement& out) const;
  WreathElement multiply(const WreathElement& u, const WreathElement& v) const;

  /// Least k >= 1 with g^k = 1, by repeated multiplication.
  std::uint64_t order(const WreathElement& g) const;

  /// Enumeration index: top varies slowest, base in mixed radix with
  /// base[0] least significant. Requires the group size to fit in 64 bits.
  std::uint64_t index_of(const WreathElement& g) const;
  WreathElement element_at(std::uint64_t index) const;

 private:
  const FiniteGroup* a_;
  const FiniteGroup* b_;
  // shift_[x * |B| + b] = x^-1 b
  std::vector<Element> shift_;
  // |A|^|B|, or 0 when it does not fit in 64 bits
  std::uint64_t base_count_ = 0;
};

/// Explicit Cayley table of A wr B in the WreathArithmetic enumeration order.
/// Throws SizeCapError (with the would-be size) above kTableCap.
FiniteGroup wreath_product(const FiniteGroup& a, const FiniteGroup& b);

/// Least k >= 1 with g^k = 1. Throws InvariantError if no k <= |G| works.
std::uint64_t element_order(const FiniteGroup& g, Element x);

}  // namespace wreath
