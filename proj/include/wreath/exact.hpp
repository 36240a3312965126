#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

#include "json.hpp"

namespace wreath {

using BigInt = mpz_class;

// Process-wide limit on the bit length of any integer built by the exact
// layer (numerators, denominators, powers). Default 2^22 bits.
inline constexpr std::uint64_t kDefaultBitBudget = std::uint64_t{1} << 22;

std::uint64_t bit_budget();
void set_bit_budget(std::uint64_t bits);

class ScopedBitBudget {
 public:
  explicit ScopedBitBudget(std::uint64_t bits) : saved_(bit_budget()) { set_bit_budget(bits); }
  ~ScopedBitBudget() { set_bit_budget(saved_); }
  ScopedBitBudget(const ScopedBitBudget&) = delete;
  ScopedBitBudget& operator=(const ScopedBitBudget&) = delete;

 private:
  std::uint64_t saved_;
};

/// Number of bits in |x| (0 for x == 0).
std::uint64_t bit_length(const BigInt& x);

/// Throws ResourceError if |x| needs more bits than the current budget.
void check_budget(const BigInt& x, const char* what);

/// base^e with the size checked against the budget before computing.
BigInt int_pow(const BigInt& base, std::uint64_t e);

BigInt to_bigint(std::uint64_t v);

/// Converts to uint64, throwing ResourceError when x is negative or too wide.
std::uint64_t to_u64(const BigInt& x);

// Exact rational, always stored normalized (gcd 1, positive denominator).
class BigRational {
 public:
  BigRational() = default;
  BigRational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& num, const BigInt& den);

  BigInt num() const { return v_.get_num(); }
  BigInt den() const { return v_.get_den(); }
  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }

  /// "n/d", or "n" when the denominator is 1.
  std::string str() const;

  /// Inverse of str(); accepts "n" and "n/d".
  static BigRational parse(const std::string& text);

  friend BigRational operator+(const BigRational& a, const BigRational& b);
  friend BigRational operator-(const BigRational& a, const BigRational& b);
  friend BigRational operator*(const BigRational& a, const BigRational& b);
  friend BigRational operator/(const BigRational& a, const BigRational& b);
  BigRational operator-() const;

  BigRational& operator+=(const BigRational& o) { return *this = *this + o; }
  BigRational& operator-=(const BigRational& o) { return *this = *this - o; }
  BigRational& operator*=(const BigRational& o) { return *this = *this * o; }
  BigRational& operator/=(const BigRational& o) { return *this = *this / o; }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  double to_double() const { return v_.get_d(); }
  const mpq_class& raw() const { return v_; }

 private:
  explicit BigRational(mpq_class v);
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const BigRational& x);

/// n/d normalized. Throws PreconditionError when d == 0.
BigRational rat(const BigInt& n, const BigInt& d);
inline BigRational rat(long n, long d) { return rat(BigInt(n), BigInt(d)); }

/// x^e; 0^0 == 1. Throws ResourceError if the result would exceed the budget.
BigRational rat_pow(const BigRational& x, std::uint64_t e);

/// p^e for any integer e (negative gives 1/p^-e).
BigRational rat_pow_signed(const BigRational& x, std::int64_t e);

/// Correctly rounded (half-even) decimal expansion with `digits` fractional
/// digits, 1 <= digits <= 50.
std::string to_decimal(const BigRational& x, unsigned digits);

// {"num": "...", "den": "..."}
void to_json(nlohmann::json& j, const BigRational& x);
void from_json(const nlohmann::json& j, BigRational& x);

}  // namespace wreath
