#include "wreath/exact.hpp"

#include <atomic>
#include <limits>
#include <ostream>

#include "wreath/errors.hpp"

namespace wreath {

namespace {

std::atomic<std::uint64_t> g_bit_budget{kDefaultBitBudget};

void check_rational(const mpq_class& v, const char* what) {
  check_budget(v.get_num(), what);
  check_budget(v.get_den(), what);
}

// Throws if base^e certainly exceeds the budget, without computing it.
void precheck_pow(const BigInt& base, std::uint64_t e, const char* what) {
  const std::uint64_t len = bit_length(base);
  if (len <= 1 || e == 0) return;
  const std::uint64_t budget = bit_budget();
  if ((len - 1) > budget / e) {
    throw ResourceError(std::string(what) + ": result needs more than " + std::to_string(budget) +
                        " bits (bit budget exceeded)");
  }
}

}  // namespace

std::uint64_t bit_budget() { return g_bit_budget.load(std::memory_order_relaxed); }

void set_bit_budget(std::uint64_t bits) {
  if (bits == 0) throw PreconditionError("bit budget must be positive");
  g_bit_budget.store(bits, std::memory_order_relaxed);
}

std::uint64_t bit_length(const BigInt& x) {
  if (sgn(x) == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

void check_budget(const BigInt& x, const char* what) {
  const std::uint64_t len = bit_length(x);
  if (len > bit_budget()) {
    throw ResourceError(std::string(what) + ": integer of " + std::to_string(len) +
                        " bits exceeds the bit budget of " + std::to_string(bit_budget()));
  }
}

BigInt int_pow(const BigInt& base, std::uint64_t e) {
  precheck_pow(base, e, "int_pow");
  if (e > std::numeric_limits<unsigned long>::max()) throw ResourceError("int_pow: exponent too large");
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  check_budget(out, "int_pow");
  return out;
}

BigInt to_bigint(std::uint64_t v) {
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

std::uint64_t to_u64(const BigInt& x) {
  if (sgn(x) < 0 || bit_length(x) > 64) {
    throw ResourceError("value " + x.get_str() + " does not fit in 64 bits");
  }
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, x.get_mpz_t());
  return out;
}

BigRational::BigRational(const BigInt& num, const BigInt& den) {
  if (sgn(den) == 0) throw PreconditionError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
  check_rational(v_, "rat");
}

BigRational::BigRational(mpq_class v) : v_(std::move(v)) {}

std::string BigRational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

BigRational BigRational::parse(const std::string& text) {
  const auto slash = text.find('/');
  BigInt num;
  BigInt den = 1;
  try {
    if (slash == std::string::npos) {
      num = BigInt(text, 10);
    } else {
      num = BigInt(text.substr(0, slash), 10);
      den = BigInt(text.substr(slash + 1), 10);
    }
  } catch (const std::invalid_argument&) {
    throw PreconditionError("not a rational: '" + text + "'");
  }
  return BigRational(num, den);
}

BigRational operator+(const BigRational& a, const BigRational& b) {
  mpq_class r = a.v_ + b.v_;
  check_rational(r, "add");
  return BigRational(std::move(r));
}

BigRational operator-(const BigRational& a, const BigRational& b) {
  mpq_class r = a.v_ - b.v_;
  check_rational(r, "sub");
  return BigRational(std::move(r));
}

BigRational operator*(const BigRational& a, const BigRational& b) {
  mpq_class r = a.v_ * b.v_;
  check_rational(r, "mul");
  return BigRational(std::move(r));
}

BigRational operator/(const BigRational& a, const BigRational& b) {
  if (b.is_zero()) throw PreconditionError("division by zero rational");
  mpq_class r = a.v_ / b.v_;
  check_rational(r, "div");
  return BigRational(std::move(r));
}

BigRational BigRational::operator-() const { return BigRational(mpq_class(-v_)); }

std::ostream& operator<<(std::ostream& os, const BigRational& x) { return os << x.str(); }

BigRational rat(const BigInt& n, const BigInt& d) { return BigRational(n, d); }

BigRational rat_pow(const BigRational& x, std::uint64_t e) {
  if (e == 0) return BigRational(1);
  return BigRational(int_pow(x.num(), e), int_pow(x.den(), e));
}

BigRational rat_pow_signed(const BigRational& x, std::int64_t e) {
  if (e >= 0) return rat_pow(x, static_cast<std::uint64_t>(e));
  return BigRational(1) / rat_pow(x, static_cast<std::uint64_t>(-e));
}

std::string to_decimal(const BigRational& x, unsigned digits) {
  if (digits < 1 || digits > 50) throw PreconditionError("to_decimal: digits must be in 1..50");
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  BigInt num = abs(x.num()) * scale;
  const BigInt den = x.den();
  BigInt q;
  BigInt r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  const int c = cmp(BigInt(2 * r), den);
  if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;

  std::string body = q.get_str();
  if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
  body.insert(body.size() - digits, ".");
  if (x.sign() < 0 && sgn(q) != 0) body.insert(0, "-");
  return body;
}

void to_json(nlohmann::json& j, const BigRational& x) {
  j = nlohmann::json{{"num", x.num().get_str()}, {"den", x.den().get_str()}};
}

void from_json(const nlohmann::json& j, BigRational& x) {
  x = BigRational(BigInt(j.at("num").get<std::string>(), 10), BigInt(j.at("den").get<std::string>(), 10));
}

}  // namespace wreath
