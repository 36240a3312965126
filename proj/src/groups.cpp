#include "wreath/groups.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "wreath/errors.hpp"
#include "wreath/numtheory.hpp"

namespace wreath {

namespace {

void check_table_size(const BigInt& size, const std::string& what) {
  if (size > to_bigint(kTableCap)) {
    throw SizeCapError(what + ": group of order " + size.get_str() +
                           " exceeds the Cayley table cap of " + std::to_string(kTableCap),
                       size.get_str());
  }
}

void check_prime(std::uint64_t p, const char* what) {
  if (!numtheory::is_prime(p)) {
    throw PreconditionError(std::string(what) + ": " + std::to_string(p) + " is not prime");
  }
}

}  // namespace

FiniteGroup::FiniteGroup(std::size_t size, std::vector<Element> table, std::string name)
    : size_(size), table_(std::move(table)), name_(std::move(name)) {
  if (size_ == 0) throw PreconditionError("group must be nonempty");
  check_table_size(to_bigint(size_), name_);
  if (table_.size() != size_ * size_) throw InvariantError(name_ + ": table has wrong shape");
  validate();
  inverse_.resize(size_);
  for (Element a = 0; a < size_; ++a) {
    const auto r = row(a);
    inverse_[a] = static_cast<Element>(std::find(r.begin(), r.end(), Element{0}) - r.begin());
  }
}

void FiniteGroup::validate() const {
  for (Element v : table_) {
    if (v >= size_) throw InvariantError(name_ + ": table entry out of range");
  }
  for (Element j = 0; j < size_; ++j) {
    if (mul(0, j) != j || mul(j, 0) != j) {
      throw InvariantError(name_ + ": index 0 is not the identity");
    }
  }
  // Latin square: each row and column a permutation.
  std::vector<char> seen(size_);
  for (Element i = 0; i < size_; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (Element j = 0; j < size_; ++j) {
      if (seen[mul(i, j)]++) throw InvariantError(name_ + ": row " + std::to_string(i) + " repeats");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (Element j = 0; j < size_; ++j) {
      if (seen[mul(j, i)]++) {
        throw InvariantError(name_ + ": column " + std::to_string(i) + " repeats");
      }
    }
  }
  auto assoc = [&](Element a, Element b, Element c) {
    if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
      throw InvariantError(name_ + ": multiplication is not associative");
    }
  };
  if (size_ <= kFullAssociativityCheck) {
    for (Element a = 1; a < size_; ++a) {
      for (Element b = 1; b < size_; ++b) {
        const Element ab = mul(a, b);
        for (Element c = 1; c < size_; ++c) {
          if (mul(ab, c) != mul(a, mul(b, c))) {
            throw InvariantError(name_ + ": multiplication is not associative");
          }
        }
      }
    }
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(size_ - 1));
    for (int t = 0; t < 100000; ++t) assoc(pick(rng), pick(rng), pick(rng));
  }
}

FiniteGroup cyclic(std::uint64_t n) {
  if (n < 2) throw PreconditionError("cyclic: order must be at least 2");
  const std::string name = "C" + std::to_string(n);
  check_table_size(to_bigint(n), name);
  std::vector<Element> t(n * n);
  for (std::uint64_t i = 0; i < n; ++i) {
    for (std::uint64_t j = 0; j < n; ++j) t[i * n + j] = static_cast<Element>((i + j) % n);
  }
  return FiniteGroup(n, std::move(t), name);
}

FiniteGroup dihedral(std::uint64_t n) {
  if (n < 3) throw PreconditionError("dihedral: n must be at least 3, got " + std::to_string(n));
  const std::string name = "D" + std::to_string(n);
  check_table_size(to_bigint(2 * n), name);
  // r^i s^a has index i + n*a; (r^i s^a)(r^j s^b) = r^(i + (-1)^a j) s^(a+b)
  const std::uint64_t size = 2 * n;
  std::vector<Element> t(size * size);
  for (std::uint64_t x = 0; x < size; ++x) {
    const std::uint64_t i = x % n;
    const std::uint64_t a = x / n;
    for (std::uint64_t y = 0; y < size; ++y) {
      const std::uint64_t j = y % n;
      const std::uint64_t b = y / n;
      const std::uint64_t rot = a == 0 ? (i + j) % n : (i + n - j) % n;
      t[x * size + y] = static_cast<Element>(rot + n * ((a + b) % 2));
    }
  }
  return FiniteGroup(size, std::move(t), name);
}

FiniteGroup quaternion8() {
  // index 2u + s for unit u in {1, i, j, k} and sign s (0 = +, 1 = -)
  constexpr int kUnit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  constexpr int kSign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<Element> t(64);
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 8; ++y) {
      const int u = x / 2, v = y / 2;
      const int s = (x % 2 + y % 2 + kSign[u][v]) % 2;
      t[x * 8 + y] = static_cast<Element>(2 * kUnit[u][v] + s);
    }
  }
  return FiniteGroup(8, std::move(t), "Q8");
}

FiniteGroup symmetric(std::uint64_t n) {
  if (n < 2 || n > 6) throw PreconditionError("symmetric: n must be in 2..6");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto rank = [&](const std::vector<int>& q) {
    return static_cast<Element>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  const std::size_t size = perms.size();
  std::vector<Element> t(size * size);
  std::vector<int> comp(n);
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = 0; b < size; ++b) {
      // (a * b)(i) = a(b(i))
      for (std::size_t i = 0; i < n; ++i) comp[i] = perms[a][perms[b][i]];
      t[a * size + b] = rank(comp);
    }
  }
  return FiniteGroup(size, std::move(t), "S" + std::to_string(n));
}

FiniteGroup elementary_abelian(std::uint64_t p, std::uint64_t k) {
  check_prime(p, "elementary_abelian");
  if (k < 1) throw PreconditionError("elementary_abelian: rank must be at least 1");
  std::vector<std::uint64_t> ones(k, 1);
  FiniteGroup g = abelian(p, ones);
  return FiniteGroup(g.size(), {g.table().begin(), g.table().end()},
                     "E(" + std::to_string(p) + "," + std::to_string(k) + ")");
}

FiniteGroup abelian(std::uint64_t p, std::span<const std::uint64_t> exponents) {
  check_prime(p, "abelian");
  if (exponents.empty()) throw PreconditionError("abelian: exponent list is empty");
  std::string name = "A(" + std::to_string(p) + ";";
  BigInt size = 1;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 1) throw PreconditionError("abelian: exponents must be positive");
    if (exponents[i] > 64) throw SizeCapError("abelian: exponent too large", "p^" + std::to_string(exponents[i]));
    size *= int_pow(to_bigint(p), exponents[i]);
    name += (i ? "," : "") + std::to_string(exponents[i]);
  }
  name += ")";
  check_table_size(size, name);
  FiniteGroup g = cyclic(numtheory::checked_pow(p, exponents[0]));
  for (std::size_t i = 1; i < exponents.size(); ++i) {
    g = direct_product(g, cyclic(numtheory::checked_pow(p, exponents[i])));
  }
  return FiniteGroup(g.size(), {g.table().begin(), g.table().end()}, name);
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::string name = g.name() + " x " + h.name();
  check_table_size(to_bigint(g.size()) * to_bigint(h.size()), name);
  const std::size_t m = h.size();
  const std::size_t size = g.size() * m;
  std::vector<Element> t(size * size);
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t y = 0; y < size; ++y) {
      t[x * size + y] = static_cast<Element>(g.mul(static_cast<Element>(x / m), static_cast<Element>(y / m)) * m +
                                             h.mul(static_cast<Element>(x % m), static_cast<Element>(y % m)));
    }
  }
  return FiniteGroup(size, std::move(t), name);
}

BigInt wreath_size(const FiniteGroup& a, const FiniteGroup& b) {
  return int_pow(to_bigint(a.size()), b.size()) * to_bigint(b.size());
}

WreathArithmetic::WreathArithmetic(const FiniteGroup& a, const FiniteGroup& b) : a_(&a), b_(&b) {
  const std::size_t n = b.size();
  shift_.resize(n * n);
  for (Element x = 0; x < n; ++x) {
    const Element xinv = b.inverse(x);
    for (Element y = 0; y < n; ++y) shift_[x * n + y] = b.mul(xinv, y);
  }
  const BigInt count = int_pow(to_bigint(a.size()), n);
  if (bit_length(count) <= 63) base_count_ = to_u64(count);
}

WreathElement WreathArithmetic::identity() const {
  return WreathElement{std::vector<Element>(b_->size(), 0), 0};
}

bool WreathArithmetic::is_identity(const WreathElement& g) const {
  return g.top == 0 && std::all_of(g.base.begin(), g.base.end(), [](Element e) { return e == 0; });
}

void WreathArithmetic::multiply_into(const WreathElement& u, const WreathElement& v,
                                     WreathElement& out) const {
  const std::size_t n = b_->size();
  out.base.resize(n);
  const Element* shift = shift_.data() + u.top * n;
  for (std::size_t i = 0; i < n; ++i) out.base[i] = a_->mul(u.base[i], v.base[shift[i]]);
  out.top = b_->mul(u.top, v.top);
}

WreathElement WreathArithmetic::multiply(const WreathElement& u, const WreathElement& v) const {
  WreathElement out;
  multiply_into(u, v, out);
  return out;
}

std::uint64_t WreathArithmetic::order(const WreathElement& g) const {
  if (is_identity(g)) return 1;
  WreathElement cur = g;
  WreathElement next;
  std::uint64_t k = 1;
  while (!is_identity(cur)) {
    multiply_into(cur, g, next);
    std::swap(cur, next);
    ++k;
  }
  return k;
}

std::uint64_t WreathArithmetic::index_of(const WreathElement& g) const {
  std::uint64_t idx = 0;
  for (std::size_t i = b_->size(); i-- > 0;) idx = idx * a_->size() + g.base[i];
  if (base_count_ == 0) throw ResourceError("wreath element index does not fit in 64 bits");
  return numtheory::checked_mul(g.top, base_count_) + idx;
}

WreathElement WreathArithmetic::element_at(std::uint64_t index) const {
  if (base_count_ == 0) throw ResourceError("wreath element index does not fit in 64 bits");
  const std::uint64_t base_count = base_count_;
  WreathElement g;
  g.top = static_cast<Element>(index / base_count);
  std::uint64_t rest = index % base_count;
  g.base.resize(b_->size());
  for (std::size_t i = 0; i < b_->size(); ++i) {
    g.base[i] = static_cast<Element>(rest % a_->size());
    rest /= a_->size();
  }
  return g;
}

FiniteGroup wreath_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::string name = "W(" + a.name() + "," + b.name() + ")";
  check_table_size(wreath_size(a, b), name);
  const WreathArithmetic w(a, b);
  const std::size_t size = to_u64(wreath_size(a, b));
  std::vector<WreathElement> elements(size);
  for (std::size_t i = 0; i < size; ++i) elements[i] = w.element_at(i);
  std::vector<Element> t(size * size);
  WreathElement prod;
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      w.multiply_into(elements[i], elements[j], prod);
      t[i * size + j] = static_cast<Element>(w.index_of(prod));
    }
  }
  return FiniteGroup(size, std::move(t), name);
}

std::uint64_t element_order(const FiniteGroup& g, Element x) {
  if (x >= g.size()) throw PreconditionError("element_order: index out of range");
  Element cur = x;
  for (std::uint64_t k = 1; k <= g.size(); ++k) {
    if (cur == 0) {
      if (g.size() % k != 0) throw InvariantError(g.name() + ": element order does not divide |G|");
      return k;
    }
    cur = g.mul(cur, x);
  }
  throw InvariantError(g.name() + ": element " + std::to_string(x) + " has no finite order");
}

}  // namespace wreath
