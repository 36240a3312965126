#include "wreath/oracle.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <thread>
#include <vector>

#include "wreath/errors.hpp"
#include "wreath/numtheory.hpp"

namespace wreath::oracle {

namespace {

using Counts = std::map<std::uint64_t, std::uint64_t>;

// Orders of every element with top x, written into `counts`.
void enumerate_top(const WreathArithmetic& w, Element x, std::uint64_t base_count, Counts& counts) {
  const FiniteGroup& a = w.base_group();
  const FiniteGroup& b = w.top_group();
  const std::uint64_t top_order = element_order(b, x);
  WreathElement g{std::vector<Element>(b.size(), 0), x};
  for (std::uint64_t i = 0; i < base_count; ++i) {
    const std::uint64_t ord = w.order(g);
    if (ord % top_order != 0) {
      throw InvariantError("wreath element order " + std::to_string(ord) +
                           " is not a multiple of its top order " + std::to_string(top_order));
    }
    ++counts[ord];
    // next base tuple in mixed radix, base[0] least significant
    for (std::size_t pos = 0; pos < g.base.size(); ++pos) {
      if (++g.base[pos] < a.size()) break;
      g.base[pos] = 0;
    }
  }
}

}  // namespace

OrderSpectrum brute_force_spectrum(const FiniteGroup& a, const FiniteGroup& b, const Options& opts) {
  const BigInt size = wreath_size(a, b);
  BigInt cap = 1;
  cap <<= opts.cap_bits;
  if (size > cap) {
    throw SizeCapError("oracle: W(" + a.name() + "," + b.name() + ") has " + size.get_str() +
                           " elements, above the oracle cap of 2^" + std::to_string(opts.cap_bits),
                       size.get_str());
  }
  const std::uint64_t base_count = to_u64(size) / b.size();
  const WreathArithmetic w(a, b);
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.workers, static_cast<unsigned>(b.size())));

  std::vector<Counts> per_top(b.size());
  if (workers == 1) {
    for (Element x = 0; x < b.size(); ++x) enumerate_top(w, x, base_count, per_top[x]);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (Element x = t; x < b.size(); x += workers) enumerate_top(w, x, base_count, per_top[x]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::map<std::uint64_t, BigInt> merged;
  for (const auto& counts : per_top) {
    for (const auto& [ord, c] : counts) merged[ord] += to_bigint(c);
  }
  return OrderSpectrum(size, std::move(merged));
}

OrderSpectrum orbit_spectrum(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.size() < 2 || b.size() < 2) throw PreconditionError("orbit_spectrum: groups need at least 2 elements");
  const std::uint64_t size_a = a.size();
  const std::uint64_t size_b = b.size();

  // torsion counts of A straight from its table
  std::vector<std::uint64_t> orders_a(size_a);
  for (Element g = 0; g < size_a; ++g) orders_a[g] = element_order(a, g);
  const auto divs_a = numtheory::divisors(size_a);
  std::map<std::uint64_t, BigInt> torsion;
  for (std::uint64_t m : divs_a) {
    std::uint64_t s = 0;
    for (std::uint64_t o : orders_a) s += (m % o == 0);
    torsion[m] = to_bigint(s);
  }

  const BigInt big_a = to_bigint(size_a);
  std::map<std::uint64_t, BigInt> counts;
  std::vector<char> visited(size_b);
  for (Element x = 0; x < size_b; ++x) {
    // orbits of b -> x b
    std::fill(visited.begin(), visited.end(), 0);
    std::uint64_t orbit_count = 0;
    std::uint64_t orbit_len = 0;
    for (Element start = 0; start < size_b; ++start) {
      if (visited[start]) continue;
      ++orbit_count;
      std::uint64_t len = 0;
      for (Element cur = start; !visited[cur]; cur = b.mul(x, cur)) {
        visited[cur] = 1;
        ++len;
      }
      if (orbit_len != 0 && len != orbit_len) throw InvariantError("orbit_spectrum: unequal orbit sizes");
      orbit_len = len;
    }
    const std::uint64_t d = orbit_len;
    // free coordinates: all but one per orbit
    const BigInt free_choices = int_pow(big_a, size_b - orbit_count);
    // tuples of orbit products whose lcm is exactly m, by inclusion-exclusion
    // over the events "lcm divides n"
    for (std::uint64_t m : divs_a) {
      BigInt exact = 0;
      for (std::uint64_t n : numtheory::divisors(m)) {
        const int mu = numtheory::mobius(m / n);
        if (mu == 0) continue;
        const BigInt events = int_pow(torsion[n], orbit_count);
        if (mu > 0) {
          exact += events;
        } else {
          exact -= events;
        }
      }
      if (sgn(exact) == 0) continue;
      counts[numtheory::checked_mul(d, m)] += free_choices * exact;
    }
  }
  return OrderSpectrum(int_pow(big_a, size_b) * to_bigint(size_b), std::move(counts));
}

}  // namespace wreath::oracle
