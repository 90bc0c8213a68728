#pragma once

// Shared exact-arithmetic primitives: big integers/rationals, factorial and
// binomial caches, divisor helpers, and the error types used across modules.

#include <gmpxx.h>

#include <atomic>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace symchar {

using Int = mpz_class;
using Rat = mpq_class;

// Thrown when a request exceeds a configured size ceiling (CLI exit code 3).
struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an exactness invariant fails, e.g. a character sum that must
// clear to an integer does not (CLI exit code 4).
struct integrity_error : std::runtime_error {
  explicit integrity_error(const std::string& what) : std::runtime_error(what) {}
};

inline Rat make_rat(Int num, Int den) {
  Rat r(std::move(num), std::move(den));
  r.canonicalize();
  return r;
}

// n!, cached. Thread-safe; the table only grows.
inline const Int factorial(int n) {
  static std::vector<Int> table{1};
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  while ((int)table.size() <= n) table.push_back(table.back() * (int)table.size());
  return table[n];
}

inline Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Falling factorial (n)_k = n (n-1) ... (n-k+1).
inline Int falling(long n, long k) {
  Int r = 1;
  for (long i = 0; i < k; ++i) r *= (n - i);
  return r;
}

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// Exact division; raises integrity_error when the quotient is not integral.
inline Int exact_div(const Int& num, const Int& den, const char* what) {
  if (den == 0 || !mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
    throw integrity_error(std::string("non-exact division in ") + what);
  Int q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

inline std::vector<int> divisors(int q) {
  std::vector<int> d;
  for (int t = 1; t <= q; ++t)
    if (q % t == 0) d.push_back(t);
  return d;
}

inline Int divisor_count(int q) {
  return (Int)divisors(q).size();
}

inline Int divisor_sum(int q) {
  Int s = 0;
  for (int t : divisors(q)) s += t;
  return s;
}

inline Int odd_divisor_count(int q) {
  Int c = 0;
  for (int t : divisors(q))
    if (t % 2 == 1) c += 1;
  return c;
}

// Ceiling for partition enumeration (p(n) grows fast; 64 keeps the cache
// near 10^6 entries). Exceeding it raises resource_error.
inline std::atomic<int>& partition_ceiling() {
  static std::atomic<int> ceiling{64};
  return ceiling;
}

inline void set_partition_ceiling(int n) { partition_ceiling() = n; }

}  // namespace symchar
