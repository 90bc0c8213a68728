#pragma once

// Concrete permutations in one-line notation (p[i] = image of i, 0-based),
// plus uniform sampling of permutations and of conjugacy classes.

#include "symchar/partition.hpp"

#include <cstdint>
#include <numeric>
#include <random>

namespace symchar {

using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

// (a*b)(x) = a(b(x)): apply b first.
inline Perm perm_mul(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

inline Perm perm_inverse(const Perm& p) {
  Perm q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[p[i]] = (int)i;
  return q;
}

inline Perm perm_power(const Perm& p, long e) {
  Perm base = e < 0 ? perm_inverse(p) : p;
  if (e < 0) e = -e;
  Perm acc = perm_identity((int)p.size());
  while (e > 0) {
    if (e & 1) acc = perm_mul(acc, base);
    base = perm_mul(base, base);
    e >>= 1;
  }
  return acc;
}

// g p g^{-1}.
inline Perm perm_conjugate(const Perm& p, const Perm& g) {
  Perm c(p.size());
  for (size_t i = 0; i < p.size(); ++i) c[g[i]] = g[p[i]];
  return c;
}

inline CycleType cycle_type(const Perm& p) {
  std::vector<int> lens;
  std::vector<char> seen(p.size(), 0);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end(), std::greater<int>());
  return CycleType(Partition(std::move(lens)));
}

// Cycles laid out consecutively: (0 1 .. l1-1)(l1 ..)...
inline Perm type_representative(const CycleType& c) {
  Perm p(c.n());
  int start = 0;
  for (int len : c.type().parts()) {
    for (int j = 0; j < len; ++j) p[start + j] = start + (j + 1) % len;
    start += len;
  }
  return p;
}

// Order of any element of the class: lcm of the cycle lengths.
inline long element_order(const CycleType& c) {
  long l = 1;
  for (int p : c.type().parts()) l = std::lcm(l, (long)p);
  return l;
}

// Lexicographic enumeration of all of S_n; fn(const Perm&).
template <class F>
void for_each_permutation(int n, F&& fn) {
  Perm p = perm_identity(n);
  do {
    fn(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

// Seed-derivation mix so per-trial streams are decorrelated but reproducible.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t master, uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 1));
}

// Fisher-Yates with std::uniform_int_distribution; uniform over S_n.
inline Perm random_perm(int n, std::mt19937_64& rng) {
  Perm p = perm_identity(n);
  for (int i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<int> d(0, i);
    std::swap(p[i], p[d(rng)]);
  }
  return p;
}

// Uniform over the conjugacy class: conjugating a fixed representative by a
// uniform g hits each class element centralizer-many times.
inline Perm random_class_element(const CycleType& c, std::mt19937_64& rng) {
  return perm_conjugate(type_representative(c), random_perm(c.n(), rng));
}

}  // namespace symchar
