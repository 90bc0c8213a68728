#pragma once

// Integer partitions, cycle types and the Ferrers-diagram combinatorics the
// character engine is built on: conjugates, hooks, Durfee squares and rim
// (border-strip) hooks via beta-sets.

#include "symchar/common.hpp"

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <numeric>
#include <span>

namespace symchar {

class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    // drop trailing zeros, then validate
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw std::invalid_argument("partition parts must be weakly decreasing");
    }
  }

  const std::vector<int>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  int norm() const { return (int)parts_.size(); }  // number of parts
  int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  int first() const { return parts_.empty() ? 0 : parts_[0]; }
  int part(int i) const { return i < (int)parts_.size() ? parts_[i] : 0; }  // 0-based, 0 beyond
  int delta() const { return weight() - first(); }

  Partition conjugate() const {
    std::vector<int> c;
    if (parts_.empty()) return Partition{};
    c.resize(parts_[0], 0);
    for (int p : parts_)
      for (int j = 0; j < p; ++j) c[j]++;
    return Partition(std::move(c));
  }

  // Largest s with lambda_s >= s (side of the Durfee square).
  int durfee() const {
    int s = 0;
    while (s < (int)parts_.size() && parts_[s] >= s + 1) ++s;
    return s;
  }

  Partition without_first_row() const {
    if (parts_.empty()) return Partition{};
    return Partition(std::vector<int>(parts_.begin() + 1, parts_.end()));
  }

  bool contains(const Partition& mu) const {
    if (mu.norm() > norm()) return false;
    for (int i = 0; i < mu.norm(); ++i)
      if (parts_[i] < mu.parts()[i]) return false;
    return true;
  }

  bool operator==(const Partition&) const = default;
  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<int> parts_;
};

struct PartitionHash {
  size_t operator()(const Partition& p) const {
    size_t h = 1469598103934665603ull;
    for (int x : p.parts()) {
      h ^= (size_t)x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Hook lengths h(i,j) = lambda_i - j + lambda'_j - i + 1 (0-based rows).
struct HookGrid {
  std::vector<std::vector<int>> rows;
};

inline HookGrid hook_grid(const Partition& lambda) {
  HookGrid g;
  Partition conj = lambda.conjugate();
  g.rows.resize(lambda.norm());
  for (int i = 0; i < lambda.norm(); ++i) {
    g.rows[i].resize(lambda.parts()[i]);
    for (int j = 0; j < lambda.parts()[i]; ++j)
      g.rows[i][j] = (lambda.parts()[i] - j) + (conj.parts()[j] - i) - 1;
  }
  return g;
}

inline Int hook_product(const Partition& lambda) {
  Int prod = 1;
  HookGrid g = hook_grid(lambda);
  for (auto& row : g.rows)
    for (int h : row) prod *= h;
  return prod;
}

struct RimHookRemoval {
  Partition rest;  // lambda with the hook removed
  int leg;         // leg length (rows spanned minus one)
};

// All removals of a size-k rim hook, via beta-sets: with b_i = lambda_i + m - i,
// removable hooks correspond to b in B with b >= k and b - k not in B; the leg
// length is the number of beta values strictly between b - k and b.
inline std::vector<RimHookRemoval> rim_hooks(const Partition& lambda, int k) {
  std::vector<RimHookRemoval> out;
  if (k <= 0 || lambda.weight() < k) return out;
  const int m = lambda.norm();
  std::vector<int> beta(m);
  for (int i = 0; i < m; ++i) beta[i] = lambda.parts()[i] + (m - 1 - i);  // strictly decreasing
  for (int i = 0; i < m; ++i) {
    int b = beta[i], nb = b - k;
    if (nb < 0) continue;
    bool clash = false;
    int leg = 0;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      if (beta[j] == nb) { clash = true; break; }
      if (beta[j] > nb && beta[j] < b) ++leg;
    }
    if (clash) continue;
    std::vector<int> nbeta = beta;
    nbeta[i] = nb;
    std::sort(nbeta.begin(), nbeta.end(), std::greater<int>());
    std::vector<int> parts(m);
    for (int j = 0; j < m; ++j) parts[j] = nbeta[j] - (m - 1 - j);
    out.push_back({Partition(std::move(parts)), leg});
  }
  return out;
}

// A conjugacy class of S_n, presented as the cycle type (a partition of n).
class CycleType {
 public:
  CycleType() = default;
  explicit CycleType(Partition type) : type_(std::move(type)) {}

  const Partition& type() const { return type_; }
  int n() const { return type_.weight(); }
  int cycles() const { return type_.norm(); }

  int multiplicity(int len) const {
    int s = 0;
    for (int p : type_.parts())
      if (p == len) ++s;
    return s;
  }
  int fixed_points() const { return multiplicity(1); }

  // s_1..s_n as a dense vector (index i-1 holds s_i).
  std::vector<int> multiplicities() const {
    std::vector<int> s(std::max(n(), 1), 0);
    for (int p : type_.parts()) s[p - 1]++;
    return s;
  }

  Int centralizer_order() const {
    Int z = 1;
    int run = 0, prev = 0;
    for (int p : type_.parts()) {
      if (p == prev) {
        ++run;
      } else {
        prev = p;
        run = 1;
      }
      z *= p * run;  // accumulates i^{s_i} s_i! across the run
    }
    return z;
  }

  Int class_size() const { return exact_div(factorial(n()), centralizer_order(), "class_size"); }

  int sign() const { return ((n() - cycles()) % 2 == 0) ? 1 : -1; }

  bool operator==(const CycleType&) const = default;

 private:
  Partition type_;
};

namespace detail {

inline void gen_partitions(int n, int max_part, std::vector<int>& acc,
                           std::vector<Partition>& out) {
  if (n == 0) {
    out.emplace_back(acc);
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    acc.push_back(p);
    gen_partitions(n - p, p, acc, out);
    acc.pop_back();
  }
}

}  // namespace detail

// All partitions of n in the canonical order: descending lexicographic,
// i.e. (n), (n-1,1), ..., (1^n). Cached; guarded by the partition ceiling.
inline const std::vector<Partition>& partitions_of(int n) {
  if (n < 0) throw std::invalid_argument("partitions_of: negative n");
  if (n > partition_ceiling())
    throw resource_error("partitions_of: n exceeds configured ceiling");
  static std::vector<std::vector<Partition>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  while ((int)cache.size() <= n) {
    int m = (int)cache.size();
    std::vector<Partition> list;
    std::vector<int> acc;
    detail::gen_partitions(m, m, acc, list);
    if (m == 0) list = {Partition{}};
    cache.push_back(std::move(list));
  }
  return cache[n];
}

// Index of lambda in partitions_of(lambda.weight()); canonical order is
// descending-lex so a binary search with greater<> applies.
inline int partition_index(const Partition& lambda) {
  const auto& list = partitions_of(lambda.weight());
  auto it = std::lower_bound(list.begin(), list.end(), lambda,
                             [](const Partition& a, const Partition& b) { return a > b; });
  if (it == list.end() || *it != lambda) throw std::logic_error("partition_index: not found");
  return (int)(it - list.begin());
}

inline Int partition_count(int n) { return (Int)partitions_of(n).size(); }

}  // namespace symchar
