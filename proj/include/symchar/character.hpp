#pragma once

// Exact S_n character values by Murnaghan-Nakayama: single entries through a
// memoized rim-hook recursion, whole columns through the border-strip DP, and
// the stable character polynomials built from skew characters.

#include "symchar/partition.hpp"
#include "symchar/poly.hpp"

#include <shared_mutex>
#include <unordered_map>

namespace symchar {

// n! / prod of hooks.
inline Int dimension(const Partition& lambda) {
  return exact_div(factorial(lambda.weight()), hook_product(lambda), "dimension");
}

namespace detail {

struct MNKey {
  std::vector<int> lambda;
  std::vector<int> cycles;  // still to strip, weakly decreasing
  bool operator==(const MNKey&) const = default;
};

struct MNKeyHash {
  size_t operator()(const MNKey& k) const {
    size_t h = 1469598103934665603ull;
    auto mix = [&h](int x) {
      h ^= (size_t)(uint32_t)x;
      h *= 1099511628211ull;
    };
    for (int x : k.lambda) mix(x);
    mix(-1);
    for (int x : k.cycles) mix(x);
    return h;
  }
};

}  // namespace detail

class CharacterEngine {
 public:
  explicit CharacterEngine(bool use_cache = true) : use_cache_(use_cache) {}

  // chi_lambda at the class of cycle type rho; both partitions of the same n.
  Int value(const Partition& lambda, const Partition& rho) const {
    if (lambda.weight() != rho.weight())
      throw std::invalid_argument("character value: size mismatch");
    return strip(lambda.parts(), rho.parts());
  }
  Int value(const Partition& lambda, const CycleType& c) const { return value(lambda, c.type()); }

  // One column of the character table: chi_lambda(c) for every lambda in the
  // canonical order of partitions_of(n). Border strips are added cycle by
  // cycle, smallest first, so the k-th layer holds all partial column maps.
  std::vector<Int> column(const CycleType& c) const {
    const int n = c.n();
    std::vector<int> cyc = c.type().parts();
    std::sort(cyc.begin(), cyc.end());
    std::unordered_map<Partition, Int, PartitionHash> layer;
    layer.emplace(Partition{}, 1);
    int wt = 0;
    for (int k : cyc) {
      wt += k;
      std::unordered_map<Partition, Int, PartitionHash> next;
      for (const Partition& lam : partitions_of(wt)) {
        Int acc = 0;
        for (const auto& rh : rim_hooks(lam, k)) {
          auto it = layer.find(rh.rest);
          if (it == layer.end()) continue;
          if (rh.leg & 1)
            acc -= it->second;
          else
            acc += it->second;
        }
        if (acc != 0) next.emplace(lam, std::move(acc));
      }
      layer = std::move(next);
    }
    const auto& lams = partitions_of(n);
    std::vector<Int> out(lams.size(), Int(0));
    for (size_t i = 0; i < lams.size(); ++i) {
      auto it = layer.find(lams[i]);
      if (it != layer.end()) out[i] = it->second;
    }
    return out;
  }

  // Full table indexed [class][lambda], classes and lambdas both in the
  // canonical partition order.
  std::vector<std::vector<Int>> table(int n) const {
    const auto& cls = partitions_of(n);
    std::vector<std::vector<Int>> t;
    t.reserve(cls.size());
    for (const auto& c : cls) t.push_back(column(CycleType(c)));
    return t;
  }

  // Skew character chi_{lambda/nu} at cycle type rho (a partition of
  // |lambda| - |nu|): strip rho's cycles from lambda, never cutting into nu.
  Int skew(const Partition& lambda, const Partition& nu, const Partition& rho) const {
    if (!lambda.contains(nu)) return 0;
    if (lambda.weight() - nu.weight() != rho.weight())
      throw std::invalid_argument("skew character: size mismatch");
    std::vector<int> cyc = rho.parts();  // strip in this (descending) order
    return skew_strip(lambda, nu, cyc, 0);
  }

  void clear_cache() const {
    std::unique_lock lock(mutex_);
    memo_.clear();
  }
  size_t cache_size() const {
    std::shared_lock lock(mutex_);
    return memo_.size();
  }

 private:
  Int strip(std::vector<int> lambda, std::vector<int> cycles) const {
    if (cycles.empty()) return 1;  // lambda is empty too
    detail::MNKey key{std::move(lambda), std::move(cycles)};
    if (use_cache_) {
      std::shared_lock lock(mutex_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    // strip the largest remaining cycle
    int k = key.cycles.front();
    std::vector<int> rest_cycles(key.cycles.begin() + 1, key.cycles.end());
    Int acc = 0;
    for (const auto& rh : rim_hooks(Partition(key.lambda), k)) {
      Int sub = strip(rh.rest.parts(), rest_cycles);
      if (rh.leg & 1)
        acc -= sub;
      else
        acc += sub;
    }
    if (use_cache_) {
      std::unique_lock lock(mutex_);
      memo_.emplace(std::move(key), acc);
    }
    return acc;
  }

  Int skew_strip(const Partition& lambda, const Partition& nu, const std::vector<int>& cyc,
                 size_t pos) const {
    if (pos == cyc.size()) return lambda == nu ? Int(1) : Int(0);
    Int acc = 0;
    for (const auto& rh : rim_hooks(lambda, cyc[pos])) {
      if (!rh.rest.contains(nu)) continue;
      Int sub = skew_strip(rh.rest, nu, cyc, pos + 1);
      if (rh.leg & 1)
        acc -= sub;
      else
        acc += sub;
    }
    return acc;
  }

  bool use_cache_;
  mutable std::unordered_map<detail::MNKey, Int, detail::MNKeyHash> memo_;
  mutable std::shared_mutex mutex_;
};

// The polynomial P_mu in the cycle counts s_1, s_2, ... with
// chi_{(n-|mu|, mu)}(sigma) = P_mu(s_1(sigma), ...) once n - |mu| >= mu_1.
// Expansion: sum over k of (-1)^k sum over types c of |mu|-k of
// chi_{mu/(1^k)}(c) * prod_i C(s_i, m_i(c)).
inline StatPoly character_polynomial(const Partition& mu, const CharacterEngine& eng) {
  StatPoly P;
  for (int k = 0; k <= mu.norm(); ++k) {
    Partition onek(std::vector<int>(k, 1));
    for (const Partition& c : partitions_of(mu.weight() - k)) {
      Int chi = eng.skew(mu, onek, c);
      if (chi == 0) continue;
      if (k & 1) chi = -chi;
      StatPoly term = StatPoly::constant(Rat(chi));
      CycleType ct(c);
      for (int len = 1; len <= c.first(); ++len) {
        int m = ct.multiplicity(len);
        if (m > 0) term = term * lift_to_var(binomial_poly(m), len);
      }
      P += term;
    }
  }
  return P;
}

// Process-wide cache of character-table columns, keyed by the class type.
// References stay valid across growth (node-based map).
inline const std::vector<Int>& cached_column(const Partition& cls) {
  static std::unordered_map<Partition, std::vector<Int>, PartitionHash> cache;
  static std::shared_mutex mtx;
  {
    std::shared_lock lock(mtx);
    auto it = cache.find(cls);
    if (it != cache.end()) return it->second;
  }
  std::vector<Int> col = CharacterEngine().column(CycleType(cls));
  std::unique_lock lock(mtx);
  return cache.emplace(cls, std::move(col)).first->second;
}

// (n - |mu|, mu_1, mu_2, ...) when valid.
inline Partition pad_partition(const Partition& mu, int n) {
  if (n - mu.weight() < mu.first())
    throw std::invalid_argument("pad_partition: first row too short");
  std::vector<int> parts{n - mu.weight()};
  for (int p : mu.parts()) parts.push_back(p);
  return Partition(std::move(parts));
}

}  // namespace symchar
