#pragma once

// Conjugacy-class random walks on S_n: exact k-step distributions through the
// Fourier expansion, l^2 criterion sums, statistical and combinatorial mixing
// times, and a seeded Monte Carlo sampler for cross-validation.

#include <chrono>
#include <cmath>
#include <thread>

#include "symchar/character.hpp"
#include "symchar/permutation.hpp"

namespace symchar {

// One walk: n, the generating class, and the reference measure the distance
// criterion compares against.  By default the target is uniform on A_n and
// the criterion sum drops both linear characters; the flag switches to
// uniform on S_n, where only the trivial character is dropped.  (With the
// S_n target the sign character contributes a constant 1 to the sum for any
// class, so no class can ever mix there; the flag exists for inspecting
// exactly that.)
struct WalkSpec {
  int n = 0;
  CycleType cls;
  bool sn_target = false;

  explicit WalkSpec(CycleType c, bool sn = false)
      : n(c.n()), cls(std::move(c)), sn_target(sn) {
    if (n < 1 || cls.fixed_points() == n)
      throw std::invalid_argument("walk: the generating class must move something");
  }
};

// Exact class masses after k steps, aligned with partitions_of(n).
struct ClassDistribution {
  int n = 0;
  int k = 0;
  std::vector<Rat> mass;

  const Rat& mass_of(const CycleType& c) const { return mass[partition_index(c.type())]; }
};

inline Rat rat_pow(Rat base, int e) {
  if (e < 0) throw std::invalid_argument("rat_pow: negative exponent");
  Rat acc(1);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

// P(x_k in c') = (|c'|/n!) sum_lambda chi(c') chi(c)^k / chi(1)^(k-1).
inline ClassDistribution step_distribution(const WalkSpec& spec, int k) {
  if (k < 0) throw std::invalid_argument("step_distribution: k must be >= 0");
  int n = spec.n;
  const auto& parts = partitions_of(n);
  const auto& col_c = cached_column(spec.cls.type());
  std::vector<Int> dims(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) dims[i] = dimension(parts[i]);

  ClassDistribution out;
  out.n = n;
  out.k = k;
  out.mass.resize(parts.size());
  Int nfac = factorial(n);
  for (std::size_t j = 0; j < parts.size(); ++j) {
    const auto& col_j = cached_column(parts[j]);
    Rat acc(0);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (k == 0)
        acc += Rat(Int(col_j[i] * dims[i]));
      else
        acc += make_rat(Int(col_j[i] * int_pow(col_c[i], k)), int_pow(dims[i], k - 1));
    }
    out.mass[j] = acc * make_rat(CycleType(parts[j]).class_size(), nfac);
  }
  return out;
}

namespace detail {

// Indices of the characters the criterion sum keeps.
inline std::vector<std::size_t> criterion_indices(int n, bool sn_target) {
  const auto& parts = partitions_of(n);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (sn_target ? parts[i].norm() == 1 : dimension(parts[i]) == 1) continue;
    keep.push_back(i);
  }
  return keep;
}

}  // namespace detail

// n! * ||P_k - u||_2^2 = sum over kept chi of |chi(c)|^(2k) / chi(1)^(2k-2).
inline Rat l2_distance_sq(const WalkSpec& spec, int k) {
  if (k < 1) throw std::invalid_argument("l2_distance_sq: k must be >= 1");
  const auto& parts = partitions_of(spec.n);
  const auto& col_c = cached_column(spec.cls.type());
  Rat acc(0);
  for (std::size_t i : detail::criterion_indices(spec.n, spec.sn_target))
    acc += make_rat(int_pow(col_c[i], 2 * k), int_pow(dimension(parts[i]), 2 * k - 2));
  return acc;
}

// A class is degenerate for the chosen target when some kept character has
// |chi(c)| = chi(1): its criterion term never decays, so no finite k reaches
// 1/n.  (With the S_n target the sign character makes every class degenerate;
// with the A_n target this only happens when the class generates a proper
// normal subgroup, e.g. (2,2) inside S_4.)
inline bool walk_degenerate(const WalkSpec& spec) {
  const auto& parts = partitions_of(spec.n);
  const auto& col_c = cached_column(spec.cls.type());
  for (std::size_t i : detail::criterion_indices(spec.n, spec.sn_target))
    if (abs(col_c[i]) == dimension(parts[i])) return true;
  return false;
}

// Least even k with the criterion sum <= 1/n.
inline int mixing_time_statistical(const WalkSpec& spec, int k_ceiling = 512) {
  if (walk_degenerate(spec))
    throw resource_error("mixing_time_statistical: degenerate class, criterion sum never reaches 1/n");
  Rat bound = make_rat(Int(1), Int(spec.n));
  for (int k = 2; k <= k_ceiling; k += 2)
    if (l2_distance_sq(spec, k) <= bound) return k;
  throw resource_error("mixing_time_statistical: no mixing below the ceiling");
}

// P(k independent uniform elements of c share a fixed point), by inclusion-
// exclusion over the shared points: the chance that one uniform element of c
// fixes l marked points is (s_1)_l / (n)_l.
inline Rat common_fixed_point_prob(const CycleType& c, int k) {
  if (k < 1) throw std::invalid_argument("common_fixed_point_prob: k must be >= 1");
  int n = c.n(), s1 = c.fixed_points();
  Rat acc(0);
  for (int l = 1; l <= s1; ++l) {
    Rat term = Rat(binomial(n, l)) * rat_pow(make_rat(falling(s1, l), falling(n, l)), k);
    if (l % 2 == 1)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

// First two moments of xi_k = #common fixed points of k uniform elements.
struct FixedPointMoments {
  Rat mean;
  Rat second;
};

inline FixedPointMoments xi_moments(const CycleType& c, int k) {
  int n = c.n(), s1 = c.fixed_points();
  Int pairs = Int(n) * (n - 1), fixed_pairs = Int(s1) * (s1 - 1);
  Rat mean = Rat(Int(n)) * rat_pow(make_rat(Int(s1), Int(n)), k);
  Rat second = mean + Rat(pairs) * rat_pow(make_rat(fixed_pairs, pairs), k);
  return {mean, second};
}

// Least even k with common_fixed_point_prob <= 1/n; 2 for fixed-point-free
// classes.  The probability is non-increasing in k (extending a tuple can
// only shrink its common fixed set), so a float estimate seeds the search
// and exact comparisons settle the boundary.
inline int mixing_time_combinatorial(const CycleType& c, int k_ceiling = 1 << 20) {
  int n = c.n(), s1 = c.fixed_points();
  if (s1 == n) throw std::invalid_argument("mixing_time_combinatorial: identity class");
  if (s1 == 0) return 2;
  Rat bound = make_rat(Int(1), Int(n));
  auto mixed = [&](int k) { return common_fixed_point_prob(c, k) <= bound; };
  double est = 2.0 * std::log((double)n) / std::log((double)n / s1);
  int k = 2 * std::max(1, (int)(est / 2));
  while (k > k_ceiling) k -= 2;
  if (mixed(k)) {
    while (k > 2 && mixed(k - 2)) k -= 2;
    return k;
  }
  for (k += 2; k <= k_ceiling; k += 2)
    if (mixed(k)) return k;
  throw resource_error("mixing_time_combinatorial: no mixing below the ceiling");
}

// Empirical class masses from `trials` independent k-step walks.  Each trial
// owns the stream derived from (seed, trial index), so the counts do not
// depend on the thread count.
inline ClassDistribution sample_walk(const WalkSpec& spec, int k, long trials,
                                     std::uint64_t seed, int threads = 1) {
  if (trials < 1) throw std::invalid_argument("sample_walk: trials must be >= 1");
  int n = spec.n;
  const auto& parts = partitions_of(n);

  auto run = [&](long lo, long hi, std::vector<long>& counts) {
    for (long t = lo; t < hi; ++t) {
      std::mt19937_64 rng(derive_seed(seed, (std::uint64_t)t));
      Perm walk = perm_identity(n);
      for (int step = 0; step < k; ++step)
        walk = perm_mul(random_class_element(spec.cls, rng), walk);
      counts[partition_index(cycle_type(walk).type())]++;
    }
  };

  std::vector<long> counts(parts.size(), 0);
  if (threads <= 1) {
    run(0, trials, counts);
  } else {
    std::vector<std::vector<long>> local(threads, std::vector<long>(parts.size(), 0));
    std::vector<std::thread> pool;
    long chunk = (trials + threads - 1) / threads;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back(run, std::min<long>(t * chunk, trials),
                        std::min<long>((t + 1) * chunk, trials), std::ref(local[t]));
    for (auto& th : pool) th.join();
    for (const auto& lc : local)
      for (std::size_t j = 0; j < counts.size(); ++j) counts[j] += lc[j];
  }

  ClassDistribution out;
  out.n = n;
  out.k = k;
  out.mass.resize(parts.size());
  for (std::size_t j = 0; j < parts.size(); ++j) out.mass[j] = make_rat(Int(counts[j]), Int(trials));
  return out;
}

// Per-class summary: both mixing times, their ratio, whether the window
// t_c <= t_s <= 10 t_c held, and one exact check of the convolution
// inequality ||P_2k / u - 1||_inf <= n! ||P_k - u||_2^2 at k = 2.
struct WalkReport {
  CycleType cls;
  int t_c = 0;
  int t_s = -1;
  bool degenerate = false;
  bool odd_class = false;
  double ratio = 0.0;
  bool window_holds = false;
  bool linf_ok = false;
};

inline std::vector<WalkReport> roichman_report(int n, int k_ceiling = 512) {
  if (n < 3) throw std::invalid_argument("roichman_report: n must be >= 3");
  std::vector<WalkReport> rows;
  for (const auto& p : partitions_of(n)) {
    CycleType c(p);
    if (c.fixed_points() == n) continue;
    WalkReport row;
    row.cls = c;
    row.odd_class = c.sign() < 0;
    row.t_c = mixing_time_combinatorial(c);
    WalkSpec spec(c);
    row.degenerate = walk_degenerate(spec);
    if (!row.degenerate) {
      row.t_s = mixing_time_statistical(spec, k_ceiling);
      row.ratio = (double)row.t_s / row.t_c;
      row.window_holds = row.t_c <= row.t_s && row.t_s <= 10 * row.t_c;
    }

    Rat rhs = l2_distance_sq(WalkSpec(c, true), 2);
    ClassDistribution d4 = step_distribution(spec, 4);
    Int nfac = factorial(n);
    Rat linf(0);
    for (const auto& cp : partitions_of(n)) {
      Rat dev = abs(Rat(nfac) * d4.mass_of(CycleType(cp)) / Rat(CycleType(cp).class_size()) - 1);
      if (dev > linf) linf = dev;
    }
    row.linf_ok = linf <= rhs;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace symchar
