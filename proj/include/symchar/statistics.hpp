#pragma once

// Exact counting in S_n around the equation pi^q = 1: solution counts, counts
// with prescribed cycle statistics, moment sums of cycle counts with their
// recursions and polynomial normal forms, Stirling numbers, Q-polynomials and
// the cycle-count distribution.

#include "symchar/poly.hpp"

#include <map>
#include <mutex>

namespace symchar {

// |Hom(C_q, S_n)| = #{pi : pi^q = 1} for n = 0..N, by deleting the cycle
// through the last point: h_n = sum_{t|q, t<=n} (n-1)!/(n-t)! h_{n-t}.
inline const std::vector<Int>& hom_sequence(int q, int N) {
  if (q < 1) throw std::invalid_argument("hom_sequence: q must be positive");
  static std::map<int, std::vector<Int>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto& h = cache[q];
  if (h.empty()) h.push_back(Int(1));
  auto divs = divisors(q);
  while ((int)h.size() <= N) {
    int n = (int)h.size();
    Int total = 0;
    for (int t : divs) {
      if (t > n) continue;
      total += falling(n - 1, t - 1) * h[n - t];
    }
    h.push_back(std::move(total));
  }
  return h;
}

inline Int hom_count_cyclic(int q, int n) { return hom_sequence(q, n)[n]; }

// N(n,q,s): pi^q = 1 with exactly s_t cycles of length t for each proper
// divisor t of q; the remaining points fall into q-cycles. Zero when the
// leftover count is not a multiple of q.
inline Int constrained_count(int n, int q, const std::map<int, int>& s) {
  if (q < 1 || n < 0) throw std::invalid_argument("constrained_count: bad n or q");
  long S = 0;
  for (auto& [t, st] : s) {
    if (st < 0 || t <= 0 || t >= q || q % t != 0)
      throw std::invalid_argument("constrained_count: keys must be proper divisors of q");
    S += (long)t * st;
  }
  if (S > n || (n - S) % q != 0) return 0;
  long r = (n - S) / q;  // number of q-cycles
  Int denom = factorial(r) * int_pow(Int(q), r);
  for (auto& [t, st] : s) denom *= factorial(st) * int_pow(Int(t), st);
  return exact_div(factorial(n), denom, "constrained_count");
}

// Exponents e_t for the proper divisors t of q, plus a sign flag: the moment
// sum weights each pi with pi^q = 1 by prod_t s_t(pi)^{e_t}, times
// prod_t (-1)^{(t-1) s_t(pi)} in the alternating case.
struct MomentSpec {
  int q = 1;
  std::vector<int> divs;  // proper divisors of q, ascending
  std::vector<int> e;     // aligned with divs
  bool alternating = false;

  MomentSpec(int q_, const std::map<int, int>& e_, bool alternating_ = false)
      : q(q_), alternating(alternating_) {
    if (q < 1) throw std::invalid_argument("MomentSpec: q must be positive");
    for (int t : divisors(q))
      if (t < q) divs.push_back(t);
    e.assign(divs.size(), 0);
    for (auto& [t, et] : e_) {
      auto it = std::find(divs.begin(), divs.end(), t);
      if (it == divs.end() || et < 0)
        throw std::invalid_argument("MomentSpec: exponents live on proper divisors of q");
      e[it - divs.begin()] = et;
    }
  }

  int degree() const {  // D = sum t e_t
    int d = 0;
    for (size_t i = 0; i < divs.size(); ++i) d += divs[i] * e[i];
    return d;
  }
};

namespace detail {

struct MomentMemo {
  std::map<std::pair<int, std::vector<int>>, Int> sums;
  std::map<std::vector<int>, RatPoly> polys;
  std::map<std::vector<int>, std::vector<Rat>> alphas;
};

inline Int moment_sum_rec(const MomentSpec& spec, int n, std::vector<int>& e, MomentMemo& memo) {
  bool zero = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
  if (n == 0) return zero ? 1 : 0;
  if (zero) {
    // plain: |Hom(C_q, S_n)|; alternating: same recursion with signs
    if (!spec.alternating) return hom_count_cyclic(spec.q, n);
  }
  auto key = std::make_pair(n, e);
  auto it = memo.sums.find(key);
  if (it != memo.sums.end()) return it->second;
  Int total = 0;
  auto divs = divisors(spec.q);
  for (int t : divs) {
    if (t > n) continue;
    Int w = falling(n - 1, t - 1);
    if (spec.alternating && t % 2 == 0) w = -w;
    // the removed t-cycle turns s_t into s_t + 1: binomial expansion in e_t
    auto pos = std::find(spec.divs.begin(), spec.divs.end(), t);
    if (pos == spec.divs.end()) {  // t == q carries no exponent
      total += w * moment_sum_rec(spec, n - t, e, memo);
      continue;
    }
    size_t i = pos - spec.divs.begin();
    int et = e[i];
    for (int nu = 0; nu <= et; ++nu) {
      e[i] = et - nu;
      total += w * binomial(et, nu) * moment_sum_rec(spec, n - t, e, memo);
    }
    e[i] = et;
  }
  memo.sums.emplace(std::move(key), total);
  return total;
}

}  // namespace detail

// S_e(n) = sum over pi^q = 1 of prod_t s_t(pi)^{e_t} (with the alternating
// weight when requested), via the delete-a-cycle recursion.
inline Int cycle_moment_sum(const MomentSpec& spec, int n) {
  if (n < 0) throw std::invalid_argument("cycle_moment_sum: negative n");
  static std::map<std::pair<int, bool>, detail::MomentMemo> memos;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto e = spec.e;
  return detail::moment_sum_rec(spec, n, e, memos[{spec.q, spec.alternating}]);
}

// The two normal forms for the moment generating function. Writing
// S_e(z) = P(z) exp(sum_t w_t z^t/t) forces P' = sum_t w_t z^{t-1}
// sum_{nu>=1} C(e_t,nu) P_{e - nu delta_t}, which pins P up to its constant:
//   exact:   P(0) = [e = 0], the unique choice making the series identity true;
//   display: P(0) = 1 for every e, the normal form used in the source
//            asymptotics (it generates prod_t (s_t + 1)^{e_t} instead).
enum class MomentFamily { exact, display };

namespace detail {

inline RatPoly moment_poly_rec(const MomentSpec& spec, std::vector<int>& e, MomentFamily fam,
                               MomentMemo& memo) {
  bool zero = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
  Rat c0 = (fam == MomentFamily::display || zero) ? Rat(1) : Rat(0);
  auto it = memo.polys.find(e);
  if (it != memo.polys.end()) return it->second;
  RatPoly P = RatPoly::constant(c0);
  for (size_t i = 0; i < spec.divs.size(); ++i) {
    int t = spec.divs[i], et = e[i];
    if (et == 0) continue;
    Rat w = (spec.alternating && t % 2 == 0) ? Rat(-1) : Rat(1);
    for (int nu = 1; nu <= et; ++nu) {
      e[i] = et - nu;
      RatPoly sub = moment_poly_rec(spec, e, fam, memo);
      P += sub.shifted_up(t - 1).integral().scaled(w * Rat(binomial(et, nu)));
    }
    e[i] = et;
  }
  memo.polys.emplace(e, P);
  return P;
}

}  // namespace detail

inline RatPoly moment_polynomial(const MomentSpec& spec, MomentFamily fam = MomentFamily::exact) {
  detail::MomentMemo memo;
  auto e = spec.e;
  return detail::moment_poly_rec(spec, e, fam, memo);
}

// Coefficients alpha^(0..D) with
// S_e(n) = sum_nu alpha^(nu) n!/(n-nu)! |Hom(C_q, S_{n-nu})|,
// by the degree-wise recursion alpha^(d) = (1/d) sum_t w_t sum_{nu>=1}
// C(e_t,nu) alpha_{e - nu delta_t}^{(d-t)}.
inline std::vector<Rat> alpha_coefficients(const MomentSpec& spec) {
  if (spec.alternating)
    throw std::invalid_argument("alpha_coefficients: plain sign only");
  int D = spec.degree();
  std::map<std::vector<int>, std::vector<Rat>> table;
  std::function<const std::vector<Rat>&(std::vector<int>&)> rec =
      [&](std::vector<int>& e) -> const std::vector<Rat>& {
    auto it = table.find(e);
    if (it != table.end()) return it->second;
    bool zero = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    std::vector<Rat> a(D + 1, Rat(0));
    a[0] = zero ? Rat(1) : Rat(0);
    for (int d = 1; d <= D; ++d) {
      Rat acc(0);
      for (size_t i = 0; i < spec.divs.size(); ++i) {
        int t = spec.divs[i], et = e[i];
        if (et == 0 || t > d) continue;
        for (int nu = 1; nu <= et; ++nu) {
          e[i] = et - nu;
          acc += Rat(binomial(et, nu)) * rec(e)[d - t];
          e[i] = et;
        }
      }
      a[d] = acc / Rat(d);
    }
    return table.emplace(e, std::move(a)).first->second;
  };
  auto e = spec.e;
  return rec(e);
}

// Second-kind Stirling numbers, cached triangle.
inline Int stirling2(int n, int m) {
  if (n < 0 || m < 0 || m > n) throw std::invalid_argument("stirling2: need 0 <= m <= n");
  static std::vector<std::vector<Int>> rows{{Int(1)}};
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  while ((int)rows.size() <= n) {
    int r = (int)rows.size();
    std::vector<Int> row(r + 1, Int(0));
    for (int k = 1; k <= r; ++k)
      row[k] = rows[r - 1][k - 1] + (k <= r - 1 ? Int(k) * rows[r - 1][k] : Int(0));
    rows.push_back(std::move(row));
  }
  return rows[n][m];
}

// Q_n(t) = sum_{nu=0}^{n-1} S(n, n-nu) t^nu.
inline std::vector<Int> q_poly_coeffs(int n) {
  if (n < 1) throw std::invalid_argument("q_poly: n must be positive");
  std::vector<Int> c(n);
  for (int nu = 0; nu < n; ++nu) c[nu] = stirling2(n, n - nu);
  return c;
}

inline Int q_poly(int n, const Int& t) {
  auto c = q_poly_coeffs(n);
  Int acc = 0;
  for (size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
  return acc;
}

// Row of unsigned first-kind Stirling numbers: out[k-1] counts the pi in S_n
// with exactly k cycles.
inline std::vector<Int> cycle_count_distribution(int n) {
  if (n < 1) throw std::invalid_argument("cycle_count_distribution: n must be positive");
  std::vector<Int> row{Int(1)};  // n = 0: empty permutation, zero cycles
  for (int m = 1; m <= n; ++m) {
    std::vector<Int> next(m + 1, Int(0));
    for (int k = 0; k < (int)row.size(); ++k) {
      next[k + 1] += row[k];
      next[k] += Int(m - 1) * row[k];
    }
    row = std::move(next);
  }
  return std::vector<Int>(row.begin() + 1, row.end());
}

// (1/n!) sum_pi C(s_d(pi), k), summed classwise; equals 1/(d^k k!) whenever
// dk <= n, and that equality is asserted here.
inline Rat poisson_moment_check(int d, int k, int n) {
  if (d < 1 || k < 0 || (long)d * k > n)
    throw std::invalid_argument("poisson_moment_check: need d k <= n");
  Int total = 0;
  for (const auto& p : partitions_of(n)) {
    CycleType c(p);
    int sd = c.multiplicity(d);
    if (sd < k) continue;
    total += c.class_size() * binomial(sd, k);
  }
  Rat got = make_rat(total, factorial(n));
  Rat want = make_rat(Int(1), int_pow(Int(d), k) * factorial(k));
  if (got != want) throw integrity_error("poisson_moment_check: identity failed");
  return got;
}

}  // namespace symchar
