#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "symchar/permutation.hpp"
#include "symchar/statistics.hpp"

using namespace symchar;

namespace {

// brute-force moment sum over S_n
Int brute_moment(int q, const std::map<int, int>& e, bool alternating, int n) {
  Int total = 0;
  for_each_permutation(n, [&](const Perm& w) {
    if (perm_power(w, q) != perm_identity(n)) return;
    CycleType c = cycle_type(w);
    Int term = 1;
    for (auto& [t, et] : e) term *= int_pow(Int(c.multiplicity(t)), et);
    if (alternating)
      for (int t = 2; t <= n; t += 2)
        if (c.multiplicity(t) % 2 == 1) term = -term;
    total += term;
  });
  return total;
}

}  // namespace

TEST_CASE("counts of solutions of pi^q = 1") {
  CHECK(hom_count_cyclic(2, 4) == 10);
  CHECK(hom_count_cyclic(3, 3) == 3);
  for (int n = 0; n <= 12; ++n) CHECK(hom_count_cyclic(1, n) == 1);
  for (int q = 1; q <= 8; ++q) CHECK(hom_count_cyclic(q, 0) == 1);
  for (int q = 1; q <= 8; ++q)
    for (int n = 1; n <= 9; ++n) {
      long brute = 0;
      for_each_permutation(n, [&](const Perm& w) {
        if (perm_power(w, q) == perm_identity(n)) ++brute;
      });
      CHECK(hom_count_cyclic(q, n) == Int(brute));
    }
}

TEST_CASE("constrained solution counts") {
  CHECK(constrained_count(4, 2, {{1, 2}}) == 6);
  CHECK(constrained_count(3, 2, {{1, 0}}) == 0);  // parity obstruction
  CHECK(constrained_count(3, 2, {{1, 1}}) == 3);
  CHECK_THROWS_AS(constrained_count(4, 2, {{2, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(constrained_count(4, 2, {{3, 1}}), std::invalid_argument);

  // against brute force: prescribe all proper-divisor cycle counts
  for (int q : {2, 3, 4}) {
    std::vector<int> pd;
    for (int t : divisors(q))
      if (t < q) pd.push_back(t);
    for (int n = 1; n <= 7; ++n) {
      std::map<std::vector<int>, long> brute;
      for_each_permutation(n, [&](const Perm& w) {
        if (perm_power(w, q) != perm_identity(n)) return;
        std::vector<int> key;
        CycleType c = cycle_type(w);
        for (int t : pd) key.push_back(c.multiplicity(t));
        brute[key]++;
      });
      for (auto& [key, cnt] : brute) {
        std::map<int, int> s;
        for (size_t i = 0; i < pd.size(); ++i) s[pd[i]] = key[i];
        CHECK(constrained_count(n, q, s) == Int(cnt));
      }
    }
  }

  // summing over all tuples recovers the plain count
  for (int q = 1; q <= 6; ++q)
    for (int n = 0; n <= 12; ++n) {
      std::vector<int> pd;
      for (int t : divisors(q))
        if (t < q) pd.push_back(t);
      Int total = 0;
      std::map<int, int> s;
      std::function<void(size_t, int)> rec = [&](size_t i, int used) {
        if (i == pd.size()) {
          total += constrained_count(n, q, s);
          return;
        }
        for (int c = 0; used + c * pd[i] <= n; ++c) {
          s[pd[i]] = c;
          rec(i + 1, used + c * pd[i]);
        }
      };
      rec(0, 0);
      CHECK(total == hom_count_cyclic(q, n));
    }
}

TEST_CASE("cycle moment sums match brute force") {
  CHECK(cycle_moment_sum(MomentSpec(2, {{1, 1}}), 3) == 6);
  for (int q : {2, 3, 4, 6}) {
    std::vector<std::map<int, int>> specs{{}};
    std::vector<int> pd;
    for (int t : divisors(q))
      if (t < q) pd.push_back(t);
    for (int t : pd) {
      specs.push_back({{t, 1}});
      specs.push_back({{t, 2}});
    }
    if (pd.size() >= 2) {
      specs.push_back({{pd[0], 1}, {pd[1], 1}});
      specs.push_back({{pd[0], 2}, {pd[1], 1}});
    }
    if (pd.size() >= 3) specs.push_back({{pd[0], 1}, {pd[1], 1}, {pd[2], 1}});
    for (const auto& e : specs)
      for (bool alt : {false, true})
        for (int n = 0; n <= 8; ++n)
          CHECK(cycle_moment_sum(MomentSpec(q, e, alt), n) == brute_moment(q, e, alt, n));
  }
  // all exponents zero: the plain sum is the solution count
  for (int q : {2, 3, 5, 6})
    for (int n = 0; n <= 12; ++n)
      CHECK(cycle_moment_sum(MomentSpec(q, {}), n) == hom_count_cyclic(q, n));
}

TEST_CASE("moment polynomials: exact family generates the moment sums") {
  // S_e(n) = sum_d alpha_d n!/(n-d)! H(n-d) with H from the matching sign
  for (int q : {2, 3, 4, 6}) {
    std::vector<int> pd;
    for (int t : divisors(q))
      if (t < q) pd.push_back(t);
    std::vector<std::map<int, int>> specs{{}, {{pd[0], 1}}, {{pd[0], 3}}};
    if (pd.size() >= 2) specs.push_back({{pd[0], 1}, {pd[1], 2}});
    for (const auto& e : specs)
      for (bool alt : {false, true}) {
        MomentSpec spec(q, e, alt);
        RatPoly P = moment_polynomial(spec, MomentFamily::exact);
        CHECK(P.degree() <= spec.degree());
        for (int n = 0; n <= 20; ++n) {
          Rat sum(0);
          for (int d = 0; d <= P.degree(); ++d) {
            if (d > n) continue;
            Int hn = cycle_moment_sum(MomentSpec(q, {}, alt), n - d);
            sum += P.coeff(d) * Rat(falling(n, d) * hn);
          }
          CHECK(sum == Rat(cycle_moment_sum(spec, n)));
        }
      }
  }
  // all-zero exponents: P = 1 in both families
  for (int q : {2, 5}) {
    CHECK(moment_polynomial(MomentSpec(q, {}), MomentFamily::exact) ==
          RatPoly::constant(Rat(1)));
    CHECK(moment_polynomial(MomentSpec(q, {}), MomentFamily::display) ==
          RatPoly::constant(Rat(1)));
  }
}

TEST_CASE("moment polynomials: display family") {
  // constant term 1, degree bound D
  for (int q : {2, 4, 6}) {
    std::vector<int> pd;
    for (int t : divisors(q))
      if (t < q) pd.push_back(t);
    for (int t : pd)
      for (int k = 0; k <= 4; ++k) {
        MomentSpec spec(q, {{t, k}});
        RatPoly P = moment_polynomial(spec, MomentFamily::display);
        CHECK(P.coeff(0) == 1);
        CHECK(P.degree() <= spec.degree());
        // single-divisor closed form: sum_nu S(k+1, nu+1) z^{t nu} / t^nu
        RatPoly want;
        for (int nu = 0; nu <= k; ++nu)
          want += RatPoly::monomial(make_rat(stirling2(k + 1, nu + 1), int_pow(Int(t), nu)),
                                    t * nu);
        CHECK(P == want);
      }
  }
  // the display normal form generates prod (s_t + 1)^{e_t}
  for (int q : {2, 4}) {
    std::vector<int> pd;
    for (int t : divisors(q))
      if (t < q) pd.push_back(t);
    std::vector<std::map<int, int>> specs{{{pd[0], 1}}, {{pd[0], 2}}};
    if (pd.size() >= 2) specs.push_back({{pd[0], 1}, {pd[1], 1}});
    for (const auto& e : specs) {
      MomentSpec spec(q, e);
      RatPoly P = moment_polynomial(spec, MomentFamily::display);
      for (int n = 0; n <= 8; ++n) {
        Rat sum(0);
        for (int d = 0; d <= std::min(P.degree(), n); ++d)
          sum += P.coeff(d) * Rat(falling(n, d) * hom_count_cyclic(q, n - d));
        Int brute = 0;
        for_each_permutation(n, [&](const Perm& w) {
          if (perm_power(w, q) != perm_identity(n)) return;
          CycleType c = cycle_type(w);
          Int term = 1;
          for (auto& [t, et] : e) term *= int_pow(Int(c.multiplicity(t) + 1), et);
          brute += term;
        });
        CHECK(sum == Rat(brute));
      }
    }
  }
}

TEST_CASE("alpha coefficients") {
  // e = 0: alpha = (1)
  auto a0 = alpha_coefficients(MomentSpec(3, {}));
  REQUIRE(a0.size() == 1);
  CHECK(a0[0] == 1);
  CHECK_THROWS_AS(alpha_coefficients(MomentSpec(2, {{1, 1}}, true)), std::invalid_argument);
  // the degree-wise recursion agrees with the polynomial route
  for (int q : {2, 3, 4, 6}) {
    std::vector<int> pd;
    for (int t : divisors(q))
      if (t < q) pd.push_back(t);
    std::vector<std::map<int, int>> specs{{}, {{pd[0], 2}}};
    if (pd.size() >= 2) specs.push_back({{pd[0], 1}, {pd[1], 2}});
    for (const auto& e : specs) {
      MomentSpec spec(q, e);
      auto alphas = alpha_coefficients(spec);
      RatPoly P = moment_polynomial(spec, MomentFamily::exact);
      REQUIRE((int)alphas.size() == spec.degree() + 1);
      for (int d = 0; d <= spec.degree(); ++d) CHECK(alphas[d] == P.coeff(d));
    }
  }
  // and therefore reproduces the exact sums (q=2, e1=1, n <= 12)
  MomentSpec spec(2, {{1, 1}});
  auto a = alpha_coefficients(spec);
  for (int n = 0; n <= 12; ++n) {
    Rat sum(0);
    for (int d = 0; d < (int)a.size(); ++d)
      if (d <= n) sum += a[d] * Rat(falling(n, d) * hom_count_cyclic(2, n - d));
    CHECK(sum == Rat(cycle_moment_sum(spec, n)));
  }
}

TEST_CASE("stirling numbers and Q polynomials") {
  for (int n = 1; n <= 12; ++n) {
    CHECK(stirling2(n, n) == 1);
    CHECK(stirling2(n, 1) == 1);
  }
  CHECK(stirling2(4, 2) == 7);
  for (int n = 0; n <= 8; ++n)
    for (int m = 0; m <= n; ++m) CHECK(stirling2(n, m) == oracle::stirling2_brute(n, m));

  // (mu+1) S(k+1, mu+2) = sum_nu C(k,nu) S(k-nu+1, mu+1)
  for (int k = 1; k <= 20; ++k)
    for (int mu = 0; mu <= k - 1; ++mu) {
      Int lhs = Int(mu + 1) * stirling2(k + 1, mu + 2);
      Int rhs = 0;
      for (int nu = 1; nu <= k - mu; ++nu) rhs += binomial(k, nu) * stirling2(k - nu + 1, mu + 1);
      CHECK(lhs == rhs);
    }

  // Q_1 = 1, Q_2(t) = 1 + t, worked values
  CHECK(q_poly_coeffs(1) == std::vector<Int>{1});
  CHECK(q_poly_coeffs(2) == std::vector<Int>{Int(1), Int(1)});
  CHECK(q_poly(2, 3) == 4);
  CHECK(q_poly(3, 2) == 1 + 3 * 2 + 1 * 4);  // S(3,3)+S(3,2)t+S(3,1)t^2

  // coefficientwise super-multiplicativity
  for (int n = 1; n <= 29; ++n)
    for (int m = 1; n + m <= 30; ++m) {
      auto a = q_poly_coeffs(n), b = q_poly_coeffs(m), c = q_poly_coeffs(n + m);
      std::vector<Int> prod(a.size() + b.size() - 1, Int(0));
      for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
      for (size_t i = 0; i < prod.size(); ++i) CHECK(prod[i] <= c[i]);
    }
}

TEST_CASE("cycle count distribution") {
  for (int n = 1; n <= 12; ++n) {
    auto row = cycle_count_distribution(n);
    REQUIRE((int)row.size() == n);
    CHECK(row[n - 1] == 1);
    CHECK(row[0] == factorial(n - 1));
    Int sum = 0;
    for (auto& x : row) sum += x;
    CHECK(sum == factorial(n));
  }
  for (int n = 1; n <= 7; ++n) {
    std::vector<long> brute(n, 0);
    for_each_permutation(n, [&](const Perm& w) { brute[cycle_type(w).cycles() - 1]++; });
    auto row = cycle_count_distribution(n);
    for (int k = 0; k < n; ++k) CHECK(row[k] == Int(brute[k]));
  }
  // tail bound: #\{at least k cycles\} <= n! (log n)^{k-1} / (k-1)!
  for (int n = 2; n <= 12; ++n) {
    auto row = cycle_count_distribution(n);
    for (int k = 1; k <= n; ++k) {
      Int tail = 0;
      for (int j = k - 1; j < n; ++j) tail += row[j];
      long double lhs = tail.get_d();
      long double rhs = factorial(n).get_d();
      for (int i = 1; i < k; ++i) rhs *= std::log((long double)n) / i;
      CHECK(lhs <= rhs * (1 + 1e-9L));
    }
  }
}

TEST_CASE("poisson moments of d-cycle counts") {
  for (int n = 1; n <= 10; ++n) CHECK(poisson_moment_check(1, 1, n) == 1);
  CHECK(poisson_moment_check(2, 2, 6) == Rat(1, 8));
  CHECK(poisson_moment_check(3, 1, 5) == Rat(1, 3));
  CHECK_THROWS_AS(poisson_moment_check(3, 2, 5), std::invalid_argument);
  for (int n = 1; n <= 12; ++n)
    for (int d = 1; d <= n; ++d)
      for (int k = 0; d * k <= n; ++k)
        CHECK(poisson_moment_check(d, k, n) ==
              make_rat(Int(1), int_pow(Int(d), k) * factorial(k)));
  // brute-force spot check of the raw sum
  int n = 6, d = 2, k = 2;
  Int total = 0;
  for_each_permutation(n, [&](const Perm& w) {
    int sd = cycle_type(w).multiplicity(d);
    if (sd >= k) total += binomial(sd, k);
  });
  CHECK(make_rat(total, factorial(n)) == poisson_moment_check(d, k, n));
}
