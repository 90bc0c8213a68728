#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "symchar/parallel.hpp"
#include "symchar/permutation.hpp"
#include "symchar/rootnum.hpp"
#include "symchar/statistics.hpp"

namespace symchar {

using Real = boost::multiprecision::mpfr_float;

// Marker for an infinite-order generator in the torsion list.
constexpr int a_infinity = 0;

// <x_1..x_r, z_1..z_s, u_1,v_1,..,u_t,v_t |
//    x_i^{a_i},  x_1..x_r z_1^{e_1}..z_s^{e_s} [u_1,v_1]..[u_t,v_t]>.
struct FuchsianPresentation {
  int r = 0, s = 0, t = 0;
  std::vector<int> a, e;

  FuchsianPresentation(std::vector<int> a_, std::vector<int> e_, int t_)
      : r((int)a_.size()), s((int)e_.size()), t(t_), a(std::move(a_)), e(std::move(e_)) {
    if (t < 0) throw std::invalid_argument("FuchsianPresentation: t >= 0");
    for (int ai : a)
      if (ai != a_infinity && ai < 2)
        throw std::invalid_argument("FuchsianPresentation: torsion orders are >= 2");
    for (int ej : e)
      if (ej < 2) throw std::invalid_argument("FuchsianPresentation: power exponents are >= 2");
  }

  bool has_infinite() const {
    return std::find(a.begin(), a.end(), a_infinity) != a.end();
  }
};

struct OneRelatorPresentation {
  std::vector<int> e;

  explicit OneRelatorPresentation(std::vector<int> e_) : e(std::move(e_)) {
    if (e.empty()) throw std::invalid_argument("OneRelatorPresentation: needs an exponent");
    for (int ej : e)
      if (ej < 2) throw std::invalid_argument("OneRelatorPresentation: exponents are >= 2");
  }
};

// <x_1, y_1, .., x_d, y_d | x_1^{q-1} [x_1,y_1] [x_2,y_2] .. [x_d,y_d]>.
struct DemuskinPresentation {
  int q, d;

  DemuskinPresentation(int q_, int d_) : q(q_), d(d_) {
    if (q < 1) throw std::invalid_argument("DemuskinPresentation: q >= 1");
    if (d < 2) throw std::invalid_argument("DemuskinPresentation: d >= 2");
  }
};

using Presentation =
    std::variant<FuchsianPresentation, OneRelatorPresentation, DemuskinPresentation>;

inline FuchsianPresentation as_fuchsian(const OneRelatorPresentation& g) {
  return FuchsianPresentation({}, g.e, 0);
}

// mu drives the (n!)^mu factor of the growth rate, alpha > 0 is the
// membership condition for the family the asymptotics cover, delta is the
// leading parity factor (2 exactly when every torsion order is finite and
// odd and every power exponent is even), and period = lcm(a_i) sets the
// n^{-1/period} correction scale.
struct GroupInvariants {
  Rat mu, alpha;
  Int period;
  int delta = 1;
  bool inside = false;
};

inline GroupInvariants invariants(const FuchsianPresentation& g) {
  GroupInvariants inv;
  inv.mu = Rat(g.s + 2 * (g.t - 1));
  inv.alpha = Rat(2 * (g.t - 1));
  inv.period = 1;
  bool odd_torsion = true, even_powers = true;
  for (int ai : g.a) {
    if (ai == a_infinity) {
      inv.mu += 1;
      inv.alpha += 1;
      odd_torsion = false;
    } else {
      inv.mu += make_rat(ai - 1, ai);
      inv.alpha += make_rat(ai - 1, ai);
      inv.period = lcm(inv.period, Int(ai));
      if (ai % 2 == 0) odd_torsion = false;
    }
  }
  for (int ej : g.e) {
    inv.alpha += make_rat(2, ej);
    if (ej % 2) even_powers = false;
  }
  inv.delta = (odd_torsion && even_powers) ? 2 : 1;
  inv.inside = inv.alpha > 0;
  return inv;
}

inline GroupInvariants invariants(const DemuskinPresentation& g) {
  GroupInvariants inv;
  inv.mu = Rat(2 * g.d - 2);
  inv.alpha = inv.mu;
  inv.period = 1;
  inv.delta = (g.q % 2) ? 2 : 1;
  inv.inside = true;
  return inv;
}

inline GroupInvariants invariants(const Presentation& p) {
  if (auto* o = std::get_if<OneRelatorPresentation>(&p)) return invariants(as_fuchsian(*o));
  if (auto* d = std::get_if<DemuskinPresentation>(&p)) return invariants(*d);
  return invariants(std::get<FuchsianPresentation>(p));
}

// |Hom(Gamma, S_n)| = (n!)^{1-r} sum_lambda prod_i A_lambda^{(a_i)}
//                     prod_j m_lambda^{(e_j)} H_lambda^R,  R = r + s + 2t - 2,
// with H = n!/chi(1). When R < 0 the hook power moves to the other side,
//   (n!)^{s+2t-1} sum prod A prod m chi(1)^{-R},
// so both branches sum integers and only the prefactor needs exact division.
// Power exponents pull in the full column table of S_n, hence the tighter
// cap when s > 0.
inline Int hom_count_fuchsian(const FuchsianPresentation& g, int n, int threads = 1,
                              int n_ceiling = 45) {
  if (g.has_infinite())
    throw std::invalid_argument(
        "hom_count_fuchsian: infinite torsion order, reduce with tietze_reduce");
  if (n < 1) throw std::invalid_argument("hom_count_fuchsian: n >= 1");
  int cap = g.s > 0 ? std::min(n_ceiling, 26) : n_ceiling;
  if (n > cap) throw resource_error("hom_count_fuchsian: n above the ceiling");
  for (int ai : g.a) alpha_numerator_level(ai, n);  // build the cached tables once
  for (int ej : g.e) multiplicity_table(n, ej);
  const auto& lams = partitions_of(n);
  const Int nf = factorial(n);
  const int R = g.r + g.s + 2 * g.t - 2;
  auto map_chunk = [&](std::size_t lo, std::size_t hi) {
    Int acc = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      Int v = 1;
      for (int ai : g.a) v *= alpha_numerator(lams[i], ai);
      for (int ej : g.e) v *= multiplicity(lams[i], ej);
      if (v == 0) continue;
      Int dim = dimension(lams[i]);
      if (R >= 0)
        v *= int_pow(exact_div(nf, dim, "hom_count_fuchsian: hook"), (unsigned long)R);
      else
        v *= int_pow(dim, (unsigned long)-R);
      acc += v;
    }
    return acc;
  };
  Int total = chunked_reduce(lams.size(), Int(0), map_chunk,
                             [](Int x, Int y) { return x + y; }, threads);
  int p = R >= 0 ? 1 - g.r : g.s + 2 * g.t - 1;
  if (p >= 0) return total * int_pow(nf, (unsigned long)p);
  return exact_div(total, int_pow(nf, (unsigned long)-p), "hom_count_fuchsian: prefactor");
}

inline Int one_relator_hom(const OneRelatorPresentation& g, int n, int threads = 1,
                           int n_ceiling = 26) {
  return hom_count_fuchsian(as_fuchsian(g), n, threads, n_ceiling);
}

// |Hom(Gamma_{q,d}, S_n)| = sum_lambda S_lambda H_lambda^{2d-2} with
// S_lambda = sum_c |c| chi(c) chi(c^q). Needs the full column table.
inline Int demuskin_hom(int q, int d, int n, int threads = 1, int n_ceiling = 26) {
  DemuskinPresentation g(q, d);
  if (n < 1) throw std::invalid_argument("demuskin_hom: n >= 1");
  if (n > n_ceiling) throw resource_error("demuskin_hom: n above the ceiling");
  const auto& S = demuskin_numerator_table(n, q);
  const auto& lams = partitions_of(n);
  const Int nf = factorial(n);
  auto map_chunk = [&](std::size_t lo, std::size_t hi) {
    Int acc = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      if (S[i] == 0) continue;
      Int H = exact_div(nf, dimension(lams[i]), "demuskin_hom: hook");
      acc += S[i] * int_pow(H, (unsigned long)(2 * g.d - 2));
    }
    return acc;
  };
  return chunked_reduce(lams.size(), Int(0), map_chunk,
                        [](Int x, Int y) { return x + y; }, threads);
}

inline Int hom_count(const Presentation& p, int n, int threads = 1) {
  if (auto* o = std::get_if<OneRelatorPresentation>(&p)) return one_relator_hom(*o, n, threads);
  if (auto* d = std::get_if<DemuskinPresentation>(&p))
    return demuskin_hom(d->q, d->d, n, threads);
  return hom_count_fuchsian(std::get<FuchsianPresentation>(p), n, threads);
}

// Direct enumeration oracle. Torsion letters range over their power-of-one
// pools, every other letter over all of S_n; for a pure torsion presentation
// the first letter is solved from the long relation instead of enumerated.
// The estimated tuple count guards the runtime.
inline Int hom_count_brute(const FuchsianPresentation& g, int n,
                           long tuple_ceiling = 60000000) {
  if (n < 1) throw std::invalid_argument("hom_count_brute: n >= 1");
  std::vector<Perm> all;
  for_each_permutation(n, [&](const Perm& p) { all.push_back(p); });
  const Perm id = perm_identity(n);
  std::map<int, std::vector<Perm>> pool;
  for (int ai : g.a)
    if (ai != a_infinity && !pool.count(ai))
      for (const auto& p : all)
        if (perm_power(p, ai) == id) pool[ai].push_back(p);
  const bool eliminate = g.s == 0 && g.t == 0 && g.r >= 1;
  std::vector<const std::vector<Perm>*> lists;
  for (int i = eliminate ? 1 : 0; i < g.r; ++i)
    lists.push_back(g.a[i] == a_infinity ? &all : &pool[g.a[i]]);
  for (int j = 0; j < g.s + 2 * g.t; ++j) lists.push_back(&all);
  Int est = 1;
  for (auto* l : lists) est *= (long)l->size();
  if (est > tuple_ceiling) throw resource_error("hom_count_brute: tuple space too large");
  Int count = 0;
  std::vector<Perm> val(lists.size());
  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (idx < lists.size()) {
      for (const Perm& p : *lists[idx]) {
        val[idx] = p;
        rec(idx + 1);
      }
      return;
    }
    Perm w = id;
    std::size_t pos = 0;
    if (eliminate) {
      for (int i = 1; i < g.r; ++i) w = perm_mul(w, val[pos++]);
      Perm x1 = perm_inverse(w);
      if (g.a[0] == a_infinity || perm_power(x1, g.a[0]) == id) count += 1;
      return;
    }
    for (int i = 0; i < g.r; ++i) w = perm_mul(w, val[pos++]);
    for (int j = 0; j < g.s; ++j) w = perm_mul(w, perm_power(val[pos++], g.e[j]));
    for (int k = 0; k < g.t; ++k) {
      const Perm &u = val[pos], &v = val[pos + 1];
      pos += 2;
      w = perm_mul(w, perm_mul(perm_mul(perm_inverse(u), perm_inverse(v)), perm_mul(u, v)));
    }
    if (w == id) count += 1;
  };
  rec(0);
  return count;
}

// An infinite entry in the torsion list makes the group a free product in
// disguise: the long relation eliminates that generator (two Tietze moves),
// leaving C_{a_1} * .. * C_{a_{r-1}} * F_{s + 2t + #remaining infinities}.
struct FreeProductForm {
  std::vector<int> torsion;
  int free_rank = 0;
};

inline FreeProductForm tietze_reduce(const FuchsianPresentation& g) {
  if (!g.has_infinite())
    throw std::invalid_argument("tietze_reduce: no infinite-order generator to eliminate");
  FreeProductForm f;
  bool solved = false;
  for (int ai : g.a) {
    if (ai == a_infinity) {
      if (solved)
        ++f.free_rank;
      else
        solved = true;
    } else {
      f.torsion.push_back(ai);
    }
  }
  f.free_rank += g.s + 2 * g.t;
  return f;
}

inline Int hom_count_free_product(const FreeProductForm& f, int n) {
  if (n < 1) throw std::invalid_argument("hom_count_free_product: n >= 1");
  Int v = int_pow(factorial(n), (unsigned long)f.free_rank);
  for (int a : f.torsion) v *= hom_count_cyclic(a, n);
  return v;
}

// h_n = |Hom(Gamma, S_n)|/n!, s_n = n h_n - sum_{k<n} h_{n-k} s_k, and d is
// the reciprocal of the series 1 + sum h_k z^k. Subgroup counts that fail to
// come out as non-negative integers mean the hom counts are inconsistent.
struct GrowthSeries {
  std::vector<Rat> h;  // h[k-1] = h_k
  std::vector<Int> s;  // s[k-1] = s_k
  std::vector<Rat> d;  // d[k] = d_k, d[0] = 1
};

inline GrowthSeries subgroup_counts(const std::vector<Rat>& h) {
  GrowthSeries out;
  out.h = h;
  int N = (int)h.size();
  auto hk = [&](int k) { return k == 0 ? Rat(1) : h[k - 1]; };
  for (int n = 1; n <= N; ++n) {
    Rat acc = Rat(n) * h[n - 1];
    for (int k = 1; k < n; ++k) acc -= hk(n - k) * Rat(out.s[k - 1]);
    if (acc.get_den() != 1) throw integrity_error("subgroup_counts: s_n not an integer");
    if (acc < 0) throw integrity_error("subgroup_counts: s_n negative");
    out.s.push_back(acc.get_num());
  }
  out.d.push_back(Rat(1));
  for (int k = 1; k <= N; ++k) {
    Rat acc = 0;
    for (int j = 1; j <= k; ++j) acc += hk(j) * out.d[k - j];
    out.d.push_back(-acc);
  }
  return out;
}

inline GrowthSeries growth_series(const Presentation& p, int n_max, int threads = 1) {
  std::vector<Rat> h;
  for (int k = 1; k <= n_max; ++k)
    h.push_back(make_rat(hom_count(p, k, threads), factorial(k)));
  return subgroup_counts(h);
}

inline Real to_real(const Rat& x) {
  return Real(x.get_num().get_str()) / Real(x.get_den().get_str());
}

// log of the predicted leading term  delta L (n!)^mu Phi(n)  with
//   L = (2 pi)^{-1/2 - S} (a_1 .. a_r)^{-1/2} exp(-sum_{2 | a_i} 1/(2 a_i)),
//   Phi(n) = n^{3/2 - S} exp(sum_i sum_{t | a_i, t < a_i} n^{t/a_i} / t),
//   S = sum_i (1 - 1/a_i).
// Only meaningful inside the family, so alpha > 0 and finite torsion are
// demanded. Evaluated in mpfr at the requested decimal precision.
inline Real main_term_log(const FuchsianPresentation& g, long n, unsigned digits = 50) {
  if (g.has_infinite()) throw std::domain_error("main_term_log: infinite torsion order");
  GroupInvariants inv = invariants(g);
  if (!inv.inside) throw std::domain_error("main_term_log: alpha <= 0");
  if (n < 1) throw std::invalid_argument("main_term_log: n >= 1");
  unsigned saved = Real::default_precision();
  Real::default_precision(digits + 10);
  Rat S(0);
  for (int ai : g.a) S += make_rat(ai - 1, ai);
  Real nn(n);
  Real acc = inv.delta == 2 ? log(Real(2)) : Real(0);
  acc += (to_real(S) * -1 - Real(0.5)) * log(8 * atan(Real(1)));
  for (int ai : g.a) {
    acc -= log(Real(ai)) / 2;
    if (ai % 2 == 0) acc -= Real(1) / (2 * ai);
    for (int t : divisors(ai))
      if (t < ai) acc += pow(nn, Real(t) / Real(ai)) / t;
  }
  acc += to_real(inv.mu) * lgamma(Real(n + 1));
  acc += (Real(1.5) - to_real(S)) * log(nn);
  Real::default_precision(saved);
  return acc;
}

// Demuskin leading term  delta n (n!)^{2d-2}.
inline Real main_term_log(const DemuskinPresentation& g, long n, unsigned digits = 50) {
  if (n < 1) throw std::invalid_argument("main_term_log: n >= 1");
  unsigned saved = Real::default_precision();
  Real::default_precision(digits + 10);
  Real acc = g.q % 2 ? log(Real(2)) : Real(0);
  acc += log(Real(n)) + Real(2 * g.d - 2) * lgamma(Real(n + 1));
  Real::default_precision(saved);
  return acc;
}

inline Real main_term_log(const Presentation& p, long n, unsigned digits = 50) {
  if (auto* o = std::get_if<OneRelatorPresentation>(&p))
    return main_term_log(as_fuchsian(*o), n, digits);
  if (auto* d = std::get_if<DemuskinPresentation>(&p)) return main_term_log(*d, n, digits);
  return main_term_log(std::get<FuchsianPresentation>(p), n, digits);
}

// Strong equivalence compares (torsion multiset, mu, delta); the power
// exponents influence only the correction series, through the two divisor
// conditions below, which are reported separately. The products use the
// stabilized depth-two constants, so an empty exponent list gives 1.
inline Int tau_condition_value(const std::vector<int>& e) {
  Int v = 1;
  for (int ej : e) v *= stabilized_closed_form(Partition({1}), ej);
  return v;
}

inline Int sigma_condition_value(const std::vector<int>& e) {
  Int plus = 1, minus = 1;
  for (int ej : e) {
    plus *= stabilized_closed_form(Partition({2}), ej);
    minus *= stabilized_closed_form(Partition({1, 1}), ej);
  }
  return plus + minus;
}

struct EquivalenceReport {
  bool same_torsion = false, same_mu = false, same_delta = false;
  bool equivalent = false;
  bool tau_condition = false, sigma_condition = false;
};

inline EquivalenceReport equivalence(const FuchsianPresentation& x,
                                     const FuchsianPresentation& y) {
  EquivalenceReport rep;
  std::vector<int> ax = x.a, ay = y.a;
  std::sort(ax.begin(), ax.end());
  std::sort(ay.begin(), ay.end());
  GroupInvariants ix = invariants(x), iy = invariants(y);
  rep.same_torsion = ax == ay;
  rep.same_mu = ix.mu == iy.mu;
  rep.same_delta = ix.delta == iy.delta;
  rep.equivalent = rep.same_torsion && rep.same_mu && rep.same_delta;
  rep.tau_condition = tau_condition_value(x.e) == tau_condition_value(y.e);
  rep.sigma_condition = sigma_condition_value(x.e) == sigma_condition_value(y.e);
  return rep;
}

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

inline int preset_value(const std::string& tok, bool allow_inf) {
  if (allow_inf && tok == "inf") return a_infinity;
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("preset: bad value '" + tok + "'");
  }
  if (used != tok.size()) throw std::invalid_argument("preset: bad value '" + tok + "'");
  return v;
}

// Body tokens split on ';' and ','; a token without '=' continues the list
// of the key before it, so "a=2,3,7" and "a=2; a continuations" parse alike.
inline std::map<std::string, std::vector<std::string>> preset_fields(const std::string& body) {
  std::map<std::string, std::vector<std::string>> kv;
  std::string current;
  std::vector<std::string> toks;
  std::string cur;
  for (char ch : body) {
    if (ch == ';' || ch == ',') {
      toks.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  toks.push_back(cur);
  for (auto& raw : toks) {
    std::string tok = trim(raw);
    if (tok.empty()) {
      if (trim(body).empty()) continue;
      throw std::invalid_argument("preset: empty token");
    }
    std::size_t eq = tok.find('=');
    if (eq == std::string::npos) {
      if (current.empty()) throw std::invalid_argument("preset: value before any key");
      kv[current].push_back(tok);
    } else {
      current = trim(tok.substr(0, eq));
      if (current.empty()) throw std::invalid_argument("preset: empty key");
      if (kv.count(current)) throw std::invalid_argument("preset: duplicate key " + current);
      std::string val = trim(tok.substr(eq + 1));
      kv[current] = {};
      if (!val.empty()) kv[current].push_back(val);
    }
  }
  return kv;
}

inline int preset_single(std::map<std::string, std::vector<std::string>>& kv,
                         const std::string& key, int fallback, bool required = false) {
  auto it = kv.find(key);
  if (it == kv.end()) {
    if (required) throw std::invalid_argument("preset: missing key " + key);
    return fallback;
  }
  if (it->second.size() != 1)
    throw std::invalid_argument("preset: key " + key + " takes one value");
  int v = preset_value(it->second[0], false);
  kv.erase(it);
  return v;
}

inline std::vector<int> preset_list(std::map<std::string, std::vector<std::string>>& kv,
                                    const std::string& key, bool allow_inf) {
  std::vector<int> out;
  auto it = kv.find(key);
  if (it == kv.end()) return out;
  for (const auto& tok : it->second) out.push_back(preset_value(tok, allow_inf));
  kv.erase(it);
  return out;
}

}  // namespace detail

// Grammar: fuchsian(r=3;a=2,3,7;s=0;t=0), onerel(e=3,3), demuskin(q=5;d=2).
// r and s are optional and checked against the list lengths; "inf" marks an
// infinite torsion order.
inline Presentation parse_preset(const std::string& text) {
  std::string src = detail::trim(text);
  std::size_t open = src.find('(');
  if (open == std::string::npos || src.back() != ')')
    throw std::invalid_argument("preset: expected name(...)");
  std::string name = detail::trim(src.substr(0, open));
  auto kv = detail::preset_fields(src.substr(open + 1, src.size() - open - 2));
  auto finish = [&](Presentation p) {
    if (!kv.empty()) throw std::invalid_argument("preset: unknown key " + kv.begin()->first);
    return p;
  };
  if (name == "fuchsian") {
    std::vector<int> a = detail::preset_list(kv, "a", true);
    std::vector<int> e = detail::preset_list(kv, "e", false);
    int r = detail::preset_single(kv, "r", (int)a.size());
    int s = detail::preset_single(kv, "s", (int)e.size());
    int t = detail::preset_single(kv, "t", 0);
    if (r != (int)a.size()) throw std::invalid_argument("preset: r disagrees with a");
    if (s != (int)e.size()) throw std::invalid_argument("preset: s disagrees with e");
    return finish(FuchsianPresentation(std::move(a), std::move(e), t));
  }
  if (name == "onerel") {
    std::vector<int> e = detail::preset_list(kv, "e", false);
    return finish(OneRelatorPresentation(std::move(e)));
  }
  if (name == "demuskin") {
    int q = detail::preset_single(kv, "q", 0, true);
    int d = detail::preset_single(kv, "d", 0, true);
    return finish(DemuskinPresentation(q, d));
  }
  throw std::invalid_argument("preset: unknown kind " + name);
}

// Normal form used for cache keys and echoed in records: lists sorted,
// infinities last, no spaces.
inline std::string canonical_preset(const Presentation& p) {
  auto join = [](std::vector<int> v) {
    std::sort(v.begin(), v.end(), [](int x, int y) {
      if ((x == a_infinity) != (y == a_infinity)) return y == a_infinity;
      return x < y;
    });
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ',';
      out += v[i] == a_infinity ? std::string("inf") : std::to_string(v[i]);
    }
    return out;
  };
  if (auto* o = std::get_if<OneRelatorPresentation>(&p)) return "onerel(e=" + join(o->e) + ")";
  if (auto* d = std::get_if<DemuskinPresentation>(&p))
    return "demuskin(q=" + std::to_string(d->q) + ";d=" + std::to_string(d->d) + ")";
  const auto& g = std::get<FuchsianPresentation>(p);
  std::string out = "fuchsian(r=" + std::to_string(g.r);
  if (g.r) out += ";a=" + join(g.a);
  out += ";s=" + std::to_string(g.s);
  if (g.s) out += ";e=" + join(g.e);
  return out + ";t=" + std::to_string(g.t) + ")";
}

}  // namespace symchar
