#pragma once

// Small exact polynomial types: dense univariate over Q, and sparse
// multivariate over Q in the cycle-count variables s_1, s_2, ...

#include "symchar/common.hpp"

#include <map>
#include <sstream>

namespace symchar {

class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  static RatPoly constant(Rat v) { return RatPoly(std::vector<Rat>{std::move(v)}); }
  static RatPoly monomial(Rat v, int deg) {
    std::vector<Rat> c(deg + 1, Rat(0));
    c[deg] = std::move(v);
    return RatPoly(std::move(c));
  }

  const std::vector<Rat>& coeffs() const { return c_; }
  int degree() const { return (int)c_.size() - 1; }  // -1 for the zero polynomial
  bool zero() const { return c_.empty(); }
  Rat coeff(int d) const { return d >= 0 && d < (int)c_.size() ? c_[d] : Rat(0); }

  RatPoly& operator+=(const RatPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  RatPoly& operator-=(const RatPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
  friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }

  friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.zero() || b.zero()) return RatPoly{};
    std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return RatPoly(std::move(c));
  }

  RatPoly scaled(const Rat& f) const {
    std::vector<Rat> c = c_;
    for (auto& x : c) x *= f;
    return RatPoly(std::move(c));
  }

  RatPoly shifted_up(int k) const {  // multiply by z^k
    if (zero()) return {};
    std::vector<Rat> c(c_.size() + k, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) c[i + k] = c_[i];
    return RatPoly(std::move(c));
  }

  // Antiderivative vanishing at 0.
  RatPoly integral() const {
    if (zero()) return {};
    std::vector<Rat> c(c_.size() + 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) c[i + 1] = c_[i] / Rat((long)(i + 1));
    return RatPoly(std::move(c));
  }

  Rat eval(const Rat& x) const {
    Rat acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  bool operator==(const RatPoly&) const = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;  // c_[d] is the z^d coefficient
};

// Truncated product of formal power series given as polynomials.
inline RatPoly mul_truncated(const RatPoly& a, const RatPoly& b, int max_deg) {
  std::vector<Rat> c(max_deg + 1, Rat(0));
  for (int i = 0; i <= std::min(a.degree(), max_deg); ++i)
    for (int j = 0; j <= std::min(b.degree(), max_deg - i); ++j)
      c[i + j] += a.coeff(i) * b.coeff(j);
  return RatPoly(std::move(c));
}

// Polynomial in s_1, s_2, ...; keys are exponent vectors with trailing zeros
// trimmed, so the constant term has key {}.
class StatPoly {
 public:
  using Key = std::vector<int>;

  StatPoly() = default;

  static StatPoly constant(Rat v) {
    StatPoly p;
    p.add_term({}, std::move(v));
    return p;
  }

  void add_term(Key e, Rat v) {
    while (!e.empty() && e.back() == 0) e.pop_back();
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (v != 0) terms_.emplace(std::move(e), std::move(v));
    } else {
      it->second += v;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const std::map<Key, Rat>& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }

  StatPoly& operator+=(const StatPoly& o) {
    for (auto& [e, v] : o.terms_) add_term(e, v);
    return *this;
  }

  friend StatPoly operator*(const StatPoly& a, const StatPoly& b) {
    StatPoly p;
    for (auto& [ea, va] : a.terms_)
      for (auto& [eb, vb] : b.terms_) {
        Key e = ea;
        if (eb.size() > e.size()) e.resize(eb.size(), 0);
        for (size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
        p.add_term(std::move(e), va * vb);
      }
    return p;
  }

  StatPoly scaled(const Rat& f) const {
    StatPoly p;
    if (f == 0) return p;
    for (auto& [e, v] : terms_) p.terms_.emplace(e, v * f);
    return p;
  }

  // Evaluate with s_i = s[i-1] (entries beyond the vector are zero).
  Rat eval(const std::vector<int>& s) const {
    Rat acc(0);
    for (auto& [e, v] : terms_) {
      Rat term = v;
      bool dead = false;
      for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        long si = i < s.size() ? s[i] : 0;
        if (si == 0) { dead = true; break; }
        term *= int_pow(Int(si), e[i]);
      }
      if (!dead) acc += term;
    }
    return acc;
  }

  bool operator==(const StatPoly&) const = default;

 private:
  std::map<Key, Rat> terms_;
};

// C(s, k) as a degree-k polynomial in s.
inline RatPoly binomial_poly(int k) {
  RatPoly p = RatPoly::constant(Rat(1));
  for (int j = 0; j < k; ++j)
    p = p * RatPoly(std::vector<Rat>{Rat(-j), Rat(1)});
  return p.scaled(Rat(Int(1), factorial(k)));
}

// Lift a univariate polynomial to variable s_var (1-based).
inline StatPoly lift_to_var(const RatPoly& p, int var) {
  StatPoly out;
  for (int d = 0; d <= p.degree(); ++d) {
    if (p.coeff(d) == 0) continue;
    StatPoly::Key e(var, 0);
    e[var - 1] = d;
    out.add_term(std::move(e), p.coeff(d));
  }
  return out;
}

inline std::string rat_string(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace symchar
