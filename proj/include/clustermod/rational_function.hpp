#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "clustermod/laurent.hpp"

namespace clustermod {

// Element of Q(x_0, ..., x_{n-1}) kept as
//   (num/den) * x^mono * prod_f f^{e_f}
// where each f is a primitive polynomial (content 1, positive leading coefficient,
// not divisible by any variable, at least two terms) and every e_f is nonzero.
// The factors are not guaranteed coprime; equality falls back to exact expansion.
class RationalFunction {
 public:
  struct Factor {
    std::shared_ptr<const LaurentPolynomial> poly;
    std::size_t hash = 0;
    int exp = 0;
  };

  RationalFunction() = default;
  explicit RationalFunction(int nvars) : nvars_(nvars) {}

  static RationalFunction zero(int nvars) {
    RationalFunction r(nvars);
    r.num_ = 0;
    return r;
  }
  static RationalFunction one(int nvars) { return RationalFunction(nvars); }
  static RationalFunction constant(int nvars, const BigInt& num, const BigInt& den = 1) {
    if (den == 0) throw InternalError("zero denominator");
    RationalFunction r(nvars);
    r.num_ = num;
    r.den_ = den;
    r.normalize_constant();
    return r;
  }
  static RationalFunction variable(int nvars, int i) {
    RationalFunction r(nvars);
    r.mono_ = Monomial::unit(i);
    return r;
  }
  static RationalFunction monomial(int nvars, const Monomial& m) {
    RationalFunction r(nvars);
    r.mono_ = m;
    return r;
  }

  // `hints` are candidate factors tried by trial division.
  static RationalFunction from_polynomial(const LaurentPolynomial& p, const std::vector<Factor>& hints = {}) {
    RationalFunction r(p.nvars());
    if (p.is_zero()) {
      r.num_ = 0;
      return r;
    }
    auto [c, m, prim] = split(p);
    r.num_ = c;
    r.mono_ = m;
    absorb(std::move(prim), hints, r.factors_);
    return r;
  }

  int nvars() const noexcept { return nvars_; }
  bool is_zero() const noexcept { return num_ == 0; }
  bool is_one() const noexcept { return num_ == 1 && den_ == 1 && mono_.is_one() && factors_.empty(); }
  const std::vector<Factor>& factors() const noexcept { return factors_; }
  const Monomial& monomial_part() const noexcept { return mono_; }
  const BigInt& constant_numerator() const noexcept { return num_; }
  const BigInt& constant_denominator() const noexcept { return den_; }

  RationalFunction operator*(const RationalFunction& o) const {
    if (is_zero() || o.is_zero()) return zero(nvars_);
    RationalFunction r(nvars_);
    r.num_ = num_ * o.num_;
    r.den_ = den_ * o.den_;
    r.normalize_constant();
    r.mono_ = mono_ + o.mono_;
    r.factors_ = factors_;
    for (const auto& f : o.factors_) add_factor(r.factors_, f, f.exp);
    r.reduce_cross();
    return r;
  }

  RationalFunction inverse() const {
    if (is_zero()) throw InternalError("inverse of zero rational function");
    RationalFunction r(nvars_);
    r.num_ = den_;
    r.den_ = num_;
    r.normalize_constant();
    r.mono_ = -mono_;
    r.factors_ = factors_;
    for (auto& f : r.factors_) f.exp = -f.exp;
    return r;
  }

  RationalFunction operator/(const RationalFunction& o) const { return *this * o.inverse(); }

  RationalFunction pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    if (is_zero()) return e == 0 ? one(nvars_) : zero(nvars_);
    RationalFunction r(nvars_);
    r.num_ = boost::multiprecision::pow(num_, static_cast<unsigned>(e));
    r.den_ = boost::multiprecision::pow(den_, static_cast<unsigned>(e));
    r.mono_ = mono_.scaled(e);
    if (e != 0) {
      r.factors_ = factors_;
      for (auto& f : r.factors_) f.exp *= e;
    }
    return r;
  }

  // Sum over the common denominator; the new numerator is trial-divided by the factors
  // of both operands and by `hints`.
  static RationalFunction add(const RationalFunction& a, const RationalFunction& b,
                              const std::vector<Factor>& hints = {}) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const int n = a.nvars_;
    const Monomial m0 = Monomial::min(a.mono_, b.mono_);
    std::vector<Factor> common, ra, rb;
    std::size_t i = 0, j = 0;
    auto take = [&](const Factor& f, int ea, int eb) {
      const int l = std::min(ea, eb);
      if (l) common.push_back(with_exp(f, l));
      if (ea - l) ra.push_back(with_exp(f, ea - l));
      if (eb - l) rb.push_back(with_exp(f, eb - l));
    };
    while (i < a.factors_.size() || j < b.factors_.size()) {
      if (j == b.factors_.size() || (i < a.factors_.size() && factor_less(a.factors_[i], b.factors_[j]))) {
        take(a.factors_[i], a.factors_[i].exp, 0);
        ++i;
      } else if (i == a.factors_.size() || factor_less(b.factors_[j], a.factors_[i])) {
        take(b.factors_[j], 0, b.factors_[j].exp);
        ++j;
      } else {
        take(a.factors_[i], a.factors_[i].exp, b.factors_[j].exp);
        ++i;
        ++j;
      }
    }
    const BigInt q = boost::multiprecision::lcm(a.den_, b.den_);
    const LaurentPolynomial pa = expand(n, a.num_ * (q / a.den_), a.mono_ - m0, ra);
    const LaurentPolynomial pb = expand(n, b.num_ * (q / b.den_), b.mono_ - m0, rb);
    const LaurentPolynomial s = pa + pb;
    if (s.is_zero()) return zero(n);
    auto [c, m, prim] = split(s);
    RationalFunction r(n);
    r.num_ = c;
    r.den_ = q;
    r.normalize_constant();
    r.mono_ = m0 + m;
    r.factors_ = std::move(common);
    std::vector<Factor> candidates = a.factors_;
    candidates.insert(candidates.end(), b.factors_.begin(), b.factors_.end());
    candidates.insert(candidates.end(), hints.begin(), hints.end());
    absorb(std::move(prim), candidates, r.factors_);
    r.reduce_cross();
    return r;
  }

  RationalFunction operator+(const RationalFunction& o) const { return add(*this, o); }

  // Numerator and denominator as explicit Laurent polynomials (denominator has positive
  // constant and no monomial part).
  LaurentPolynomial numerator() const {
    std::vector<Factor> pos;
    for (const auto& f : factors_)
      if (f.exp > 0) pos.push_back(f);
    return expand(nvars_, num_, mono_, pos);
  }
  LaurentPolynomial denominator() const {
    std::vector<Factor> neg;
    for (const auto& f : factors_)
      if (f.exp < 0) neg.push_back(with_exp(f, -f.exp));
    return expand(nvars_, den_, Monomial{}, neg);
  }

  // The function as a Laurent polynomial, if it is one.
  std::optional<LaurentPolynomial> as_laurent() const {
    if (is_zero()) return LaurentPolynomial(nvars_);
    bool has_neg = false;
    for (const auto& f : factors_) has_neg = has_neg || f.exp < 0;
    if (!has_neg) return den_ == 1 ? std::optional(numerator()) : std::nullopt;
    return numerator().divide_exact(denominator());
  }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    if (a.structurally_equal(b)) return true;
    if (a.is_zero() || b.is_zero()) return false;
    const RationalFunction q = a / b;
    if (q.is_one()) return true;
    if (q.factors_.empty()) return false;
    return q.numerator() == q.denominator();
  }

  bool structurally_equal(const RationalFunction& o) const {
    if (num_ != o.num_ || den_ != o.den_ || mono_ != o.mono_ || factors_.size() != o.factors_.size()) return false;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (factors_[i].exp != o.factors_[i].exp || !same_poly(factors_[i], o.factors_[i])) return false;
    return true;
  }

  std::uint64_t evaluate_mod(const std::vector<std::uint64_t>& point, std::uint64_t p) const {
    std::uint64_t v = detail::mulmod(detail::bigmod(num_, p), detail::powmod(detail::bigmod(den_, p), p - 2, p), p);
    v = detail::mulmod(v, LaurentPolynomial::monomial(nvars_, mono_, 1).evaluate_mod(point, p), p);
    for (const auto& f : factors_) {
      std::uint64_t fv = f.poly->evaluate_mod(point, p);
      if (f.exp < 0) fv = detail::powmod(fv, p - 2, p);
      v = detail::mulmod(v, detail::powmod(fv, static_cast<std::uint64_t>(f.exp < 0 ? -f.exp : f.exp), p), p);
    }
    return v;
  }

  // Total number of stored terms across factors; a size measure for reports.
  std::size_t complexity() const {
    std::size_t s = 1;
    for (const auto& f : factors_) s += f.poly->size();
    return s;
  }

  std::string to_string(const std::string& var) const {
    const auto n = numerator();
    const auto d = denominator();
    const bool n_simple = n.size() <= 1;
    std::string s = n_simple ? n.to_string(var) : "(" + n.to_string(var) + ")";
    if (d.is_constant() && d.leading().c == 1) return n.to_string(var);
    return s + "/(" + d.to_string(var) + ")";
  }

 private:
  struct Split {
    BigInt c;
    Monomial m;
    LaurentPolynomial prim;
  };

  // p = c * x^m * prim with prim primitive, positive leading coefficient, no monomial factor.
  static Split split(const LaurentPolynomial& p) {
    const Monomial m = p.min_exponents();
    BigInt c = p.content();
    if (p.leading().c < 0) c = -c;
    LaurentPolynomial prim = p.shifted(-m).divided_by(c);
    return {std::move(c), m, std::move(prim)};
  }

  static Factor make_factor(LaurentPolynomial p, int exp) {
    Factor f;
    f.hash = p.hash();
    f.poly = std::make_shared<const LaurentPolynomial>(std::move(p));
    f.exp = exp;
    return f;
  }

  static Factor with_exp(const Factor& f, int exp) {
    Factor g = f;
    g.exp = exp;
    return g;
  }

  static bool same_poly(const Factor& a, const Factor& b) {
    return a.poly == b.poly || (a.hash == b.hash && *a.poly == *b.poly);
  }

  static bool factor_less(const Factor& a, const Factor& b) {
    if (a.hash != b.hash) return a.hash < b.hash;
    if (a.poly == b.poly) return false;
    return *a.poly < *b.poly;
  }

  static void add_factor(std::vector<Factor>& list, const Factor& f, int exp) {
    if (exp == 0) return;
    auto it = std::lower_bound(list.begin(), list.end(), f, factor_less);
    if (it != list.end() && same_poly(*it, f)) {
      it->exp += exp;
      if (it->exp == 0) list.erase(it);
    } else {
      list.insert(it, with_exp(f, exp));
    }
  }

  // Splits off every candidate dividing `prim`; what remains becomes a new factor.
  static void absorb(LaurentPolynomial prim, const std::vector<Factor>& candidates, std::vector<Factor>& out) {
    std::vector<const Factor*> tried;
    for (const auto& c : candidates) {
      if (prim.is_constant()) break;
      bool dup = false;
      for (const auto* t : tried) dup = dup || same_poly(*t, c);
      if (dup) continue;
      tried.push_back(&c);
      while (!prim.is_constant()) {
        auto q = prim.divide_exact(*c.poly);
        if (!q) break;
        prim = std::move(*q);
        add_factor(out, c, 1);
      }
    }
    if (!prim.is_constant()) add_factor(out, make_factor(std::move(prim), 1), 1);
  }

  static LaurentPolynomial expand(int n, const BigInt& c, const Monomial& m, std::vector<Factor> fs) {
    std::sort(fs.begin(), fs.end(), [](const Factor& a, const Factor& b) { return a.poly->size() < b.poly->size(); });
    LaurentPolynomial r = LaurentPolynomial::monomial(n, m, c);
    for (const auto& f : fs) r = r * f.poly->pow(static_cast<unsigned>(f.exp));
    return r;
  }

  void normalize_constant() {
    if (num_ == 0) {
      den_ = 1;
      mono_ = Monomial{};
      factors_.clear();
      return;
    }
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g != 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  // Cancels a negative-exponent factor against a positive one when one divides the other.
  void reduce_cross() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < factors_.size() && !changed; ++i) {
        if (factors_[i].exp <= 0) continue;
        for (std::size_t j = 0; j < factors_.size() && !changed; ++j) {
          if (factors_[j].exp >= 0) continue;
          const Factor f = factors_[i], g = factors_[j];
          if (auto q = f.poly->divide_exact(*g.poly)) {
            // f = g q: f^a = g^a q^a.
            add_factor(factors_, f, -f.exp);
            add_factor(factors_, g, f.exp);
            if (!q->is_constant()) add_factor(factors_, make_factor(std::move(*q), 1), f.exp);
            changed = true;
          } else if (auto q2 = g.poly->divide_exact(*f.poly)) {
            add_factor(factors_, g, -g.exp);
            add_factor(factors_, f, g.exp);
            if (!q2->is_constant()) add_factor(factors_, make_factor(std::move(*q2), 1), g.exp);
            changed = true;
          }
        }
      }
    }
  }

  int nvars_ = 0;
  BigInt num_ = 1;
  BigInt den_ = 1;
  Monomial mono_;
  std::vector<Factor> factors_;
};

}  // namespace clustermod
