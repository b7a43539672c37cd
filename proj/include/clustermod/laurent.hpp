#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "clustermod/error.hpp"

namespace clustermod {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kMaxVariables = 16;

// Dense exponent vector; unused trailing slots stay zero.
struct Monomial {
  std::array<std::int32_t, kMaxVariables> e{};

  static Monomial unit(int i, std::int32_t power = 1) {
    Monomial m;
    m.e[static_cast<std::size_t>(i)] = power;
    return m;
  }

  bool is_one() const {
    for (auto v : e)
      if (v) return false;
    return true;
  }

  Monomial operator+(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (__builtin_add_overflow(e[i], o.e[i], &r.e[i])) throw Overflow("exponent overflow");
    return r;
  }
  Monomial operator-(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (__builtin_sub_overflow(e[i], o.e[i], &r.e[i])) throw Overflow("exponent overflow");
    return r;
  }
  Monomial scaled(std::int32_t k) const {
    Monomial r;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (__builtin_mul_overflow(e[i], k, &r.e[i])) throw Overflow("exponent overflow");
    return r;
  }
  Monomial operator-() const { return Monomial{} - *this; }

  static Monomial min(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < a.e.size(); ++i) r.e[i] = std::min(a.e[i], b.e[i]);
    return r;
  }
  static Monomial max(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < a.e.size(); ++i) r.e[i] = std::max(a.e[i], b.e[i]);
    return r;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial& a, const Monomial& b) { return a.e <=> b.e; }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : m.e) {
      h ^= static_cast<std::uint32_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

inline std::string monomial_to_string(const Monomial& m, int nvars, const std::string& var) {
  std::string s;
  for (int i = 0; i < nvars; ++i) {
    const auto p = m.e[static_cast<std::size_t>(i)];
    if (!p) continue;
    if (!s.empty()) s += '*';
    s += var + std::to_string(i);
    if (p != 1) s += "^" + std::to_string(p);
  }
  return s;
}

// Laurent polynomial with integer coefficients. Terms are kept sorted by decreasing
// lexicographic exponent with no zero coefficients.
class LaurentPolynomial {
 public:
  struct Term {
    Monomial m;
    BigInt c;
    friend bool operator==(const Term&, const Term&) = default;
  };

  LaurentPolynomial() = default;
  explicit LaurentPolynomial(int nvars) : nvars_(nvars) {
    if (nvars < 0 || nvars > kMaxVariables)
      throw InvalidMatrix("exact arithmetic supports at most " + std::to_string(kMaxVariables) + " variables");
  }

  static LaurentPolynomial constant(int nvars, const BigInt& c) { return monomial(nvars, Monomial{}, c); }
  static LaurentPolynomial variable(int nvars, int i) { return monomial(nvars, Monomial::unit(i), 1); }
  static LaurentPolynomial monomial(int nvars, const Monomial& m, const BigInt& c) {
    LaurentPolynomial p(nvars);
    if (c != 0) p.terms_.push_back({m, c});
    return p;
  }
  // Terms in any order, possibly with repeats; zero coefficients are dropped.
  static LaurentPolynomial from_terms(int nvars, std::vector<Term> terms) {
    LaurentPolynomial p(nvars);
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.m > b.m; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().m == t.m)
        p.terms_.back().c += t.c;
      else
        p.terms_.push_back(std::move(t));
      if (p.terms_.back().c == 0) p.terms_.pop_back();
    }
    return p;
  }

  int nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  const Term& leading() const { return terms_.front(); }
  const Term& trailing() const { return terms_.back(); }

  Monomial min_exponents() const {
    if (terms_.empty()) return {};
    Monomial r = terms_[0].m;
    for (const auto& t : terms_) r = Monomial::min(r, t.m);
    return r;
  }
  Monomial max_exponents() const {
    if (terms_.empty()) return {};
    Monomial r = terms_[0].m;
    for (const auto& t : terms_) r = Monomial::max(r, t.m);
    return r;
  }

  // Nonnegative gcd of the coefficients.
  BigInt content() const {
    BigInt g = 0;
    for (const auto& t : terms_) {
      g = boost::multiprecision::gcd(g, t.c);
      if (g == 1) break;
    }
    return boost::multiprecision::abs(g);
  }

  LaurentPolynomial operator-() const {
    LaurentPolynomial r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
  }

  LaurentPolynomial operator+(const LaurentPolynomial& o) const { return merge(o, false); }
  LaurentPolynomial operator-(const LaurentPolynomial& o) const { return merge(o, true); }

  LaurentPolynomial shifted(const Monomial& m, const BigInt& c = 1) const {
    LaurentPolynomial r(nvars_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.m + m, t.c * c});
    return r;
  }

  // Exact division of every coefficient by c (caller guarantees divisibility).
  LaurentPolynomial divided_by(const BigInt& c) const {
    LaurentPolynomial r = *this;
    for (auto& t : r.terms_) t.c /= c;
    return r;
  }

  LaurentPolynomial operator*(const LaurentPolynomial& o) const {
    if (terms_.empty() || o.terms_.empty()) return LaurentPolynomial(nvars_);
    if (o.terms_.size() == 1) return shifted(o.terms_[0].m, o.terms_[0].c);
    if (terms_.size() == 1) return o.shifted(terms_[0].m, terms_[0].c);
    const auto& big = terms_.size() >= o.terms_.size() ? *this : o;
    const auto& small = terms_.size() >= o.terms_.size() ? o : *this;
    std::unordered_map<Monomial, BigInt, MonomialHash> acc;
    acc.reserve(big.terms_.size() * 2);
    for (const auto& s : small.terms_)
      for (const auto& b : big.terms_) {
        auto [it, fresh] = acc.try_emplace(s.m + b.m);
        it->second += s.c * b.c;
      }
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) out.push_back({m, std::move(c)});
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.m > b.m; });
    LaurentPolynomial r(nvars_);
    r.terms_ = std::move(out);
    return r;
  }

  LaurentPolynomial pow(unsigned e) const {
    LaurentPolynomial result = constant(nvars_, 1), base = *this;
    while (e) {
      if (e & 1u) result = result * base;
      e >>= 1u;
      if (e) base = base * base;
    }
    return result;
  }

  // q with *this == d * q, or nullopt if d does not divide *this in the Laurent ring.
  std::optional<LaurentPolynomial> divide_exact(const LaurentPolynomial& d) const {
    if (d.is_zero()) throw InternalError("division by zero polynomial");
    if (is_zero()) return LaurentPolynomial(nvars_);
    if (d.is_monomial()) {
      const auto& dt = d.terms_[0];
      LaurentPolynomial r(nvars_);
      for (const auto& t : terms_) {
        if (t.c % dt.c != 0) return std::nullopt;
        r.terms_.push_back({t.m - dt.m, t.c / dt.c});
      }
      return r;
    }
    // Exponents of every quotient term lie in this box when the division is exact.
    const Monomial lo = min_exponents() - d.min_exponents();
    const Monomial hi = max_exponents() - d.max_exponents();
    for (int i = 0; i < nvars_; ++i)
      if (lo.e[static_cast<std::size_t>(i)] > hi.e[static_cast<std::size_t>(i)]) return std::nullopt;
    const Monomial qlast = trailing().m - d.trailing().m;
    if (trailing().c % d.trailing().c != 0) return std::nullopt;
    if (leading().c % d.leading().c != 0) return std::nullopt;

    std::map<Monomial, BigInt, std::greater<>> rem;
    for (const auto& t : terms_) rem.emplace_hint(rem.end(), t.m, t.c);
    std::vector<Term> q;
    const auto& dl = d.terms_[0];
    while (!rem.empty()) {
      auto it = rem.begin();
      const Monomial qm = it->first - dl.m;
      if (qm < qlast) return std::nullopt;
      for (int i = 0; i < nvars_; ++i) {
        const auto v = qm.e[static_cast<std::size_t>(i)];
        if (v < lo.e[static_cast<std::size_t>(i)] || v > hi.e[static_cast<std::size_t>(i)]) return std::nullopt;
      }
      if (it->second % dl.c != 0) return std::nullopt;
      BigInt qc = it->second / dl.c;
      rem.erase(it);
      for (std::size_t j = 1; j < d.terms_.size(); ++j) {
        const auto& dt = d.terms_[j];
        auto [pos, fresh] = rem.try_emplace(qm + dt.m, 0);
        pos->second -= qc * dt.c;
        if (pos->second == 0) rem.erase(pos);
      }
      q.push_back({qm, std::move(qc)});
    }
    LaurentPolynomial r(nvars_);
    r.terms_ = std::move(q);
    return r;
  }

  // Value at integer points modulo a prime; negative exponents use modular inverses.
  std::uint64_t evaluate_mod(const std::vector<std::uint64_t>& point, std::uint64_t p) const;

  std::size_t hash() const noexcept;

  std::string to_string(const std::string& var) const {
    if (terms_.empty()) return "0";
    std::string s;
    // Print in increasing order so constants come first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& t = *it;
      const std::string mono = monomial_to_string(t.m, nvars_, var);
      const bool neg = t.c < 0;
      const BigInt a = neg ? BigInt(-t.c) : t.c;
      if (s.empty())
        s += neg ? "-" : "";
      else
        s += neg ? " - " : " + ";
      if (mono.empty())
        s += a.str();
      else if (a == 1)
        s += mono;
      else
        s += a.str() + "*" + mono;
    }
    return s;
  }

  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) { return a.terms_ == b.terms_; }

  // Total order used to sort factors: size, then terms.
  friend bool operator<(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size();
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].m != b.terms_[i].m) return a.terms_[i].m > b.terms_[i].m;
      if (a.terms_[i].c != b.terms_[i].c) return a.terms_[i].c < b.terms_[i].c;
    }
    return false;
  }

 private:
  LaurentPolynomial merge(const LaurentPolynomial& o, bool subtract) const {
    LaurentPolynomial r(std::max(nvars_, o.nvars_));
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() || (i < terms_.size() && terms_[i].m > o.terms_[j].m)) {
        r.terms_.push_back(terms_[i++]);
      } else if (i == terms_.size() || o.terms_[j].m > terms_[i].m) {
        r.terms_.push_back(o.terms_[j++]);
        if (subtract) r.terms_.back().c = -r.terms_.back().c;
      } else {
        BigInt c = subtract ? BigInt(terms_[i].c - o.terms_[j].c) : BigInt(terms_[i].c + o.terms_[j].c);
        if (c != 0) r.terms_.push_back({terms_[i].m, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  int nvars_ = 0;
  std::vector<Term> terms_;
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1u) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1u;
  }
  return r;
}

inline std::uint64_t bigmod(const BigInt& c, std::uint64_t p) {
  BigInt r = c % p;
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

}  // namespace detail

inline std::size_t LaurentPolynomial::hash() const noexcept {
  std::size_t h = static_cast<std::size_t>(terms_.size()) * 0x9e3779b97f4a7c15ull;
  MonomialHash mh;
  for (const auto& t : terms_) {
    h ^= mh(t.m) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(detail::bigmod(t.c, 2305843009213693951ull)) + (h << 6) + (h >> 2);
  }
  return h;
}

inline std::uint64_t LaurentPolynomial::evaluate_mod(const std::vector<std::uint64_t>& point, std::uint64_t p) const {
  std::uint64_t sum = 0;
  for (const auto& t : terms_) {
    std::uint64_t v = detail::bigmod(t.c, p);
    for (int i = 0; i < nvars_; ++i) {
      const auto ex = t.m.e[static_cast<std::size_t>(i)];
      if (!ex) continue;
      const std::uint64_t base = ex > 0 ? point[static_cast<std::size_t>(i)]
                                        : detail::powmod(point[static_cast<std::size_t>(i)], p - 2, p);
      v = detail::mulmod(v, detail::powmod(base, static_cast<std::uint64_t>(ex > 0 ? ex : -ex), p), p);
    }
    sum = (sum + v) % p;
  }
  return sum;
}

}  // namespace clustermod
