#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "clustermod/checked.hpp"
#include "clustermod/exchange_matrix.hpp"
#include "clustermod/rational_function.hpp"
#include "clustermod/word.hpp"

namespace clustermod {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

inline IntMatrix identity_matrix(int n) {
  IntMatrix m(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return m;
}

// Exchange matrix, optional exact A- and X-variables, and the C-matrix.
// c[r][j] is the r-th coordinate of the c-vector of vertex j (tropical X_j in principal coefficients).
struct Seed {
  ExchangeMatrix matrix;
  IntMatrix c;
  bool has_variables = false;
  std::vector<RationalFunction> a;
  std::vector<RationalFunction> x;

  int n() const { return matrix.n(); }

  friend bool operator==(const Seed& s, const Seed& t) {
    if (s.matrix != t.matrix || s.c != t.c || s.has_variables != t.has_variables) return false;
    if (!s.has_variables) return true;
    for (int i = 0; i < s.n(); ++i)
      if (!(s.a[static_cast<std::size_t>(i)] == t.a[static_cast<std::size_t>(i)]) ||
          !(s.x[static_cast<std::size_t>(i)] == t.x[static_cast<std::size_t>(i)]))
        return false;
    return true;
  }
};

// Initial seed: A_i and X_i are independent variables, C = identity.
inline Seed initial_seed(const ExchangeMatrix& m, bool with_variables = true) {
  Seed s;
  s.matrix = m;
  s.c = identity_matrix(m.n());
  s.has_variables = with_variables;
  if (with_variables) {
    if (m.n() > kMaxVariables)
      throw InvalidMatrix("exact variables support at most " + std::to_string(kMaxVariables) + " vertices");
    for (int i = 0; i < m.n(); ++i) {
      s.a.push_back(RationalFunction::variable(m.n(), i));
      s.x.push_back(RationalFunction::variable(m.n(), i));
    }
  }
  return s;
}

namespace detail {

inline std::vector<RationalFunction::Factor> factor_pool(const std::vector<RationalFunction>& vars) {
  std::vector<RationalFunction::Factor> pool;
  for (const auto& v : vars)
    for (const auto& f : v.factors()) pool.push_back(f);
  return pool;
}

// Cancels a leftover polynomial denominator against the whole numerator.
inline RationalFunction absorb_denominator(const RationalFunction& f, const std::vector<RationalFunction::Factor>& pool) {
  bool has_neg = false;
  for (const auto& g : f.factors()) has_neg = has_neg || g.exp < 0;
  if (!has_neg) return f;
  const auto q = f.numerator().divide_exact(f.denominator());
  if (!q) return f;
  return RationalFunction::from_polynomial(*q, pool);
}

inline void check_sign_coherence(const IntMatrix& c) {
  const std::size_t n = c.size();
  for (std::size_t j = 0; j < n; ++j) {
    bool pos = false, neg = false;
    for (std::size_t r = 0; r < n; ++r) {
      pos = pos || c[r][j] > 0;
      neg = neg || c[r][j] < 0;
    }
    if (pos && neg) throw InternalError("c-vector of vertex " + std::to_string(j) + " is not sign-coherent");
  }
}

}  // namespace detail

inline Seed mutate_seed(const Seed& s, int k) {
  const ExchangeMatrix& eps = s.matrix;
  ExchangeMatrix next = mutate_matrix(eps, k);  // validates k
  const int n = eps.n();
  Seed r;
  r.matrix = std::move(next);
  r.has_variables = s.has_variables;

  r.c = s.c;
  for (int row = 0; row < n; ++row) {
    const auto ck = s.c[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)];
    r.c[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)] = checked::neg(ck);
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      const auto e = eps(j, k);
      // (|c| e + c |e|) / 2: nonzero only when c and e share a sign.
      if ((ck > 0 && e > 0) || (ck < 0 && e < 0)) {
        auto& cell = r.c[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)];
        cell = checked::add(cell, checked::mul(checked::abs(ck), e));
      }
    }
  }
  detail::check_sign_coherence(r.c);

  if (s.has_variables) {
    r.a = s.a;
    r.x = s.x;
    auto pool = detail::factor_pool(s.a);

    // A_k' = A_k^-1 (prod_{eps_kj > 0} A_j^eps_kj + prod_{eps_kj < 0} A_j^-eps_kj)
    RationalFunction plus = RationalFunction::one(n), minus = RationalFunction::one(n);
    for (int j = 0; j < n; ++j) {
      const auto e = eps(k, j);
      if (e > 0) plus = plus * s.a[static_cast<std::size_t>(j)].pow(static_cast<int>(e));
      if (e < 0) minus = minus * s.a[static_cast<std::size_t>(j)].pow(static_cast<int>(-e));
    }
    const auto sum = RationalFunction::add(plus, minus, pool);
    r.a[static_cast<std::size_t>(k)] =
        detail::absorb_denominator(sum * s.a[static_cast<std::size_t>(k)].inverse(), pool);

    // X_k' = X_k^-1; X_i' = X_i (1 + X_k^{-sgn eps_ik})^{-eps_ik}.
    const auto& xk = s.x[static_cast<std::size_t>(k)];
    auto xpool = detail::factor_pool(s.x);
    const auto one = RationalFunction::one(n);
    const auto one_plus = RationalFunction::add(one, xk, xpool);
    const auto one_plus_inv = one_plus * xk.inverse();  // 1 + X_k^-1
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const auto e = eps(i, k);
      if (e > 0)
        r.x[static_cast<std::size_t>(i)] = s.x[static_cast<std::size_t>(i)] * one_plus_inv.pow(static_cast<int>(-e));
      else if (e < 0)
        r.x[static_cast<std::size_t>(i)] = s.x[static_cast<std::size_t>(i)] * one_plus.pow(static_cast<int>(-e));
    }
    r.x[static_cast<std::size_t>(k)] = xk.inverse();
  }
  return r;
}

// A'_i = A_{s^-1(i)}, X'_i = X_{s^-1(i)}, C'[r][j] = C[r][s^-1(j)].
inline Seed permute_seed(const Seed& s, const Permutation& p) {
  Seed r;
  r.matrix = apply_permutation(s.matrix, p);
  r.has_variables = s.has_variables;
  const int n = s.n();
  r.c = s.c;
  for (int row = 0; row < n; ++row)
    for (int j = 0; j < n; ++j)
      r.c[static_cast<std::size_t>(row)][static_cast<std::size_t>(p(j))] =
          s.c[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)];
  if (s.has_variables) {
    r.a = s.a;
    r.x = s.x;
    for (int j = 0; j < n; ++j) {
      r.a[static_cast<std::size_t>(p(j))] = s.a[static_cast<std::size_t>(j)];
      r.x[static_cast<std::size_t>(p(j))] = s.x[static_cast<std::size_t>(j)];
    }
  }
  return r;
}

// Applies the rightmost token first.
inline Seed apply_word(const Seed& s, const MutationWord& w) {
  Seed cur = s;
  const auto& ts = w.tokens();
  for (auto it = ts.rbegin(); it != ts.rend(); ++it)
    cur = it->is_mutation() ? mutate_seed(cur, it->k) : permute_seed(cur, it->perm);
  return cur;
}

enum class OracleMode { cmatrix, full, both };

inline std::string to_string(OracleMode m) {
  switch (m) {
    case OracleMode::cmatrix:
      return "cmatrix";
    case OracleMode::full:
      return "full";
    case OracleMode::both:
      return "both";
  }
  return "?";
}

inline OracleMode parse_mode(const std::string& s) {
  if (s == "cmatrix") return OracleMode::cmatrix;
  if (s == "full") return OracleMode::full;
  if (s == "both") return OracleMode::both;
  throw InputError("unknown oracle mode '" + s + "'");
}

class NotALoopError : public NotALoop {
 public:
  NotALoopError(const ExchangeMatrix& initial, const ExchangeMatrix& final)
      : NotALoop("word is not a mutation loop: initial " + initial.to_string() + ", final " + final.to_string()),
        initial(initial),
        final(final) {}
  ExchangeMatrix initial;
  ExchangeMatrix final;
};

struct LoopReport {
  bool trivial = false;
  OracleMode mode = OracleMode::cmatrix;
  bool cmatrix_verdict = false;
  bool full_verdict = false;
  bool full_checked = false;     // full mode was run
  bool modes_agree = true;       // only meaningful when both ran
  std::size_t word_length = 0;   // tokens
  std::size_t mutations = 0;
  double elapsed_ms = 0;
  std::vector<ExchangeMatrix> trail;  // matrix after each token, in application order
};

// Decides triviality of a loop word at the seed built on `m`. cmatrix mode: trivial iff the
// final C-matrix is the identity. full mode: compares all A- and X-variables exactly.
inline LoopReport is_trivial_loop(const ExchangeMatrix& m, const MutationWord& w, OracleMode mode,
                                  bool record_trail = false) {
  const auto t0 = std::chrono::steady_clock::now();
  LoopReport rep;
  rep.mode = mode;
  rep.word_length = w.size();
  rep.mutations = w.mutation_count();
  const auto nw = normalize_word(w);

  Seed cur = initial_seed(m, false);
  const auto& ts = w.tokens();
  for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
    cur = it->is_mutation() ? mutate_seed(cur, it->k) : permute_seed(cur, it->perm);
    if (record_trail) rep.trail.push_back(cur.matrix);
  }
  if (cur.matrix != m) throw NotALoopError(m, cur.matrix);
  rep.cmatrix_verdict = cur.c == identity_matrix(m.n());

  if (mode != OracleMode::cmatrix) {
    const Seed init = initial_seed(m, true);
    const Seed fin = apply_word(init, nw);
    rep.full_verdict = fin == init;
    rep.full_checked = true;
    rep.modes_agree = rep.full_verdict == rep.cmatrix_verdict;
  }
  rep.trivial = mode == OracleMode::full ? rep.full_verdict : rep.cmatrix_verdict;
  if (mode == OracleMode::both) rep.trivial = rep.cmatrix_verdict && rep.full_verdict;
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace clustermod
