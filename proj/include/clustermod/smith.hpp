#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "clustermod/error.hpp"

namespace clustermod {

using BigInt = boost::multiprecision::cpp_int;
using BigMatrix = std::vector<std::vector<BigInt>>;

inline BigMatrix identity_big(std::size_t n) {
  BigMatrix m(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline BigMatrix multiply(const BigMatrix& a, const BigMatrix& b) {
  const std::size_t r = a.size(), inner = b.size(), c = b.empty() ? 0 : b[0].size();
  BigMatrix out(r, std::vector<BigInt>(c, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < c; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

// Exact determinant by fraction-free (Bareiss) elimination.
inline BigInt determinant(BigMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    if (k + 1 == n) break;
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

struct SmithResult {
  BigMatrix d;  // diagonal, entries >= 0, d_i | d_{i+1} over the nonzero part
  BigMatrix u;  // unimodular, u * a * v == d (empty when not tracked)
  BigMatrix v;
  std::vector<BigInt> diagonal;  // nonzero diagonal entries in order
};

// Smith normal form with smallest-absolute-value pivoting. U and V are tracked on request
// (tracking costs O(rows^2) memory, so large relator matrices skip it).
inline SmithResult smith_normal_form(const BigMatrix& a, bool track = true) {
  const std::size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
  for (const auto& r : a)
    if (r.size() != cols) throw InvalidMatrix("ragged matrix in Smith normal form");
  SmithResult res;
  BigMatrix m = a;
  BigMatrix& u = res.u;
  BigMatrix& v = res.v;
  if (track) {
    u = identity_big(rows);
    v = identity_big(cols);
  }
  auto row_op = [&](std::size_t dst, std::size_t src, const BigInt& q) {  // row dst -= q row src
    for (std::size_t j = 0; j < cols; ++j)
      if (m[src][j] != 0) m[dst][j] -= q * m[src][j];
    if (track)
      for (std::size_t j = 0; j < rows; ++j)
        if (u[src][j] != 0) u[dst][j] -= q * u[src][j];
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const BigInt& q) {  // col dst -= q col src
    for (std::size_t i = 0; i < rows; ++i)
      if (m[i][src] != 0) m[i][dst] -= q * m[i][src];
    if (track)
      for (std::size_t i = 0; i < cols; ++i)
        if (v[i][src] != 0) v[i][dst] -= q * v[i][src];
  };
  auto swap_rows = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    std::swap(m[x], m[y]);
    if (track) std::swap(u[x], u[y]);
  };
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (auto& r : m) std::swap(r[x], r[y]);
    if (track)
      for (auto& r : v) std::swap(r[x], r[y]);
  };

  const std::size_t lim = std::min(rows, cols);
  std::size_t t = 0;
  for (; t < lim; ++t) {
    for (;;) {
      // Smallest nonzero pivot in the remaining block.
      std::size_t pi = rows, pj = cols;
      BigInt best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (m[i][j] == 0) continue;
          const BigInt x = abs(m[i][j]);
          if (pi == rows || x < best) {
            best = x;
            pi = i;
            pj = j;
            if (best == 1) break;
          }
        }
      if (pi == rows) goto done;
      swap_rows(t, pi);
      swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        const BigInt q = m[i][t] / m[t][t];
        if (q != 0) row_op(i, t, q);
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        const BigInt q = m[t][j] / m[t][t];
        if (q != 0) col_op(j, t, q);
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold an offending row into the pivot row and retry.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      row_op(t, bad, BigInt(-1));
    }
    if (m[t][t] < 0) {
      for (std::size_t j = 0; j < cols; ++j) m[t][j] = -m[t][j];
      if (track)
        for (std::size_t j = 0; j < rows; ++j) u[t][j] = -u[t][j];
    }
  }
done:
  for (std::size_t i = 0; i < lim; ++i)
    if (m[i][i] != 0) res.diagonal.push_back(m[i][i]);
  res.d = std::move(m);
  return res;
}

struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1, each dividing the next

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;

  // "Z^2 x Z/2 x Z/6", "0" for the trivial group.
  std::string to_string() const {
    std::vector<std::string> parts;
    if (free_rank == 1) parts.push_back("Z");
    if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
    for (const auto& d : torsion) parts.push_back("Z/" + d.str());
    if (parts.empty()) return "0";
    std::string s;
    for (const auto& p : parts) s += (s.empty() ? "" : " x ") + p;
    return s;
  }

  // Torsion split into prime-power cyclic factors (the CRT form), e.g. Z/10 -> Z/2 x Z/5.
  std::vector<BigInt> primary_factors() const {
    std::vector<BigInt> out;
    for (BigInt d : torsion) {
      for (BigInt p = 2; p * p <= d; ++p) {
        if (d % p != 0) continue;
        BigInt q = 1;
        while (d % p == 0) {
          d /= p;
          q *= p;
        }
        out.push_back(q);
      }
      if (d > 1) out.push_back(d);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string primary_string() const {
    std::string s;
    if (free_rank == 1) s = "Z";
    if (free_rank > 1) s = "Z^" + std::to_string(free_rank);
    for (const auto& q : primary_factors()) s += (s.empty() ? "" : " x ") + std::string("Z/") + q.str();
    return s.empty() ? "0" : s;
  }
};

// Abelian group with `ngens` generators and the rows of `relations` as relations.
inline AbelianInvariants abelian_invariants(const BigMatrix& relations, std::size_t ngens, bool verify = false) {
  AbelianInvariants inv;
  BigMatrix rows;
  for (const auto& r : relations) {
    if (r.size() != ngens) throw InvalidMatrix("relation row has wrong length");
    if (std::any_of(r.begin(), r.end(), [](const BigInt& x) { return x != 0; })) rows.push_back(r);
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  if (rows.empty()) {
    inv.free_rank = ngens;
    return inv;
  }
  const auto snf = smith_normal_form(rows, verify);
  if (verify) {
    if (multiply(multiply(snf.u, rows), snf.v) != snf.d) throw InternalError("Smith normal form check U A V = D failed");
    if (abs(determinant(snf.u)) != 1 || abs(determinant(snf.v)) != 1)
      throw InternalError("Smith normal form transform is not unimodular");
  }
  inv.free_rank = ngens - snf.diagonal.size();
  for (const auto& d : snf.diagonal)
    if (d != 1) inv.torsion.push_back(d);
  for (std::size_t i = 1; i < inv.torsion.size(); ++i)
    if (inv.torsion[i] % inv.torsion[i - 1] != 0) throw InternalError("invariant factors fail divisibility");
  return inv;
}

}  // namespace clustermod
