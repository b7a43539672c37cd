#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "clustermod/checked.hpp"
#include "clustermod/error.hpp"
#include "clustermod/permutation.hpp"

namespace clustermod {

// Integer skew-symmetrizable matrix with vertex weights d_i and a frozen set.
// Invariant: eps(i,j) * d_i == -eps(j,i) * d_j, zero diagonal.
class ExchangeMatrix {
 public:
  using Entry = std::int64_t;

  ExchangeMatrix() = default;

  explicit ExchangeMatrix(int n)
      : n_(n), entries_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0),
        weights_(static_cast<std::size_t>(n), 1), frozen_(static_cast<std::size_t>(n), 0) {
    if (n < 0) throw InvalidMatrix("negative vertex count");
  }

  // Empty `weights` means all ones; `frozen` lists frozen vertex indices.
  ExchangeMatrix(const std::vector<std::vector<Entry>>& rows, std::vector<Entry> weights = {},
                 const std::vector<int>& frozen = {})
      : ExchangeMatrix(static_cast<int>(rows.size())) {
    for (int i = 0; i < n_; ++i) {
      if (rows[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(n_))
        throw InvalidMatrix("row " + std::to_string(i) + " has wrong length");
      for (int j = 0; j < n_; ++j) at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    if (!weights.empty()) {
      if (weights.size() != static_cast<std::size_t>(n_)) throw InvalidMatrix("weight list has wrong length");
      weights_ = std::move(weights);
    }
    for (int f : frozen) {
      if (f < 0 || f >= n_) throw IndexOutOfRange("frozen index " + std::to_string(f) + " out of range");
      frozen_[static_cast<std::size_t>(f)] = 1;
    }
    validate();
  }

  int n() const noexcept { return n_; }
  Entry operator()(int i, int j) const { return entries_[index(i, j)]; }
  Entry weight(int i) const { return weights_[static_cast<std::size_t>(i)]; }
  const std::vector<Entry>& weights() const noexcept { return weights_; }
  bool is_frozen(int i) const { return frozen_[static_cast<std::size_t>(i)] != 0; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  std::vector<int> frozen() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
      if (is_frozen(i)) out.push_back(i);
    return out;
  }

  std::vector<int> mutable_vertices() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
      if (!is_frozen(i)) out.push_back(i);
    return out;
  }

  std::vector<std::vector<Entry>> rows() const {
    std::vector<std::vector<Entry>> out(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) out[static_cast<std::size_t>(i)].push_back((*this)(i, j));
    return out;
  }

  void validate() const {
    for (int i = 0; i < n_; ++i) {
      if (weights_[static_cast<std::size_t>(i)] <= 0)
        throw InvalidMatrix("weight of vertex " + std::to_string(i) + " is not positive");
      if ((*this)(i, i) != 0) throw InvalidMatrix("nonzero diagonal entry at " + std::to_string(i));
    }
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (checked::mul((*this)(i, j), weight(i)) != checked::neg(checked::mul((*this)(j, i), weight(j))))
          throw InvalidMatrix("not skew-symmetrizable at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }

  void check_vertex(int k) const {
    if (k < 0 || k >= n_) throw IndexOutOfRange("vertex index " + std::to_string(k) + " out of range");
  }

  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < n_; ++i) {
      s += i ? ",[" : "[";
      for (int j = 0; j < n_; ++j) s += (j ? "," : "") + std::to_string((*this)(i, j));
      s += "]";
    }
    return s + "]";
  }

  friend bool operator==(const ExchangeMatrix&, const ExchangeMatrix&) = default;

  friend ExchangeMatrix mutate_matrix(const ExchangeMatrix& m, int k);
  friend ExchangeMatrix relabel(const ExchangeMatrix& m, const Permutation& s);
  friend ExchangeMatrix freeze(const ExchangeMatrix& m, const std::vector<int>& extra);

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }
  Entry& at(int i, int j) { return entries_[index(i, j)]; }

  int n_ = 0;
  std::vector<Entry> entries_;
  std::vector<Entry> weights_;
  std::vector<char> frozen_;
};

inline ExchangeMatrix mutate_matrix(const ExchangeMatrix& m, int k) {
  m.check_vertex(k);
  if (m.is_frozen(k)) throw FrozenMutation(k);
  ExchangeMatrix r = m;
  const int n = m.n();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == k || j == k) {
        r.at(i, j) = checked::neg(m(i, j));
        continue;
      }
      const auto a = m(i, k), b = m(k, j);
      // |a|b + a|b| is 0 unless a and b share a sign, and then it is even.
      if ((a > 0 && b > 0) || (a < 0 && b < 0)) {
        const auto t = checked::mul(checked::abs(a), b);
        r.at(i, j) = checked::add(m(i, j), t);
      }
    }
  }
  return r;
}

// Output entry (i,j) is input entry (s^-1(i), s^-1(j)). Weights and frozen flags travel with
// vertices; no check that the frozen set is preserved (canonical relabeling needs this).
inline ExchangeMatrix relabel(const ExchangeMatrix& m, const Permutation& s) {
  if (s.size() != m.n()) throw InvalidPermutation("permutation degree does not match matrix size");
  const int n = m.n();
  ExchangeMatrix r(n);
  for (int i = 0; i < n; ++i) {
    r.weights_[static_cast<std::size_t>(s(i))] = m.weight(i);
    r.frozen_[static_cast<std::size_t>(s(i))] = m.frozen_[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) r.at(s(i), s(j)) = m(i, j);
  }
  return r;
}

// Seed isomorphism action: relabel, but the frozen set must be preserved.
inline ExchangeMatrix apply_permutation(const ExchangeMatrix& m, const Permutation& s) {
  if (s.size() != m.n()) throw InvalidPermutation("permutation degree does not match matrix size");
  for (int i = 0; i < m.n(); ++i)
    if (m.is_frozen(i) != m.is_frozen(s(i)))
      throw InvalidPermutation("permutation " + s.to_string() + " does not preserve the frozen set");
  return relabel(m, s);
}

inline ExchangeMatrix freeze(const ExchangeMatrix& m, const std::vector<int>& extra) {
  ExchangeMatrix r = m;
  for (int v : extra) {
    m.check_vertex(v);
    r.frozen_[static_cast<std::size_t>(v)] = 1;
  }
  return r;
}

// Principal submatrix on the non-frozen vertices, in increasing index order.
inline ExchangeMatrix unfreeze_part(const ExchangeMatrix& m) {
  const auto keep = m.mutable_vertices();
  std::vector<std::vector<ExchangeMatrix::Entry>> rows;
  std::vector<ExchangeMatrix::Entry> weights;
  for (int i : keep) {
    rows.emplace_back();
    for (int j : keep) rows.back().push_back(m(i, j));
    weights.push_back(m.weight(i));
  }
  return ExchangeMatrix(rows, weights);
}

// Adds `count` arrows i -> j to a skew-symmetric (unit weight) matrix under construction.
inline void add_arrows(std::vector<std::vector<ExchangeMatrix::Entry>>& rows, int i, int j, int count = 1) {
  rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += count;
  rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] -= count;
}

}  // namespace clustermod
