#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "clustermod/exchange_matrix.hpp"
#include "clustermod/permutation.hpp"

namespace clustermod {

struct CanonicalForm {
  ExchangeMatrix matrix;
  // witness(v) is the canonical position of input vertex v: matrix == relabel(input, witness).
  Permutation witness;

  // Complete invariant of the canonical matrix, usable as a map key.
  std::vector<std::int64_t> key() const {
    const int n = matrix.n();
    std::vector<std::int64_t> k;
    k.reserve(static_cast<std::size_t>(2 * n + n * n + 1));
    k.push_back(n);
    for (int i = 0; i < n; ++i) k.push_back(matrix.weight(i));
    for (int i = 0; i < n; ++i) k.push_back(matrix.is_frozen(i) ? 1 : 0);
    for (auto e : matrix.entries()) k.push_back(e);
    return k;
  }
};

namespace detail {

// Branch-and-bound over vertex orderings. The serialized key of an ordering is, per position p,
// the signature rank of the vertex placed there followed by its entries against positions < p.
// The least key defines the canonical ordering; every ordering attaining it is collected.
class CanonicalSearch {
 public:
  explicit CanonicalSearch(const ExchangeMatrix& m) : m_(m), n_(m.n()) {
    using Sig = std::tuple<int, std::int64_t, std::vector<std::pair<std::int64_t, std::int64_t>>>;
    std::vector<Sig> sigs(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) {
      std::vector<std::pair<std::int64_t, std::int64_t>> nb;
      for (int u = 0; u < n_; ++u)
        if (u != v) nb.emplace_back(m(v, u), m(u, v));
      std::sort(nb.begin(), nb.end());
      sigs[static_cast<std::size_t>(v)] = Sig(m.is_frozen(v) ? 1 : 0, m.weight(v), std::move(nb));
    }
    auto sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    rank_.resize(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v)
      rank_[static_cast<std::size_t>(v)] = static_cast<std::int64_t>(
          std::lower_bound(sorted.begin(), sorted.end(), sigs[static_cast<std::size_t>(v)]) - sorted.begin());
    used_.assign(static_cast<std::size_t>(n_), 0);
  }

  void run() {
    if (n_ == 0) {
      leaves_.push_back({});
      return;
    }
    dfs(0);
  }

  const std::vector<std::vector<int>>& leaves() const { return leaves_; }

 private:
  static std::size_t block_start(int p) { return static_cast<std::size_t>(p) * static_cast<std::size_t>(p); }

  // -1, 0, 1 comparing cur_ with the best key on their common prefix.
  int compare_prefix() const {
    for (std::size_t i = 0; i < cur_.size(); ++i)
      if (cur_[i] != best_[i]) return cur_[i] < best_[i] ? -1 : 1;
    return 0;
  }

  void dfs(int p) {
    if (p == n_) {
      const int c = leaves_.empty() ? -1 : compare_prefix();
      if (c < 0) {
        best_ = cur_;
        leaves_.clear();
      }
      if (c <= 0) leaves_.push_back(order_);
      return;
    }
    for (int v = 0; v < n_; ++v) {
      if (used_[static_cast<std::size_t>(v)]) continue;
      cur_.resize(block_start(p));
      cur_.push_back(rank_[static_cast<std::size_t>(v)]);
      for (int q = 0; q < p; ++q) {
        const int u = order_[static_cast<std::size_t>(q)];
        cur_.push_back(m_(u, v));
        cur_.push_back(m_(v, u));
      }
      if (!leaves_.empty() && compare_prefix() > 0) continue;
      used_[static_cast<std::size_t>(v)] = 1;
      order_.push_back(v);
      dfs(p + 1);
      order_.pop_back();
      used_[static_cast<std::size_t>(v)] = 0;
    }
  }

  const ExchangeMatrix& m_;
  int n_;
  std::vector<std::int64_t> rank_;
  std::vector<char> used_;
  std::vector<int> order_;
  std::vector<std::int64_t> cur_;
  std::vector<std::int64_t> best_;
  std::vector<std::vector<int>> leaves_;
};

inline Permutation witness_from_order(const std::vector<int>& order) {
  std::vector<int> images(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) images[static_cast<std::size_t>(order[p])] = static_cast<int>(p);
  return Permutation::from_images(std::move(images));
}

}  // namespace detail

struct CanonicalData {
  CanonicalForm form;
  std::vector<Permutation> automorphisms;  // sorted, identity first
};

inline CanonicalData canonical_data(const ExchangeMatrix& m) {
  detail::CanonicalSearch search(m);
  search.run();
  const auto& leaves = search.leaves();
  CanonicalData out;
  out.form.witness = detail::witness_from_order(leaves.front());
  out.form.matrix = relabel(m, out.form.witness);
  const Permutation winv = out.form.witness.inverse();
  for (const auto& leaf : leaves) out.automorphisms.push_back(winv * detail::witness_from_order(leaf));
  std::sort(out.automorphisms.begin(), out.automorphisms.end());
  return out;
}

inline CanonicalForm canonical_form(const ExchangeMatrix& m) { return canonical_data(m).form; }

// All frozen- and weight-preserving permutations fixing m, identity first.
inline std::vector<Permutation> automorphisms(const ExchangeMatrix& m) { return canonical_data(m).automorphisms; }

inline bool isomorphic(const ExchangeMatrix& a, const ExchangeMatrix& b) {
  return a.n() == b.n() && canonical_form(a).matrix == canonical_form(b).matrix;
}

}  // namespace clustermod
