#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "clustermod/catalog.hpp"
#include "clustermod/exchange_matrix.hpp"
#include "clustermod/permutation.hpp"
#include "clustermod/word.hpp"

namespace clustermod::test_util {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

// Skew-symmetric matrix with entries in [-bound, bound].
inline ExchangeMatrix random_quiver(int n, int bound = 2) {
  std::vector<std::vector<ExchangeMatrix::Entry>> rows(static_cast<std::size_t>(n),
                                                       std::vector<ExchangeMatrix::Entry>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int v = uniform(-bound, bound);
      rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
      rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = -v;
    }
  return ExchangeMatrix(rows);
}

inline Permutation random_permutation(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i)] = i;
  std::shuffle(images.begin(), images.end(), rng());
  return Permutation::from_images(images);
}

// Random word over mutable vertices and arbitrary permutations (only when weights are uniform).
inline MutationWord random_word(const ExchangeMatrix& m, int length, bool permutations = true) {
  const auto mv = m.mutable_vertices();
  bool uniform_weights = m.frozen().empty();
  for (int i = 0; i < m.n(); ++i) uniform_weights = uniform_weights && m.weight(i) == m.weight(0);
  MutationWord w(m.n());
  for (int t = 0; t < length; ++t) {
    if (permutations && uniform_weights && uniform(0, 3) == 0)
      w.push_left(Token::permutation(random_permutation(m.n())));
    else
      w.push_left(Token::mutation(mv[static_cast<std::size_t>(uniform(0, static_cast<int>(mv.size()) - 1))]));
  }
  return w;
}

inline MutationWord random_mutations(const ExchangeMatrix& m, int length) { return random_word(m, length, false); }

}  // namespace clustermod::test_util
