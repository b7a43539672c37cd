#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "clustermod/error.hpp"
#include "clustermod/exchange_matrix.hpp"

namespace clustermod {

struct CatalogEntry {
  std::string name;
  std::string description;
  ExchangeMatrix matrix;
};

namespace detail {

using Arrow = std::tuple<int, int, int>;  // from, to, multiplicity

// Unit-weight quiver from arrows; `base` is subtracted from every vertex label.
inline ExchangeMatrix quiver(int n, const std::vector<Arrow>& arrows, int base = 0) {
  std::vector<std::vector<ExchangeMatrix::Entry>> rows(static_cast<std::size_t>(n),
                                                       std::vector<ExchangeMatrix::Entry>(static_cast<std::size_t>(n), 0));
  for (const auto& [a, b, c] : arrows) add_arrows(rows, a - base, b - base, c);
  return ExchangeMatrix(rows);
}

}  // namespace detail

inline std::vector<CatalogEntry> catalog() {
  using detail::quiver;
  std::vector<CatalogEntry> out;
  out.push_back({"a2", "type A2", ExchangeMatrix({{0, 1}, {-1, 0}})});
  out.push_back({"markov", "once-punctured torus (Markov quiver)", ExchangeMatrix({{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}})});
  out.push_back({"j", "three-vertex seed with one double arrow", quiver(3, {{0, 1, 1}, {1, 2, 2}, {2, 0, 1}})});
  out.push_back({"x7", "type X7",
                 quiver(7, {{0, 1, 1}, {1, 2, 2}, {2, 0, 1}, {0, 3, 1}, {3, 4, 2}, {4, 0, 1}, {0, 5, 1}, {5, 6, 2}, {6, 0, 1}})});
  const auto x6 = quiver(6, {{1, 2, 1}, {2, 3, 2}, {3, 1, 1}, {1, 4, 1}, {4, 5, 2}, {5, 1, 1}, {1, 6, 1}}, 1);
  out.push_back({"x6", "type X6", x6});
  out.push_back({"x6_q0", "X6 class member Q0 (same as x6)", x6});
  out.push_back({"x6_q1", "X6 class member Q1",
                 quiver(6,
                        {{1, 2, 1}, {3, 1, 1}, {1, 5, 1}, {4, 1, 1}, {6, 1, 1}, {2, 4, 1}, {5, 3, 1}, {4, 5, 1}, {3, 2, 1},
                         {2, 6, 1}, {5, 6, 1}},
                        1)});
  out.push_back({"x6_q2", "X6 class member Q2",
                 quiver(6, {{1, 6, 1}, {6, 2, 1}, {2, 4, 1}, {4, 3, 1}, {3, 5, 1}, {5, 1, 1}, {6, 3, 1}, {4, 1, 1}, {5, 2, 1}},
                        1)});
  out.push_back({"x6_q3", "X6 class member Q3",
                 quiver(6,
                        {{1, 3, 1}, {2, 1, 1}, {1, 4, 1}, {5, 1, 1}, {1, 6, 1}, {2, 3, 1}, {5, 4, 1}, {4, 2, 1}, {3, 5, 1},
                         {6, 2, 1}, {6, 5, 1}},
                        1)});
  out.push_back({"x6_q4", "X6 class member Q4",
                 quiver(6, {{1, 2, 1}, {2, 3, 2}, {3, 1, 1}, {1, 4, 1}, {4, 5, 2}, {5, 1, 1}, {6, 1, 1}}, 1)});
  out.push_back({"g2", "weighted quiver of type G2(*,*), weights 3,3,1,1",
                 ExchangeMatrix({{0, 1, -1, 0}, {-1, 0, 1, -1}, {3, -3, 0, 1}, {0, 3, -1, 0}}, {3, 3, 1, 1})});
  out.push_back({"e6_affine", "affine E6 class member with a double arrow",
                 quiver(7, {{2, 1, 1}, {3, 2, 1}, {2, 4, 1}, {3, 5, 1}, {5, 4, 1}, {3, 6, 1}, {6, 4, 1}, {6, 7, 1}, {4, 3, 2}},
                        1)});
  out.push_back({"e6_affine_tree", "affine E6 Dynkin orientation (star with arms of length 2)",
                 quiver(7, {{0, 1, 1}, {1, 2, 1}, {0, 3, 1}, {3, 4, 1}, {0, 5, 1}, {5, 6, 1}})});
  return out;
}

inline ExchangeMatrix catalog_quiver(const std::string& name) {
  for (auto& e : catalog())
    if (e.name == name) return e.matrix;
  throw InputError("unknown catalog quiver '" + name + "'");
}

}  // namespace clustermod
