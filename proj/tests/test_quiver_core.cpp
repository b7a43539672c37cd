#include <gtest/gtest.h>

#include <set>

#include "clustermod/canonical.hpp"
#include "clustermod/catalog.hpp"
#include "clustermod/error.hpp"
#include "clustermod/exchange_matrix.hpp"
#include "clustermod/word.hpp"
#include "test_support.hpp"

using namespace clustermod;
using clustermod::test_util::random_permutation;
using clustermod::test_util::random_quiver;
using clustermod::test_util::random_word;

namespace {

std::vector<ExchangeMatrix> sample_quivers() {
  std::vector<ExchangeMatrix> out;
  for (const auto& e : catalog()) out.push_back(e.matrix);
  for (int t = 0; t < 60; ++t) out.push_back(random_quiver(2 + t % 6));
  return out;
}

// Long words only on finite mutation type; generic random quivers overflow int64 quickly.
ExchangeMatrix word_sample(int t) {
  if (t % 2 == 0) return random_quiver(5);
  const auto& all = catalog();
  return all[static_cast<std::size_t>(t / 2) % all.size()].matrix;
}

}  // namespace

TEST(ExchangeMatrix, RejectsNonSkewSymmetrizable) {
  EXPECT_THROW(ExchangeMatrix({{0, 1}, {1, 0}}), InvalidMatrix);
  EXPECT_THROW(ExchangeMatrix({{1, 0}, {0, 0}}), InvalidMatrix);
  EXPECT_THROW(ExchangeMatrix({{0, 1}, {-1, 0}}, {0, 1}), InvalidMatrix);
  EXPECT_THROW(ExchangeMatrix({{0, 1}, {-1}}), InvalidMatrix);
  EXPECT_NO_THROW(ExchangeMatrix({{0, 1}, {-3, 0}}, {3, 1}));
}

TEST(ExchangeMatrix, FrozenVertexCannotMutate) {
  const ExchangeMatrix m({{0, 1}, {-1, 0}}, {}, {1});
  EXPECT_THROW(mutate_matrix(m, 1), FrozenMutation);
  EXPECT_THROW(mutate_matrix(m, 2), IndexOutOfRange);
  EXPECT_NO_THROW(mutate_matrix(m, 0));
}

TEST(ExchangeMatrix, MutationIsAnInvolution) {
  for (const auto& m : sample_quivers())
    for (int k : m.mutable_vertices()) EXPECT_EQ(mutate_matrix(mutate_matrix(m, k), k), m) << m.to_string() << " k=" << k;
}

TEST(ExchangeMatrix, MutationPreservesSkewSymmetrizability) {
  for (const auto& m : sample_quivers())
    for (int k : m.mutable_vertices()) EXPECT_NO_THROW(mutate_matrix(m, k).validate());
}

TEST(ExchangeMatrix, MutationCommutesWithPermutation) {
  for (const auto& m : sample_quivers()) {
    bool uniform = true;
    for (int i = 0; i < m.n(); ++i) uniform = uniform && m.weight(i) == m.weight(0);
    const auto tau = uniform ? random_permutation(m.n()) : Permutation::identity(m.n());
    for (int j : m.mutable_vertices())
      EXPECT_EQ(apply_permutation(mutate_matrix(m, j), tau), mutate_matrix(apply_permutation(m, tau), tau(j)));
  }
}

TEST(ExchangeMatrix, MarkovMutationNegates) {
  const auto m = catalog_quiver("markov");
  for (int k = 0; k < 3; ++k) {
    const auto r = mutate_matrix(m, k);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_EQ(r(i, j), -m(i, j));
  }
}

TEST(ExchangeMatrix, A2MutationEqualsSwap) {
  const auto m = catalog_quiver("a2");
  const auto swap = Permutation::from_cycles(2, {{0, 1}});
  EXPECT_EQ(mutate_matrix(m, 0), apply_permutation(m, swap));
  EXPECT_EQ(mutate_matrix(m, 1), apply_permutation(m, swap));
}

TEST(ExchangeMatrix, WeightedMutationFormula) {
  const auto g = catalog_quiver("g2");
  const auto r = mutate_matrix(g, 2);
  // eps'_ij = eps_ij + (|eps_ik| eps_kj + eps_ik |eps_kj|) / 2 away from k.
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const auto eik = g(i, 2), ekj = g(2, j);
      const auto expect = (i == 2 || j == 2) ? -g(i, j) : g(i, j) + (std::abs(eik) * ekj + eik * std::abs(ekj)) / 2;
      EXPECT_EQ(r(i, j), expect);
    }
}

TEST(ExchangeMatrix, FreezeThenUnfreezeGivesSubquiver) {
  const auto x7 = catalog_quiver("x7");
  const auto sub = unfreeze_part(freeze(x7, {3, 4, 5, 6}));
  EXPECT_EQ(sub, catalog_quiver("j"));
}

TEST(Permutation, ParseAndCompose) {
  const auto p = Permutation::parse("(0 1 2)", 4);
  EXPECT_EQ(p.images(), (std::vector<int>{1, 2, 0, 3}));
  const auto q = Permutation::parse("(1 2)", 3, 1);
  EXPECT_EQ(q.images(), (std::vector<int>{1, 0, 2}));
  // (a * b)(i) = a(b(i))
  const auto a = Permutation::from_cycles(3, {{0, 1}}), b = Permutation::from_cycles(3, {{1, 2}});
  EXPECT_EQ((a * b)(1), 2);
  EXPECT_TRUE((p * p.inverse()).is_identity());
  EXPECT_EQ(Permutation::parse(p.to_string(), 4), p);
}

TEST(Permutation, RejectsMalformed) {
  EXPECT_THROW(Permutation::parse("(0 0)", 3), InvalidPermutation);
  EXPECT_THROW(Permutation::parse("(0 5)", 3), InvalidPermutation);
  try {
    Permutation::parse("(0 1", 3);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(MutationWord, ParseReportsPositions) {
  try {
    MutationWord::parse("m0 m1 x", 3);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(e.position(), 6u);
  }
  try {
    MutationWord::parse("m0 m7", 3);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(e.position(), 3u);
  }
  EXPECT_EQ(MutationWord::parse("m2 m1", 3, 1).to_string(1), "m2 m1");
}

TEST(MutationWord, RightmostTokenActsFirst) {
  const auto m = catalog_quiver("j");
  const auto w = MutationWord::parse("m1 m0", 3);
  EXPECT_EQ(apply_word(m, w), mutate_matrix(mutate_matrix(m, 0), 1));
  const auto p = MutationWord::parse("(0 1 2) m0", 3);
  EXPECT_EQ(apply_word(m, p), apply_permutation(mutate_matrix(m, 0), Permutation::from_cycles(3, {{0, 1, 2}})));
}

TEST(MutationWord, InverseUndoes) {
  for (int t = 0; t < 40; ++t) {
    const auto m = word_sample(t);
    const auto w = random_word(m, t % 2 ? 12 : 5);
    EXPECT_EQ(apply_word(apply_word(m, w), w.inverse()), m);
  }
}

TEST(MutationWord, NormalizationPreservesAction) {
  for (int t = 0; t < 60; ++t) {
    const auto m = word_sample(t);
    const auto w = random_word(m, t % 2 ? 14 : 5);
    const auto nw = normalize_word(w);
    EXPECT_EQ(apply_word(m, nw), apply_word(m, w));
    // At most one permutation token, and it comes first.
    for (std::size_t i = 1; i < nw.size(); ++i) EXPECT_TRUE(nw.tokens()[i].is_mutation());
    for (std::size_t i = 2; i < nw.size(); ++i) EXPECT_NE(nw.tokens()[i].k, nw.tokens()[i - 1].k);
    EXPECT_EQ(normalize_word(nw).to_string(), nw.to_string());
  }
}

TEST(MutationWord, NormalizeExamples) {
  EXPECT_EQ(normalize_word(MutationWord::parse("m1 m1", 3)).to_string(), "");
  EXPECT_EQ(normalize_word(MutationWord::parse("m1 (0 1)", 3)).to_string(), "(0 1) m0");
  EXPECT_EQ(normalize_word(MutationWord::parse("(0 1) m0 (0 1) m0", 2)).to_string(), "m1 m0");
  EXPECT_EQ(normalize_word(MutationWord::parse("(0 1) m0 (0 1) m1", 2)).to_string(), "");
}

TEST(Canonical, InvariantUnderRelabeling) {
  for (const auto& m : sample_quivers()) {
    bool uniform = true;
    for (int i = 0; i < m.n(); ++i) uniform = uniform && m.weight(i) == m.weight(0);
    if (!uniform) continue;
    const auto form = canonical_form(m);
    EXPECT_EQ(apply_permutation(m, form.witness), form.matrix);
    const auto relabeled = apply_permutation(m, random_permutation(m.n()));
    EXPECT_EQ(canonical_form(relabeled).key(), form.key());
    EXPECT_TRUE(isomorphic(m, relabeled));
  }
}

TEST(Canonical, DistinguishesNonIsomorphic) {
  std::set<std::vector<std::int64_t>> keys;
  keys.insert(canonical_form(catalog_quiver("x7")).key());
  keys.insert(canonical_form(catalog_quiver("e6_affine")).key());
  keys.insert(canonical_form(catalog_quiver("e6_affine_tree")).key());
  EXPECT_EQ(keys.size(), 3u);
  for (const char* name : {"x6_q0", "x6_q1", "x6_q2", "x6_q3", "x6_q4"})
    EXPECT_TRUE(keys.insert(canonical_form(catalog_quiver(name)).key()).second) << name;
}

TEST(Canonical, AutomorphismsFixTheMatrix) {
  for (const auto& m : sample_quivers()) {
    const auto auts = automorphisms(m);
    ASSERT_FALSE(auts.empty());
    EXPECT_TRUE(auts.front().is_identity());
    for (const auto& a : auts) EXPECT_EQ(apply_permutation(m, a), m);
    // closed under composition
    std::set<Permutation> set(auts.begin(), auts.end());
    for (const auto& a : auts)
      for (const auto& b : auts) EXPECT_TRUE(set.count(a * b));
  }
}

TEST(Canonical, KnownAutomorphismGroupOrders) {
  EXPECT_EQ(automorphisms(catalog_quiver("x7")).size(), 6u);
  EXPECT_EQ(automorphisms(catalog_quiver("markov")).size(), 3u);
  EXPECT_EQ(automorphisms(catalog_quiver("a2")).size(), 1u);
  EXPECT_EQ(automorphisms(catalog_quiver("x6_q0")).size(), 2u);
  EXPECT_EQ(automorphisms(catalog_quiver("x6_q2")).size(), 6u);
  EXPECT_EQ(automorphisms(catalog_quiver("e6_affine_tree")).size(), 6u);
}

TEST(Canonical, WeightsAndFrozenAreRespected) {
  const ExchangeMatrix a({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}, {}, {0});
  const ExchangeMatrix b({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}, {}, {2});
  EXPECT_FALSE(isomorphic(a, b));
  EXPECT_EQ(automorphisms(a).size(), 1u);
}
