#include <gtest/gtest.h>

#include <map>
#include <set>

#include "clustermod/catalog.hpp"
#include "clustermod/mutation_class.hpp"
#include "test_support.hpp"

using namespace clustermod;

namespace {

std::vector<std::size_t> aut_orders(const MutationClass& c) {
  std::vector<std::size_t> out;
  for (const auto& m : c.members) out.push_back(m.automorphisms.size());
  std::sort(out.begin(), out.end());
  return out;
}

std::map<std::string, int> face_counts(const std::vector<StandardCycle>& faces) {
  std::map<std::string, int> out;
  for (const auto& f : faces) ++out[face_name(f)];
  return out;
}

}  // namespace

TEST(Enumerate, ClassSizes) {
  EXPECT_EQ(enumerate_class(catalog_quiver("x7")).size(), 2u);
  EXPECT_EQ(enumerate_class(catalog_quiver("x6")).size(), 5u);
  EXPECT_EQ(enumerate_class(catalog_quiver("j")).size(), 2u);
  EXPECT_EQ(enumerate_class(catalog_quiver("markov")).size(), 1u);
  EXPECT_EQ(enumerate_class(catalog_quiver("a2")).size(), 1u);
  EXPECT_EQ(enumerate_class(catalog_quiver("g2")).size(), 7u);
}

TEST(Enumerate, AutomorphismGroupOrders) {
  EXPECT_EQ(aut_orders(enumerate_class(catalog_quiver("x7"))), (std::vector<std::size_t>{6, 6}));
  EXPECT_EQ(aut_orders(enumerate_class(catalog_quiver("x6"))), (std::vector<std::size_t>{2, 2, 2, 2, 6}));
}

TEST(Enumerate, X6CatalogMembersAreTheFiveClasses) {
  const auto c = enumerate_class(catalog_quiver("x6"));
  std::set<std::size_t> found;
  for (const char* name : {"x6_q0", "x6_q1", "x6_q2", "x6_q3", "x6_q4"}) {
    const auto q = c.find(catalog_quiver(name));
    ASSERT_TRUE(q.has_value()) << name;
    found.insert(*q);
  }
  EXPECT_EQ(found.size(), 5u);
}

TEST(Enumerate, RepresentativesAreReachedByTheirPaths) {
  for (const char* name : {"x7", "x6", "j", "g2", "e6_affine"}) {
    const auto c = enumerate_class(catalog_quiver(name));
    for (std::size_t q = 0; q < c.size(); ++q) {
      const auto& m = c.members[q];
      EXPECT_EQ(apply_word(c.start, m.path), m.rep) << name << " class " << q;
      EXPECT_EQ(static_cast<int>(m.path.size()), m.depth);
      if (m.parent >= 0)
        EXPECT_EQ(mutate_matrix(c.members[static_cast<std::size_t>(m.parent)].rep, m.parent_k), m.rep);
    }
  }
}

TEST(Enumerate, MembersArePairwiseNonIsomorphic) {
  for (const char* name : {"x6", "g2", "e6_affine"}) {
    const auto c = enumerate_class(catalog_quiver(name));
    std::set<std::vector<std::int64_t>> keys;
    for (const auto& m : c.members) {
      EXPECT_TRUE(keys.insert(canonical_form(m.rep).key()).second) << name;
      EXPECT_EQ(canonical_form(m.rep).key(), m.canon.key());
    }
  }
}

TEST(Enumerate, AdjacencyWitnessesAreIsomorphisms) {
  for (const char* name : {"x7", "x6", "g2", "markov"}) {
    const auto c = enumerate_class(catalog_quiver(name));
    for (std::size_t q = 0; q < c.size(); ++q)
      for (int k : c.start.mutable_vertices()) {
        const auto& a = c.adjacency[q][static_cast<std::size_t>(k)];
        ASSERT_TRUE(a.has_value());
        EXPECT_EQ(mutate_matrix(c.members[q].rep, k), apply_permutation(c.members[a->target].rep, a->witness));
      }
  }
}

TEST(Enumerate, ClosedUnderMutation) {
  const auto c = enumerate_class(catalog_quiver("e6_affine"));
  EXPECT_EQ(c.size(), 132u);
  for (int t = 0; t < 30; ++t) {
    const auto m = apply_word(c.start, test_util::random_mutations(c.start, 25));
    EXPECT_TRUE(c.find(m).has_value());
  }
}

TEST(Enumerate, IndependentOfTraversalOrder) {
  for (const char* name : {"x6", "g2", "e6_affine"}) {
    const auto base = enumerate_class(catalog_quiver(name));
    std::set<std::vector<std::int64_t>> keys;
    for (const auto& m : base.members) keys.insert(m.canon.key());
    for (std::uint64_t seed : {1u, 7u, 99u}) {
      EnumerateOptions opt;
      opt.shuffle_seed = seed;
      const auto c = enumerate_class(catalog_quiver(name), opt);
      std::set<std::vector<std::int64_t>> other;
      for (const auto& m : c.members) other.insert(m.canon.key());
      EXPECT_EQ(other, keys) << name << " seed " << seed;
      const auto g = build_modular_graph(c);
      const auto h = build_modular_graph(base);
      EXPECT_EQ(g.oriented.size(), h.oriented.size());
      EXPECT_EQ(g.edges.size(), h.edges.size());
      EXPECT_EQ(face_counts(g.faces), face_counts(h.faces));
    }
  }
}

TEST(Enumerate, CapIsEnforced) {
  EnumerateOptions opt;
  opt.cap = 10;
  EXPECT_THROW(enumerate_class(catalog_quiver("e6_affine"), opt), CapExceeded);
  opt.cap = 0;
  EXPECT_THROW(enumerate_class(catalog_quiver("a2"), opt), InputError);
  // A quiver of infinite mutation type
  opt.cap = 20;
  EXPECT_THROW(enumerate_class(ExchangeMatrix({{0, 3, 0}, {-3, 0, 1}, {0, -1, 0}}), opt), CapExceeded);
}

TEST(ModularGraph, X7Structure) {
  const auto g = build_modular_graph(enumerate_class(catalog_quiver("x7")));
  EXPECT_EQ(g.oriented.size(), 6u);
  EXPECT_EQ(g.edges.size(), 3u);
  EXPECT_EQ(face_counts(g.faces), (std::map<std::string, int>{{"pentagon", 2}, {"square", 2}}));
}

TEST(ModularGraph, X6Structure) {
  const auto g = build_modular_graph(enumerate_class(catalog_quiver("x6")));
  EXPECT_EQ(g.oriented.size(), 18u);
  EXPECT_EQ(g.edges.size(), 9u);
  EXPECT_EQ(face_counts(g.faces), (std::map<std::string, int>{{"pentagon", 4}, {"square", 6}}));
}

TEST(ModularGraph, G2HasOctagons) {
  const auto g = build_modular_graph(enumerate_class(catalog_quiver("g2")));
  EXPECT_EQ(g.edges.size(), 14u);
  EXPECT_EQ(face_counts(g.faces), (std::map<std::string, int>{{"octagon", 2}, {"pentagon", 2}, {"square", 3}}));
}

TEST(ModularGraph, A2AndJ) {
  const auto a2 = build_modular_graph(enumerate_class(catalog_quiver("a2")));
  EXPECT_EQ(a2.oriented.size(), 2u);
  EXPECT_EQ(a2.edges.size(), 1u);
  EXPECT_EQ(face_counts(a2.faces), (std::map<std::string, int>{{"pentagon", 1}}));
  const auto j = build_modular_graph(enumerate_class(catalog_quiver("j")));
  EXPECT_EQ(j.edges.size(), 3u);
  EXPECT_EQ(face_counts(j.faces), (std::map<std::string, int>{{"pentagon", 1}}));
}

TEST(ModularGraph, MarkovEdgeIsInverted) {
  const auto c = enumerate_class(catalog_quiver("markov"));
  EXPECT_THROW(edge_orbits(c), InvertedEdge);
  const auto oriented = oriented_edges(c);
  ASSERT_EQ(oriented.size(), 1u);
  EXPECT_EQ(oriented[0].reverse, 0u);
}

TEST(ModularGraph, OrientedOrbitsPartitionTheLabeledEdges) {
  // Each oriented orbit at q is an Aut(rep_q)-orbit of mutable vertices; together they cover
  // every mutable vertex of every class exactly once, and reversal is an involution.
  for (const char* name : {"x7", "x6", "g2", "j", "e6_affine"}) {
    const auto c = enumerate_class(catalog_quiver(name));
    const auto oriented = oriented_edges(c);
    std::vector<int> covered(c.size(), 0);
    for (std::size_t i = 0; i < oriented.size(); ++i) {
      const auto& e = oriented[i];
      covered[e.source] += static_cast<int>(e.orbit.size());
      EXPECT_EQ(oriented[e.reverse].reverse, i);
      EXPECT_EQ(oriented[e.reverse].source, e.target);
      EXPECT_EQ(orbit_of(c.members[e.source].automorphisms, e.k), e.orbit);
      EXPECT_EQ(mutate_matrix(c.members[e.source].rep, e.k), apply_permutation(c.members[e.target].rep, e.witness));
    }
    for (std::size_t q = 0; q < c.size(); ++q)
      EXPECT_EQ(covered[q], static_cast<int>(c.start.mutable_vertices().size())) << name << " class " << q;
    EXPECT_EQ(edge_orbits(c, oriented).size() * 2, oriented.size());
  }
}

TEST(ModularGraph, FacesCloseAndAreStandard) {
  for (const char* name : {"x7", "x6", "g2", "e6_affine"}) {
    const auto c = enumerate_class(catalog_quiver(name));
    for (const auto& f : face_orbits(c)) {
      const auto& rep = c.members[f.base].rep;
      EXPECT_EQ(standard_p(rep, f.k, f.l), f.p);
      EXPECT_EQ(f.h, standard_h(f.p));
      EXPECT_EQ(apply_word(rep, f.word(c.n())), rep);
    }
  }
}

TEST(ModularGraph, SimultaneousAutomorphismsOfX7) {
  const auto c = enumerate_class(catalog_quiver("x7"));
  const auto s = simultaneous_automorphisms(c, 0, 1);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_TRUE(s[0].is_identity());
  EXPECT_EQ(s[1], Permutation::parse("(3 5)(4 6)", 7));
  EXPECT_EQ(simultaneous_automorphisms(c, 0, 0).size(), 6u);
}

TEST(ModularGraph, StandardCycleWords) {
  StandardCycle sq{0, 1, 2, 0, 2};
  EXPECT_EQ(sq.word(3).mutation_count(), 4u);
  EXPECT_EQ(standard_h(0), 2);
  EXPECT_EQ(standard_h(1), 3);
  EXPECT_EQ(standard_h(2), 4);
  EXPECT_EQ(standard_h(3), 6);
}
