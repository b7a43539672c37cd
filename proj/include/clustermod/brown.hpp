#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "clustermod/error.hpp"
#include "clustermod/mutation_class.hpp"
#include "clustermod/presentation.hpp"
#include "clustermod/seed.hpp"

namespace clustermod {

// Representative oriented edge. Its origin is the tree vertex of `source`, its terminus is the
// tree vertex of `target` translated by the chosen generator:
// mutate_matrix(rep_source, k) == apply_permutation(rep_target, tau).
struct BrownEdge {
  std::size_t oriented = 0;  // index into ModularGraph::oriented
  std::size_t source = 0;
  int k = 0;
  std::size_t target = 0;
  Permutation tau;
  bool tree = false;
};

// (T, P, E+, F): the spanning tree is the BFS tree of the class, tree vertices are the labeled
// representatives, and paths[q] carries the start quiver to rep_q.
struct DataOfRepresentatives {
  std::vector<MutationWord> paths;
  std::vector<BrownEdge> eplus;
  std::vector<StandardCycle> faces;

  std::size_t tree_edge_count() const {
    return static_cast<std::size_t>(std::count_if(eplus.begin(), eplus.end(), [](const BrownEdge& e) { return e.tree; }));
  }
};

struct BrownGenerator {
  enum class Kind { edge, isotropy };
  std::string name;
  Kind kind = Kind::edge;
  std::size_t vertex = 0;  // tree vertex (isotropy) or edge source
  std::size_t edge = 0;    // index into eplus (edge kind)
  Permutation perm;        // automorphism (isotropy kind)
  MutationWord word;       // loop at the start quiver
};

// Edge generator candidate p_Q^-1 m_k tau p_T; a loop because tau carries rep_T onto m_k(rep_Q).
inline MutationWord edge_word(const DataOfRepresentatives& d, std::size_t q, int k, const Permutation& tau,
                              std::size_t t) {
  const int n = tau.size();
  return d.paths[q].inverse() * MutationWord::mutation(n, k) * MutationWord::permutation(tau) * d.paths[t];
}

inline MutationWord isotropy_word(const DataOfRepresentatives& d, std::size_t q, const Permutation& a) {
  return d.paths[q].inverse() * MutationWord::permutation(a) * d.paths[q];
}

inline DataOfRepresentatives choose_representatives(const ModularGraph& g) {
  const auto& c = g.cls;
  DataOfRepresentatives d;
  for (const auto& m : c.members) d.paths.push_back(m.path);

  // Oriented orbits that contain a tree edge parent -> child.
  std::vector<int> tree_k(g.oriented.size(), -1);
  for (std::size_t q = 1; q < c.size(); ++q) {
    const auto& m = c.members[q];
    const auto o = detail::find_oriented(g.oriented, static_cast<std::size_t>(m.parent), m.parent_k);
    tree_k[o] = m.parent_k;
  }
  for (const auto& orb : g.edges) {
    std::size_t pick = orb.first;
    if (tree_k[orb.second] >= 0) pick = orb.second;
    const auto& oe = g.oriented[pick];
    BrownEdge e;
    e.oriented = pick;
    e.source = oe.source;
    if (tree_k[pick] >= 0) {
      e.tree = true;
      e.k = tree_k[pick];
      const auto& adj = *c.adjacency[e.source][static_cast<std::size_t>(e.k)];
      e.target = adj.target;
      e.tau = adj.witness;
      if (!e.tau.is_identity()) throw InternalError("tree edge witness is not the identity");
    } else {
      e.k = oe.k;
      e.target = oe.target;
      // Least normalized word among tau h, h in Aut(rep_target).
      std::optional<MutationWord> best;
      for (const auto& h : c.members[e.target].automorphisms) {
        const Permutation t = oe.witness * h;
        const auto w = edge_word(d, e.source, e.k, t, e.target);
        if (!best || normalized_less(w, *best)) {
          best = w;
          e.tau = t;
        }
      }
    }
    d.eplus.push_back(std::move(e));
  }
  std::stable_sort(d.eplus.begin(), d.eplus.end(), [](const BrownEdge& a, const BrownEdge& b) {
    if (a.tree != b.tree) return a.tree;
    return std::tuple{a.source, a.k} < std::tuple{b.source, b.k};
  });
  d.faces = g.faces;
  return d;
}

inline std::vector<BrownGenerator> brown_generators(const ModularGraph& g, const DataOfRepresentatives& d) {
  std::vector<BrownGenerator> out;
  for (std::size_t q = 0; q < g.cls.size(); ++q) {
    const auto& auts = g.cls.members[q].automorphisms;
    for (std::size_t j = 1; j < auts.size(); ++j) {
      BrownGenerator b;
      b.name = "h" + std::to_string(q) + "_" + std::to_string(j);
      b.kind = BrownGenerator::Kind::isotropy;
      b.vertex = q;
      b.perm = auts[j];
      b.word = isotropy_word(d, q, auts[j]);
      out.push_back(std::move(b));
    }
  }
  int count = 0;
  for (std::size_t i = 0; i < d.eplus.size(); ++i) {
    const auto& e = d.eplus[i];
    if (e.tree) continue;
    BrownGenerator b;
    b.name = "g" + std::to_string(count++);
    b.kind = BrownGenerator::Kind::edge;
    b.vertex = e.source;
    b.edge = i;
    b.word = edge_word(d, e.source, e.k, e.tau, e.target);
    out.push_back(std::move(b));
  }
  return out;
}

struct BrownResult {
  ModularGraph graph;
  DataOfRepresentatives data;
  std::vector<BrownGenerator> generators;
  GroupPresentation presentation;  // unsimplified: tables, isotropy, face relators
  std::size_t isotropy_table_relators = 0;
  std::size_t isotropy_edge_relators = 0;
  std::size_t face_relators = 0;
  std::size_t certified = 0;
  std::size_t full_checked = 0;

  // Symbol of automorphism a at tree vertex q; empty for the identity.
  GroupWord isotropy_symbol(std::size_t q, const Permutation& a) const {
    if (a.is_identity()) return {};
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const auto& b = generators[i];
      if (b.kind == BrownGenerator::Kind::isotropy && b.vertex == q && b.perm == a)
        return GroupWord::generator(static_cast<int>(i));
    }
    throw InternalError("permutation is not in the isotropy group of class " + std::to_string(q));
  }

  GroupWord edge_symbol(std::size_t edge, std::int64_t e) const {
    if (data.eplus[edge].tree) return {};
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i].kind == BrownGenerator::Kind::edge && generators[i].edge == edge)
        return GroupWord::generator(static_cast<int>(i), e);
    throw InternalError("edge generator missing");
  }
};

struct Traversal {
  GroupWord word;  // g_1^tau ... g_m^tau
  std::size_t end = 0;
  Permutation perm;  // the current matrix is apply_permutation(rep_end, perm)
};

// Walks `w` (rightmost token first) from the matrix apply_permutation(rep_start, perm), emitting
// h g_e for case (a) steps (the step leaves along a translate of e) and h g_e^-1 for case (b)
// (it arrives along one). Exactly one case applies to every step.
inline Traversal traverse(const BrownResult& b, std::size_t start, Permutation perm, const MutationWord& w) {
  const auto& c = b.graph.cls;
  Traversal t;
  t.end = start;
  t.perm = std::move(perm);
  const auto& ts = w.tokens();
  for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
    if (!it->is_mutation()) {
      t.perm = it->perm * t.perm;
      continue;
    }
    const int kj = t.perm.inverse()(it->k);
    const auto& auts = c.members[t.end].automorphisms;
    int matches = 0;
    std::size_t hit = 0;
    bool case_a = false;
    Permutation hs;
    for (std::size_t i = 0; i < b.data.eplus.size(); ++i) {
      const auto& e = b.data.eplus[i];
      if (e.source == t.end) {
        for (const auto& s : auts)
          if (s(e.k) == kj) {
            if (matches++ == 0) {
              hit = i;
              case_a = true;
              hs = s;
            }
            break;
          }
      }
      if (e.target == t.end) {
        const int kb = e.tau.inverse()(e.k);
        for (const auto& s : auts)
          if (s(kb) == kj) {
            if (matches++ == 0) {
              hit = i;
              case_a = false;
              hs = s;
            }
            break;
          }
      }
    }
    if (matches != 1)
      throw InternalError("edge at class " + std::to_string(t.end) + " matches " + std::to_string(matches) +
                          " representative cases");
    const auto& e = b.data.eplus[hit];
    t.word = t.word * b.isotropy_symbol(t.end, hs);
    if (case_a) {
      t.word = t.word * b.edge_symbol(hit, 1);
      t.perm = t.perm * hs * e.tau;
      t.end = e.target;
    } else {
      t.word = t.word * b.edge_symbol(hit, -1);
      t.perm = t.perm * hs * e.tau.inverse();
      t.end = e.source;
    }
  }
  return t;
}

// Expresses a mutation loop at the start quiver in Brown generators.
inline GroupWord rewrite_loop(const BrownResult& b, const MutationWord& loop) {
  const auto t = traverse(b, 0, Permutation::identity(loop.n()), loop);
  if (t.end != 0 || std::find(b.graph.cls.members[0].automorphisms.begin(), b.graph.cls.members[0].automorphisms.end(),
                              t.perm) == b.graph.cls.members[0].automorphisms.end())
    throw NotALoop("word does not return to the start quiver");
  return (t.word * b.isotropy_symbol(0, t.perm).inverse()).inverse();
}

struct AssembleOptions {
  bool certify = true;       // cmatrix certificate on every relator
  bool full_check = false;   // also run full mode on every relator
};

inline BrownResult assemble_presentation(ModularGraph g, const AssembleOptions& opt = {}) {
  BrownResult b;
  b.data = choose_representatives(g);
  b.generators = brown_generators(g, b.data);
  b.graph = std::move(g);
  const auto& c = b.graph.cls;
  auto& p = b.presentation;
  p.base = c.start;
  for (const auto& gen : b.generators) {
    p.generators.push_back(gen.name);
    p.expansion.push_back(gen.word);
  }
  auto add = [&](GroupWord r, std::string label) {
    p.relators.push_back(std::move(r));
    p.labels.push_back(std::move(label));
  };

  // Isotropy groups by multiplication table.
  for (std::size_t q = 0; q < c.size(); ++q) {
    const auto& auts = c.members[q].automorphisms;
    for (const auto& x : auts)
      for (const auto& y : auts) {
        if (x.is_identity() || y.is_identity()) continue;
        add(b.isotropy_symbol(q, x) * b.isotropy_symbol(q, y) * b.isotropy_symbol(q, x * y).inverse(),
            "isotropy table of class " + std::to_string(q));
        ++b.isotropy_table_relators;
      }
  }
  // g_e^-1 a g_e = tau^-1 a tau for a in Aut(rep_source) fixing k.
  for (std::size_t i = 0; i < b.data.eplus.size(); ++i) {
    const auto& e = b.data.eplus[i];
    for (const auto& a : simultaneous_automorphisms(c, e.source, e.k)) {
      if (a.is_identity()) continue;
      const Permutation a2 = e.tau.inverse() * a * e.tau;
      add(b.edge_symbol(i, -1) * b.isotropy_symbol(e.source, a) * b.edge_symbol(i, 1) *
              b.isotropy_symbol(e.target, a2).inverse(),
          "edge isotropy at class " + std::to_string(e.source) + " m" + std::to_string(e.k));
      ++b.isotropy_edge_relators;
    }
  }
  // Face relators g^tau s_pi^-1 along the standard sequence.
  for (std::size_t f = 0; f < b.data.faces.size(); ++f) {
    const auto& s = b.data.faces[f];
    const auto t = traverse(b, s.base, Permutation::identity(c.n()), s.word(c.n()));
    if (t.end != s.base) throw InternalError("face traversal does not close");
    add(t.word * b.isotropy_symbol(s.base, t.perm).inverse(),
        face_name(s) + " at class " + std::to_string(s.base) + " (" + std::to_string(s.k) + " " + std::to_string(s.l) + ")");
    ++b.face_relators;
  }

  if (opt.certify || opt.full_check) {
    const auto mode = opt.full_check ? OracleMode::both : OracleMode::cmatrix;
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      const auto rep = is_trivial_loop(p.base, p.expand(p.relators[i]), mode);
      if (!rep.trivial) throw InternalError("relator '" + p.labels[i] + "' is not a trivial loop");
      ++b.certified;
      if (rep.full_checked) ++b.full_checked;
    }
  }
  return b;
}

inline BrownResult assemble_presentation(const ExchangeMatrix& start, const EnumerateOptions& eopt = {},
                                         const AssembleOptions& opt = {}) {
  return assemble_presentation(build_modular_graph(enumerate_class(start, eopt)), opt);
}

}  // namespace clustermod
