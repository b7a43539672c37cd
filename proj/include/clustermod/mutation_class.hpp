#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "clustermod/canonical.hpp"
#include "clustermod/error.hpp"
#include "clustermod/exchange_matrix.hpp"
#include "clustermod/word.hpp"

namespace clustermod {

struct ClassMember {
  ExchangeMatrix rep;  // labeled representative: rep == apply_word(start, path)
  CanonicalForm canon;
  std::vector<Permutation> automorphisms;  // sorted, identity first
  int parent = -1;                         // BFS parent class, -1 for class 0
  int parent_k = -1;                       // rep == mutate_matrix(parent rep, parent_k)
  MutationWord path;                       // mutations only
  int depth = 0;
};

// mutate_matrix(rep_source, k) == apply_permutation(rep_target, witness).
struct Adjacency {
  std::size_t target = 0;
  Permutation witness;
};

struct MutationClass {
  ExchangeMatrix start;
  std::vector<ClassMember> members;
  std::map<std::vector<std::int64_t>, std::size_t> index;
  std::vector<std::vector<std::optional<Adjacency>>> adjacency;  // [class][k], empty for frozen k

  std::size_t size() const { return members.size(); }
  int n() const { return start.n(); }

  std::optional<std::size_t> find(const ExchangeMatrix& m) const {
    auto it = index.find(canonical_form(m).key());
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

struct EnumerateOptions {
  std::size_t cap = 50000;
  // Processes the BFS frontier in a random order; used to test order independence.
  std::optional<std::uint64_t> shuffle_seed;
};

inline MutationClass enumerate_class(const ExchangeMatrix& start, const EnumerateOptions& opt = {}) {
  if (opt.cap == 0) throw InputError("class cap must be positive");
  MutationClass c;
  c.start = start;
  const int n = start.n();
  std::vector<Permutation> witness;  // canonical witness of each rep

  auto add_member = [&](ExchangeMatrix rep, CanonicalData data, int parent, int k) {
    if (c.members.size() >= opt.cap) throw CapExceeded(opt.cap);
    ClassMember m;
    m.rep = std::move(rep);
    m.canon = data.form;
    m.automorphisms = std::move(data.automorphisms);
    m.parent = parent;
    m.parent_k = k;
    if (parent >= 0) {
      const auto& p = c.members[static_cast<std::size_t>(parent)];
      m.path = MutationWord::mutation(n, k) * p.path;
      m.depth = p.depth + 1;
    } else {
      m.path = MutationWord(n);
    }
    witness.push_back(data.form.witness);
    c.index.emplace(m.canon.key(), c.members.size());
    c.members.push_back(std::move(m));
    c.adjacency.emplace_back(static_cast<std::size_t>(n));
    return c.members.size() - 1;
  };

  add_member(start, canonical_data(start), -1, -1);
  std::deque<std::size_t> frontier{0};
  std::mt19937_64 rng(opt.shuffle_seed.value_or(0));
  while (!frontier.empty()) {
    std::size_t pick = 0;
    if (opt.shuffle_seed) pick = static_cast<std::size_t>(rng() % frontier.size());
    const std::size_t i = frontier[pick];
    frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(pick));
    for (int k = 0; k < n; ++k) {
      if (start.is_frozen(k)) continue;
      ExchangeMatrix mk = mutate_matrix(c.members[i].rep, k);
      CanonicalData data = canonical_data(mk);
      auto it = c.index.find(data.form.key());
      std::size_t t;
      if (it == c.index.end()) {
        t = add_member(mk, std::move(data), static_cast<int>(i), k);
        frontier.push_back(t);
        c.adjacency[i][static_cast<std::size_t>(k)] = Adjacency{t, Permutation::identity(n)};
      } else {
        t = it->second;
        // mk = apply(C, w_M^-1) and C = apply(rep_t, w_T), so mk = apply(rep_t, w_M^-1 w_T).
        c.adjacency[i][static_cast<std::size_t>(k)] = Adjacency{t, data.form.witness.inverse() * witness[t]};
      }
    }
  }
  return c;
}

// Orbit of vertex k under a permutation group, sorted.
inline std::vector<int> orbit_of(const std::vector<Permutation>& group, int k) {
  std::vector<int> o;
  for (const auto& g : group) o.push_back(g(k));
  std::sort(o.begin(), o.end());
  o.erase(std::unique(o.begin(), o.end()), o.end());
  return o;
}

// Oriented edge orbit: Aut(rep_source)-orbit of the mutation at k (k is the least element).
struct OrientedEdge {
  std::size_t source = 0;
  int k = 0;
  std::vector<int> orbit;
  std::size_t target = 0;
  Permutation witness;      // mutate_matrix(rep_source, k) == apply_permutation(rep_target, witness)
  std::size_t reverse = 0;  // index of the oriented orbit of the reverse edge
};

// Unoriented edge orbit: a pair of mutually reverse oriented orbits.
struct EdgeOrbit {
  std::size_t first = 0;   // oriented index with the lexicographically least (source, k)
  std::size_t second = 0;  // its reverse
  std::size_t source = 0;
  int k = 0;
  std::size_t target = 0;
};

struct StandardCycle {
  std::size_t base = 0;
  int k = 0;
  int l = 0;
  int p = 0;
  int h = 0;
  int length() const { return h + 2; }
  // ((k l) m_k)^{h+2}
  MutationWord word(int n) const {
    const auto step = MutationWord(n, {Token::permutation(Permutation::from_cycles(n, {{k, l}})), Token::mutation(k)});
    return step.pow(h + 2);
  }
};

inline int standard_h(int p) {
  switch (p) {
    case 0:
      return 2;
    case 1:
      return 3;
    case 2:
      return 4;
    case 3:
      return 6;
    default:
      return -1;
  }
}

// p for an ordered pair in standard position (eps_kl = -p eps_lk = p), or -1.
inline int standard_p(const ExchangeMatrix& m, int k, int l) {
  const auto a = m(k, l), b = m(l, k);
  if (a == 0 && b == 0) return 0;
  if (b == -1 && a >= 1 && a <= 3) return static_cast<int>(a);
  return -1;
}

// p = -eps_ab eps_ba when the pair spans a standard polygon (in some orientation), else -1.
inline int pair_type(const ExchangeMatrix& m, int a, int b) {
  const auto prod = -m(a, b) * m(b, a);
  if (prod < 0 || prod > 3) return -1;
  if (prod == 0 && (m(a, b) != 0 || m(b, a) != 0)) return -1;
  return static_cast<int>(prod);
}

// Standard ordering of an unordered pair, or nullopt when neither ordering is in standard position.
inline std::optional<std::pair<int, int>> standard_order(const ExchangeMatrix& m, int a, int b) {
  if (a > b) std::swap(a, b);
  if (m(a, b) == 0 && m(b, a) == 0) return std::pair{a, b};
  if (standard_p(m, a, b) > 0) return std::pair{a, b};
  if (standard_p(m, b, a) > 0) return std::pair{b, a};
  return std::nullopt;
}

namespace detail {

inline std::size_t find_oriented(const std::vector<OrientedEdge>& es, std::size_t q, int k) {
  for (std::size_t i = 0; i < es.size(); ++i)
    if (es[i].source == q && std::binary_search(es[i].orbit.begin(), es[i].orbit.end(), k)) return i;
  throw InternalError("oriented edge orbit not found");
}

}  // namespace detail

inline std::vector<OrientedEdge> oriented_edges(const MutationClass& c) {
  std::vector<OrientedEdge> out;
  for (std::size_t q = 0; q < c.size(); ++q) {
    const auto& mem = c.members[q];
    std::vector<char> seen(static_cast<std::size_t>(c.n()), 0);
    for (int k = 0; k < c.n(); ++k) {
      if (c.start.is_frozen(k) || seen[static_cast<std::size_t>(k)]) continue;
      OrientedEdge e;
      e.source = q;
      e.k = k;
      e.orbit = orbit_of(mem.automorphisms, k);
      for (int v : e.orbit) seen[static_cast<std::size_t>(v)] = 1;
      const auto& adj = *c.adjacency[q][static_cast<std::size_t>(k)];
      e.target = adj.target;
      e.witness = adj.witness;
      out.push_back(std::move(e));
    }
  }
  for (auto& e : out) e.reverse = detail::find_oriented(out, e.target, e.witness.inverse()(e.k));
  return out;
}

// Throws InvertedEdge if some orbit is its own reverse.
inline std::vector<EdgeOrbit> edge_orbits(const MutationClass& c, const std::vector<OrientedEdge>& oriented) {
  std::vector<EdgeOrbit> out;
  for (std::size_t i = 0; i < oriented.size(); ++i) {
    const auto& e = oriented[i];
    if (e.reverse == i) throw InvertedEdge(e.source, e.k);
    if (e.reverse < i) continue;
    out.push_back(EdgeOrbit{i, e.reverse, e.source, e.k, e.target});
  }
  (void)c;
  return out;
}

inline std::vector<EdgeOrbit> edge_orbits(const MutationClass& c) { return edge_orbits(c, oriented_edges(c)); }

// One StandardCycle per orbit of standard cycles; the representative is the least (base, k, l).
inline std::vector<StandardCycle> face_orbits(const MutationClass& c) {
  const int n = c.n();
  // Expressions: (class, a, b) with a < b.
  std::map<std::tuple<std::size_t, int, int>, std::size_t> id;
  std::vector<std::tuple<std::size_t, int, int>> expr;
  for (std::size_t q = 0; q < c.size(); ++q)
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (c.start.is_frozen(a) || c.start.is_frozen(b)) continue;
        if (pair_type(c.members[q].rep, a, b) < 0) continue;
        id.emplace(std::tuple{q, a, b}, expr.size());
        expr.emplace_back(q, a, b);
      }
  std::vector<std::size_t> parent(expr.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t x, std::size_t y) { parent[root(x)] = root(y); };
  auto lookup = [&](std::size_t q, int a, int b) {
    if (a > b) std::swap(a, b);
    auto it = id.find({q, a, b});
    if (it == id.end()) throw InternalError("standard cycle expression missing after relabeling");
    return it->second;
  };
  for (std::size_t i = 0; i < expr.size(); ++i) {
    const auto [q, a, b] = expr[i];
    for (const auto& g : c.members[q].automorphisms) unite(i, lookup(q, g(a), g(b)));
    for (int v : {a, b}) {
      const auto& adj = *c.adjacency[q][static_cast<std::size_t>(v)];
      const auto winv = adj.witness.inverse();
      unite(i, lookup(adj.target, winv(a), winv(b)));
    }
  }
  std::map<std::size_t, StandardCycle> best;
  for (std::size_t i = 0; i < expr.size(); ++i) {
    const auto [q, a, b] = expr[i];
    const auto& rep = c.members[q].rep;
    const auto order = standard_order(rep, a, b);
    if (!order) continue;  // sign pattern only standard at other vertices of the polygon
    const auto [k, l] = *order;
    StandardCycle s;
    s.base = q;
    s.k = k;
    s.l = l;
    s.p = standard_p(rep, k, l);
    s.h = standard_h(s.p);
    const auto r = root(i);
    auto it = best.find(r);
    if (it == best.end() || std::tuple{s.base, s.k, s.l} < std::tuple{it->second.base, it->second.k, it->second.l})
      best[r] = s;
  }
  std::vector<StandardCycle> out;
  for (std::size_t i = 0; i < expr.size(); ++i)
    if (!best.count(root(i))) throw InternalError("standard cycle orbit without a standard expression");
  for (auto& [r, s] : best) out.push_back(s);
  std::sort(out.begin(), out.end(), [](const StandardCycle& x, const StandardCycle& y) {
    return std::tuple{x.base, x.k, x.l} < std::tuple{y.base, y.k, y.l};
  });
  for (const auto& s : out)
    if (apply_word(c.members[s.base].rep, s.word(n)) != c.members[s.base].rep)
      throw InternalError("standard sequence does not close at class " + std::to_string(s.base));
  return out;
}

// Elements of Aut(rep_q) fixing k; each also fixes mutate_matrix(rep_q, k).
inline std::vector<Permutation> simultaneous_automorphisms(const MutationClass& c, std::size_t q, int k) {
  std::vector<Permutation> out;
  const auto& rep = c.members[q].rep;
  const auto mk = mutate_matrix(rep, k);
  for (const auto& g : c.members[q].automorphisms) {
    if (g(k) != k) continue;
    if (apply_permutation(mk, g) != mk) throw InternalError("edge isotropy element does not fix the mutated matrix");
    out.push_back(g);
  }
  return out;
}

struct ModularGraph {
  MutationClass cls;
  std::vector<OrientedEdge> oriented;
  std::vector<EdgeOrbit> edges;
  std::vector<StandardCycle> faces;
};

inline ModularGraph build_modular_graph(MutationClass c) {
  ModularGraph g;
  g.oriented = oriented_edges(c);
  g.edges = edge_orbits(c, g.oriented);
  g.faces = face_orbits(c);
  g.cls = std::move(c);
  return g;
}

inline std::string face_name(const StandardCycle& s) {
  switch (s.h) {
    case 2:
      return "square";
    case 3:
      return "pentagon";
    case 4:
      return "hexagon";
    case 6:
      return "octagon";
    default:
      return "polygon";
  }
}

}  // namespace clustermod
