#pragma once

#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "clustermod/brown.hpp"
#include "clustermod/group_analysis.hpp"
#include "clustermod/mutation_class.hpp"
#include "clustermod/presentation.hpp"
#include "clustermod/quiver_io.hpp"

namespace clustermod {

inline Json to_json(const Permutation& p) { return p.images(); }

inline Json class_json(const MutationClass& c) {
  Json j;
  j["size"] = c.size();
  j["start"] = to_json(c.start);
  Json members = Json::array();
  for (std::size_t q = 0; q < c.size(); ++q) {
    const auto& m = c.members[q];
    Json e;
    e["id"] = q;
    e["quiver"] = to_json(m.rep);
    e["path"] = m.path.to_string();
    e["depth"] = m.depth;
    Json auts = Json::array();
    for (const auto& a : m.automorphisms) auts.push_back(to_json(a));
    e["automorphisms"] = auts;
    Json adj = Json::array();
    for (const auto& a : c.adjacency[q]) {
      if (!a) {
        adj.push_back(nullptr);
        continue;
      }
      adj.push_back({{"target", a->target}, {"witness", to_json(a->witness)}});
    }
    e["adjacency"] = adj;
    members.push_back(e);
  }
  j["members"] = members;
  return j;
}

inline Json graph_json(const ModularGraph& g) {
  Json j = class_json(g.cls);
  Json oriented = Json::array();
  for (const auto& e : g.oriented)
    oriented.push_back({{"source", e.source}, {"k", e.k}, {"orbit", e.orbit}, {"target", e.target}, {"reverse", e.reverse}});
  j["oriented_edge_orbits"] = oriented;
  Json edges = Json::array();
  for (const auto& e : g.edges) edges.push_back({{"source", e.source}, {"k", e.k}, {"target", e.target}});
  j["edge_orbits"] = edges;
  Json faces = Json::array();
  for (const auto& f : g.faces)
    faces.push_back({{"base", f.base}, {"k", f.k}, {"l", f.l}, {"p", f.p}, {"h", f.h}, {"kind", face_name(f)}});
  j["face_orbits"] = faces;
  return j;
}

// Quotient graph: one node per class, one edge per unoriented edge orbit.
inline std::string graph_dot(const ModularGraph& g) {
  std::ostringstream s;
  s << "graph modular {\n";
  for (std::size_t q = 0; q < g.cls.size(); ++q)
    s << "  Q" << q << " [label=\"Q" << q << " |Aut|=" << g.cls.members[q].automorphisms.size() << "\"];\n";
  for (const auto& e : g.edges) s << "  Q" << e.source << " -- Q" << e.target << " [label=\"mu" << e.k << "\"];\n";
  s << "}\n";
  return s.str();
}

// Quiver picture: arrow multiplicity |eps_ij| gcd(d_i,d_j) / d_j, drawn as one labeled edge.
inline std::string quiver_dot(const ExchangeMatrix& m) {
  std::ostringstream s;
  s << "digraph quiver {\n";
  for (int i = 0; i < m.n(); ++i) {
    s << "  " << i << " [label=\"" << i;
    if (m.weight(i) != 1) s << " (d=" << m.weight(i) << ")";
    s << "\"";
    if (m.is_frozen(i)) s << ", shape=box";
    s << "];\n";
  }
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) {
      if (m(i, j) <= 0) continue;
      const auto g = std::gcd(m.weight(i), m.weight(j));
      const auto arrows = m(i, j) * g / m.weight(j);
      s << "  " << i << " -> " << j;
      if (arrows != 1) s << " [label=\"" << arrows << "\"]";
      s << ";\n";
    }
  s << "}\n";
  return s.str();
}

inline Json abelian_json(const AbelianInvariants& a) {
  std::vector<std::string> torsion, primary;
  for (const auto& d : a.torsion) torsion.push_back(d.str());
  for (const auto& d : a.primary_factors()) primary.push_back(d.str());
  return {{"free_rank", a.free_rank}, {"torsion", torsion}, {"primary", primary}, {"text", a.to_string()},
          {"primary_text", a.primary_string()}};
}

inline Json presentation_json(const GroupPresentation& p, int base = 0) {
  Json j;
  j["base"] = to_json(p.base);
  j["index_base"] = base;
  Json gens = Json::array();
  for (std::size_t i = 0; i < p.generators.size(); ++i)
    gens.push_back({{"name", p.generators[i]}, {"word", p.expansion[i].to_string(base)}});
  j["generators"] = gens;
  Json rels = Json::array();
  for (std::size_t i = 0; i < p.relators.size(); ++i)
    rels.push_back({{"word", p.relators[i].to_string(p.generators)}, {"label", p.labels[i]}});
  j["relators"] = rels;
  j["abelianization"] = abelian_json(abelianize(p));
  return j;
}

// Parses "a b^-1 c^2" (or "1") against the generator names.
inline GroupWord parse_group_word(const std::string& text, const std::vector<std::string>& names) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<int>(i);
  GroupWord w;
  std::istringstream in(text);
  std::string tok;
  std::size_t offset = 0;
  while (in >> tok) {
    offset = text.find(tok, offset);
    if (tok == "1") continue;
    const auto caret = tok.find('^');
    const std::string name = tok.substr(0, caret);
    auto it = index.find(name);
    if (it == index.end()) throw InputError("unknown generator '" + name + "'", offset);
    std::int64_t e = 1;
    if (caret != std::string::npos) {
      try {
        std::size_t used = 0;
        e = std::stoll(tok.substr(caret + 1), &used);
        if (used != tok.size() - caret - 1) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw InputError("bad exponent in '" + tok + "'", offset);
      }
    }
    w.append(it->second, e);
    offset += tok.size();
  }
  return w;
}

// Accepts the output of presentation_json, or a hand-written
// {"generators": ["a", ...], "relators": ["a b a^-1", ...]}.
inline GroupPresentation presentation_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("generators") || !j.contains("relators"))
    throw InputError("presentation needs \"generators\" and \"relators\"");
  GroupPresentation p;
  const bool has_base = j.contains("base");
  if (has_base) p.base = quiver_from_json(j["base"]);
  const int index_base = j.value("index_base", 0);
  for (const auto& g : j["generators"]) {
    if (g.is_string()) {
      p.generators.push_back(g.get<std::string>());
      p.expansion.emplace_back(p.base.n());
    } else if (g.is_object() && g.contains("name")) {
      p.generators.push_back(g["name"].get<std::string>());
      p.expansion.push_back(has_base && g.contains("word")
                                ? MutationWord::parse(g["word"].get<std::string>(), p.base.n(), index_base)
                                : MutationWord(p.base.n()));
    } else {
      throw InputError("generator entries must be names or {\"name\", \"word\"} objects");
    }
  }
  for (const auto& r : j["relators"]) {
    const std::string text = r.is_string() ? r.get<std::string>() : r.value("word", std::string{});
    p.relators.push_back(parse_group_word(text, p.generators));
    p.labels.push_back(r.is_object() ? r.value("label", std::string{}) : std::string{});
  }
  return p;
}

inline Json loop_report_json(const LoopReport& r) {
  Json j{{"trivial", r.trivial},
         {"mode", to_string(r.mode)},
         {"cmatrix_verdict", r.cmatrix_verdict},
         {"word_length", r.word_length},
         {"mutations", r.mutations},
         {"elapsed_ms", r.elapsed_ms}};
  if (r.full_checked) {
    j["full_verdict"] = r.full_verdict;
    j["modes_agree"] = r.modes_agree;
  }
  if (!r.trail.empty()) {
    Json t = Json::array();
    for (const auto& m : r.trail) t.push_back(m.rows());
    j["trail"] = t;
  }
  return j;
}

}  // namespace clustermod
