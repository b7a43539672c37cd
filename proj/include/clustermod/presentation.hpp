#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "clustermod/exchange_matrix.hpp"
#include "clustermod/group_word.hpp"
#include "clustermod/smith.hpp"
#include "clustermod/word.hpp"

namespace clustermod {

// Finite presentation whose generators expand to mutation loops at `base`.
struct GroupPresentation {
  ExchangeMatrix base;
  std::vector<std::string> generators;
  std::vector<MutationWord> expansion;  // one loop word per generator
  std::vector<GroupWord> relators;
  std::vector<std::string> labels;  // origin of each relator, same length as relators

  int generator_index(const std::string& name) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i] == name) return static_cast<int>(i);
    return -1;
  }

  // Written-order concatenation of generator expansions.
  MutationWord expand(const GroupWord& w) const {
    MutationWord out(base.n());
    for (const auto& s : w.syllables()) {
      const auto& e = expansion.at(static_cast<std::size_t>(s.gen));
      out = out * e.pow(static_cast<int>(s.exp));
    }
    return out;
  }

  BigMatrix relation_matrix() const {
    BigMatrix m;
    for (const auto& r : relators) {
      const auto sums = r.exponent_sums(static_cast<int>(generators.size()));
      m.emplace_back(sums.begin(), sums.end());
    }
    return m;
  }
};

inline AbelianInvariants abelianize(const GroupPresentation& p, bool verify = false) {
  return abelian_invariants(p.relation_matrix(), p.generators.size(), verify);
}

// Drops empty and duplicate relators (after cyclic reduction and up to inversion).
inline void remove_trivial_relators(GroupPresentation& p) {
  std::vector<GroupWord> rel;
  std::vector<std::string> lab;
  std::set<std::vector<std::pair<int, std::int64_t>>> seen;
  auto key = [](const GroupWord& w) {
    std::vector<std::pair<int, std::int64_t>> k;
    for (const auto& s : w.syllables()) k.emplace_back(s.gen, s.exp);
    return k;
  };
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    const auto r = p.relators[i].cyclically_reduced();
    if (r.empty()) continue;
    const auto a = key(r), b = key(r.inverse().cyclically_reduced());
    if (seen.count(a) || seen.count(b)) continue;
    seen.insert(a);
    rel.push_back(r);
    lab.push_back(p.labels[i]);
  }
  p.relators = std::move(rel);
  p.labels = std::move(lab);
}

// Tietze post-pass: repeatedly removes a generator occurring exactly once in some relator
// by substituting its solution into the other relators, then drops trivial relators.
// Expansions of surviving generators are unchanged.
inline GroupPresentation tietze_simplify(GroupPresentation p, std::int64_t max_definition = 24,
                                         std::int64_t max_relator = 600) {
  remove_trivial_relators(p);
  for (;;) {
    // Candidate (relator length, relator index, generator) with the shortest relator first.
    std::size_t best_r = p.relators.size();
    int best_g = -1;
    std::int64_t best_len = 0;
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      const auto len = p.relators[i].length();
      if (len - 1 > max_definition) continue;
      if (best_r != p.relators.size() && len >= best_len) continue;
      for (const auto& s : p.relators[i].syllables()) {
        if (checked::abs(s.exp) != 1 || p.relators[i].occurrences(s.gen) != 1) continue;
        best_r = i;
        best_g = s.gen;
        best_len = len;
        break;
      }
    }
    if (best_r == p.relators.size()) break;
    // r = u x^e v = 1  =>  x = (u^-1 v^-1)^e
    const auto& r = p.relators[best_r];
    GroupWord u, v;
    std::int64_t e = 0;
    bool after = false;
    for (const auto& s : r.syllables()) {
      if (s.gen == best_g) {
        e = s.exp;
        after = true;
        continue;
      }
      (after ? v : u).append(s.gen, s.exp);
    }
    const GroupWord value = (u.inverse() * v.inverse()).pow(e);
    std::vector<GroupWord> rel;
    std::vector<std::string> lab;
    bool too_long = false;
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      if (i == best_r) continue;
      auto w = p.relators[i].substitute(best_g, value);
      if (w.length() > max_relator) too_long = true;
      rel.push_back(std::move(w));
      lab.push_back(p.labels[i]);
    }
    if (too_long) break;
    std::vector<int> map(p.generators.size());
    int next = 0;
    for (std::size_t g = 0; g < map.size(); ++g) map[g] = static_cast<int>(g) == best_g ? -1 : next++;
    for (auto& w : rel) w = w.reindexed(map);
    // Abstract presentations carry no expansions.
    if (p.expansion.size() == p.generators.size()) p.expansion.erase(p.expansion.begin() + best_g);
    p.generators.erase(p.generators.begin() + best_g);
    p.relators = std::move(rel);
    p.labels = std::move(lab);
    remove_trivial_relators(p);
  }
  return p;
}

inline std::string presentation_text(const GroupPresentation& p, int base = 0) {
  std::string s = "generators " + std::to_string(p.generators.size()) + "\n";
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    const auto w = p.expansion[i].to_string(base);
    s += "  " + p.generators[i] + " = " + (w.empty() ? "id" : w) + "\n";
  }
  s += "relators " + std::to_string(p.relators.size()) + "\n";
  for (std::size_t i = 0; i < p.relators.size(); ++i)
    s += "  " + p.relators[i].to_string(p.generators) + "    # " + p.labels[i] + "\n";
  return s;
}

}  // namespace clustermod
