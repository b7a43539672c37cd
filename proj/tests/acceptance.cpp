// Acceptance run: one PASS/FAIL line per headline result. Soft criteria only warn.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "clustermod/brown.hpp"
#include "clustermod/catalog.hpp"
#include "clustermod/group_analysis.hpp"
#include "clustermod/mutation_class.hpp"
#include "clustermod/presentation.hpp"
#include "clustermod/seed.hpp"

using namespace clustermod;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  double budget_s;
  bool soft;
  std::function<Outcome()> run;
};

std::string slurp(const std::string& relative) {
  std::ifstream in(std::string(CLUSTERMOD_SOURCE_DIR) + "/" + relative);
  if (!in) throw std::runtime_error("cannot read " + relative);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::map<std::string, int> face_counts(const std::vector<StandardCycle>& faces) {
  std::map<std::string, int> out;
  for (const auto& f : faces) ++out[face_name(f)];
  return out;
}

std::string describe(const std::map<std::string, int>& counts) {
  std::string s;
  for (const auto& [name, n] : counts) s += (s.empty() ? "" : " + ") + std::to_string(n) + " " + name;
  return s.empty() ? "none" : s;
}

// Both oracles must run, agree, and call every relation trivial.
Outcome check_relation_file(const std::string& quiver, const std::string& file) {
  const auto m = catalog_quiver(quiver);
  const auto f = parse_relation_file(slurp(file), m.n());
  std::vector<std::string> failed;
  for (const auto& r : verify_relations(m, f, OracleMode::both)) {
    const bool ok = r.is_loop && r.trivial && r.loop.full_checked && r.loop.modes_agree;
    if (!ok) failed.push_back(r.name + (r.is_loop ? "" : " (not a loop)"));
  }
  Outcome o;
  o.pass = failed.empty();
  o.detail = file + ": " + std::to_string(f.relations.size() - failed.size()) + "/" +
             std::to_string(f.relations.size()) + " trivial in both modes";
  if (!failed.empty()) {
    o.detail += "; failing:";
    for (const auto& n : failed) o.detail += " " + n;
  }
  return o;
}

Outcome combine(const std::vector<Outcome>& parts) {
  Outcome o{true, ""};
  for (const auto& p : parts) {
    o.pass = o.pass && p.pass;
    o.detail += (o.detail.empty() ? "" : " | ") + p.detail;
  }
  return o;
}

std::vector<MutationWord> standard_relations(const ExchangeMatrix& m) {
  std::vector<MutationWord> out;
  for (int k : m.mutable_vertices())
    for (int l : m.mutable_vertices()) {
      if (k == l) continue;
      const int p = pair_type(m, k, l);
      if (p < 0 || m(k, l) < 0 || (p == 0 && k > l)) continue;
      out.push_back(StandardCycle{0, k, l, p, standard_h(p)}.word(m.n()));
    }
  return out;
}

Outcome class_sizes() {
  const std::vector<std::pair<std::string, std::size_t>> expected = {{"x7", 2}, {"x6", 5}, {"j", 2}, {"markov", 1}};
  Outcome o{true, ""};
  for (const auto& [name, size] : expected) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto got = enumerate_class(catalog_quiver(name)).size();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.pass = o.pass && got == size && s < 1.0;
    o.detail += (o.detail.empty() ? "" : ", ") + name + "=" + std::to_string(got) + " (want " + std::to_string(size) + ")";
  }
  return o;
}

Outcome modular_graph() {
  const auto x7 = build_modular_graph(enumerate_class(catalog_quiver("x7")));
  const auto x6 = build_modular_graph(enumerate_class(catalog_quiver("x6")));
  const auto f7 = face_counts(x7.faces), f6 = face_counts(x6.faces);
  const bool ok7 = x7.edges.size() == 3 && f7 == std::map<std::string, int>{{"pentagon", 2}, {"square", 2}};
  const bool ok6 = x6.edges.size() == 11 && f6 == std::map<std::string, int>{{"pentagon", 5}, {"square", 6}};
  Outcome a{ok7, "x7: " + std::to_string(x7.edges.size()) + " edge orbits, " + describe(f7) +
                     " (want 3, 2 square + 2 pentagon)"};
  Outcome b{ok6, "x6: " + std::to_string(x6.edges.size()) + " edge orbits, " + describe(f6) +
                     " (want 11, 6 square + 5 pentagon)"};
  return combine({a, b});
}

Outcome abelianization() {
  std::vector<Outcome> parts;
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"x7", "Z/2 x Z/5"}, {"x6", "Z/2 x Z/2"}, {"g2", "Z^2"}};
  for (const auto& [name, want] : expected) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto b = assemble_presentation(catalog_quiver(name));
    const auto got = abelianize(b.presentation, true).primary_string();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool certified = b.certified == b.presentation.relators.size();
    parts.push_back({got == want && certified && s < 30.0,
                     name + ": " + got + " (want " + want + ")" + (certified ? "" : ", uncertified relators")});
  }
  return combine(parts);
}

Outcome relation_catalog() {
  return combine({check_relation_file("x7", "relations/x7.rel"), check_relation_file("x6", "relations/x6.rel")});
}

Outcome standard_relation_suite() {
  std::mt19937_64 rng(20240611);
  std::size_t checked = 0;
  bool octagon = false;
  std::vector<std::string> failed;
  auto check = [&](const std::string& label, const ExchangeMatrix& m) {
    for (const auto& w : standard_relations(m)) {
      ++checked;
      octagon = octagon || w.mutation_count() == 8;
      if (!is_trivial_loop(m, w, OracleMode::full).trivial) failed.push_back(label + ": " + w.to_string());
    }
  };
  for (const auto& e : catalog()) {
    check(e.name, e.matrix);
    const auto mv = e.matrix.mutable_vertices();
    if (mv.empty()) continue;
    for (int t = 0; t < 100; ++t) {
      auto m = e.matrix;
      const int len = 1 + static_cast<int>(rng() % 12);
      for (int s = 0; s < len; ++s) m = mutate_matrix(m, mv[rng() % mv.size()]);
      check(e.name + " member", m);
    }
  }
  Outcome o;
  o.pass = failed.empty() && octagon;
  o.detail = std::to_string(checked) + " standard relations checked in full mode, " + std::to_string(failed.size()) +
             " failed, octagon " + (octagon ? "present" : "missing");
  if (!failed.empty()) o.detail += "; first failure " + failed.front();
  return o;
}

Outcome a2_order_five() {
  const auto m = catalog_quiver("a2");
  const auto init = initial_seed(m);
  const auto phi = MutationWord::parse("(0 1) m0", 2);
  bool ok = true;
  std::string detail;
  for (int e = 1; e <= 5; ++e) {
    const auto s = apply_word(init, phi.pow(e));
    const bool a_same = s.a == init.a, x_same = s.x == init.x, c_same = s.c == identity_matrix(2);
    const bool identity = a_same && x_same && c_same && s.matrix == init.matrix;
    const bool nowhere_same = !a_same && !x_same && !c_same;
    ok = ok && (e == 5 ? identity : nowhere_same);
    detail += (detail.empty() ? "" : ", ") + std::string("phi^") + std::to_string(e) + (identity ? "=id" : "!=id");
  }
  return {ok, detail};
}

Outcome appendix_annulus() {
  auto o = check_relation_file("j", "relations/annulus.rel");
  const auto psi1 = MutationWord::parse("(0 1 2)(3 4 5 6) m2 m1 m0", 7);
  const auto s = MutationWord::parse("(0 1 2) m2 m1 m0", 3);
  const auto e_psi = eliminate(psi1, {0, 1, 2});
  const auto e_sigma = eliminate(MutationWord::parse("(3 5)(4 6)", 7), {0, 1, 2});
  const bool psi_ok = normalize_word(e_psi).to_string() == normalize_word(s).to_string();
  const bool sigma_ok = normalize_word(e_sigma).empty();
  o.pass = o.pass && psi_ok && sigma_ok;
  o.detail += " | e(psi1) = " + e_psi.to_string() + (psi_ok ? " = s" : " != s") + " | e(sigma35) " +
              (sigma_ok ? "= id" : "= " + e_sigma.to_string());
  return o;
}

Outcome dehn_twists() {
  auto o = check_relation_file("x7", "relations/x7_twists.rel");
  const auto c = enumerate_class(catalog_quiver("x7"));
  std::set<std::pair<int, int>> at0;
  bool nontrivial = true;
  for (const auto& d : find_dehn_twist_candidates(c)) {
    if (d.cls != 0) continue;
    at0.insert({d.i, d.j});
    nontrivial = nontrivial && d.square_nontrivial;
  }
  const bool pairs_ok = at0 == std::set<std::pair<int, int>>{{1, 2}, {3, 4}, {5, 6}};
  o.pass = o.pass && pairs_ok && nontrivial;
  std::string pairs;
  for (const auto& [i, j] : at0) pairs += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  o.detail += " | double-arrow candidates at the start quiver: " + (pairs.empty() ? "none" : pairs) +
              " (want (1,2)(3,4)(5,6))";
  return o;
}

Outcome affine_stretch() {
  const auto c = enumerate_class(catalog_quiver("e6_affine"));
  std::optional<ExchangeMatrix> doubled;
  for (const auto& m : c.members) {
    for (int i = 0; i < m.rep.n() && !doubled; ++i)
      for (int j = 0; j < m.rep.n() && !doubled; ++j)
        if (m.rep(i, j) == 2) doubled = m.rep;
    if (doubled) break;
  }
  if (!doubled) return {false, std::to_string(c.size()) + " classes, no double arrow found"};
  const auto b = assemble_presentation(*doubled);
  const auto got = abelianize(b.presentation, true).to_string();
  const bool certified = b.certified == b.presentation.relators.size();
  return {got == "Z x Z/2" && certified, std::to_string(c.size()) + " classes, presented at a double-arrow member: " +
                                             got + " (want Z x Z/2), " + std::to_string(b.presentation.relators.size()) +
                                             " relators" + (certified ? " certified" : " NOT all certified")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"class sizes", 4, false, class_sizes},
      {"modular graph structure", 5, false, modular_graph},
      {"presentation and abelianization", 90, false, abelianization},
      {"relation catalog in cmatrix and full mode", 300, false, relation_catalog},
      {"standard relations on catalog and random members", 600, false, standard_relation_suite},
      {"A2 order five", 5, false, a2_order_five},
      {"annulus twist and elimination", 5, false, appendix_annulus},
      {"Dehn twist generation", 60, false, dehn_twists},
      {"affine E6 stretch", 600, true, affine_stretch},
  };
  int hard_failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > c.budget_s) {
      o.pass = false;
      o.detail += " | over budget";
    }
    const char* verdict = o.pass ? "PASS" : (c.soft ? "WARN" : "FAIL");
    if (!o.pass && !c.soft) ++hard_failures;
    std::printf("%s  %-50s %8.2fs  %s\n", verdict, c.name.c_str(), s, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d hard failure(s)\n", hard_failures);
  return hard_failures == 0 ? 0 : 1;
}
