#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clustermod/brown.hpp"
#include "clustermod/catalog.hpp"
#include "clustermod/export.hpp"
#include "clustermod/group_analysis.hpp"
#include "clustermod/quiver_io.hpp"
#include "clustermod/service.hpp"

namespace clustermod {

enum ExitCode { kExitOk = 0, kExitVerificationFailed = 1, kExitInputError = 2 };

namespace detail {

inline bool looks_like_presentation(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) return false;
  try {
    const auto j = Json::parse(read_file(path));
    return j.is_object() && j.contains("generators") && j.contains("relators");
  } catch (const Json::parse_error&) {
    return false;
  }
}

inline void print_abelianization(std::ostream& out, const AbelianInvariants& a) {
  out << "abelianization: " << a.to_string();
  if (a.primary_string() != a.to_string()) out << " (= " << a.primary_string() << ")";
  out << "\nfree rank: " << a.free_rank << "\ntorsion: [";
  for (std::size_t i = 0; i < a.torsion.size(); ++i) out << (i ? "," : "") << a.torsion[i];
  out << "]\n";
}

}  // namespace detail

// Runs one CLI invocation. Exit codes: 0 success, 1 verification failure, 2 input error.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"clustermod: quiver mutation, mutation classes and cluster modular group presentations"};
  app.require_subcommand(1);

  std::string quiver_arg, word_arg, rel_arg, mode_arg = "cmatrix", keep_arg;
  std::size_t cap = 50000;
  int base = 0, port = 8080;
  bool json = false, dot = false, seed_out = false, normalize = false, full_check = false, raw = false, trail = false;
  std::string host = "127.0.0.1", write_dir;

  auto* mutate = app.add_subcommand("mutate", "apply a mutation word to a quiver");
  mutate->add_option("quiver", quiver_arg, "quiver JSON file or catalog name")->required();
  mutate->add_option("word", word_arg, "word such as \"(0 1) m0\", read right to left")->required();
  mutate->add_option("--base", base, "index base of the word (0 or 1)");
  mutate->add_flag("--seed", seed_out, "print the seed (C-matrix and cluster variables)");
  mutate->add_flag("--normalize", normalize, "also print the normalized word");

  auto* enumerate = app.add_subcommand("enumerate", "enumerate the mutation class and its modular graph");
  enumerate->add_option("quiver", quiver_arg)->required();
  enumerate->add_option("--cap", cap, "maximum number of classes");
  enumerate->add_flag("--json", json, "print the class as JSON");
  enumerate->add_flag("--dot", dot, "print the modular graph as DOT");

  auto* present = app.add_subcommand("present", "derive a presentation of the saturated cluster modular group");
  present->add_option("quiver", quiver_arg)->required();
  present->add_option("--cap", cap);
  present->add_option("--base", base, "index base for printed words");
  present->add_flag("--json", json);
  present->add_flag("--raw", raw, "skip the Tietze post-pass");
  present->add_flag("--full-check", full_check, "certify every relator in full mode as well");

  auto* abel = app.add_subcommand("abelianize", "abelianization of a quiver's group or a presentation file");
  abel->add_option("input", quiver_arg, "quiver, catalog name, or presentation JSON")->required();
  abel->add_option("--cap", cap);
  abel->add_flag("--json", json);

  auto* verify = app.add_subcommand("verify", "verify the relations of a relation file");
  verify->add_option("quiver", quiver_arg)->required();
  verify->add_option("relations", rel_arg, "relation file")->required();
  verify->add_option("--mode", mode_arg, "cmatrix, full or both")->check(CLI::IsMember({"cmatrix", "full", "both"}));
  verify->add_flag("--json", json);
  verify->add_flag("--trail", trail, "include the matrix trail in JSON output");

  auto* dehn = app.add_subcommand("dehn", "list cluster Dehn twist candidates in the mutation class");
  dehn->add_option("quiver", quiver_arg)->required();
  dehn->add_option("--cap", cap);

  auto* elim = app.add_subcommand("eliminate", "project a word to a subset of vertices");
  elim->add_option("quiver", quiver_arg)->required();
  elim->add_option("word", word_arg)->required();
  elim->add_option("--keep", keep_arg, "comma-separated kept vertices")->required();
  elim->add_option("--base", base);

  auto* cat = app.add_subcommand("catalog", "list bundled quivers");
  cat->add_option("--write", write_dir, "write one JSON file per quiver into this directory");

  auto* serve = app.add_subcommand("serve", "run the HTTP service");
  serve->add_option("--port", port);
  serve->add_option("--host", host);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (*mutate) {
      const auto m = load_quiver(quiver_arg);
      MutationWord w;
      try {
        w = MutationWord::parse(word_arg, m.n(), base);
      } catch (const InputError& e) {
        err << "error: word: " << e.what() << "\n";
        return kExitInputError;
      }
      const Seed s = apply_word(initial_seed(m, seed_out), w);
      Json j = seed_out ? seed_json(s) : to_json(s.matrix);
      if (normalize) j["normalized_word"] = normalize_word(w).to_string(base);
      out << j.dump() << "\n";
      return kExitOk;
    }
    if (*enumerate) {
      const auto m = load_quiver(quiver_arg);
      auto c = enumerate_class(m, {cap, std::nullopt});
      if (!json && !dot) out << "class size: " << c.size() << "\n";
      try {
        const auto g = build_modular_graph(std::move(c));
        if (json) {
          out << graph_json(g).dump(2) << "\n";
        } else if (dot) {
          out << graph_dot(g);
        } else {
          std::size_t squares = 0, pentagons = 0, hexagons = 0, octagons = 0;
          for (const auto& f : g.faces) {
            squares += f.h == 2;
            pentagons += f.h == 3;
            hexagons += f.h == 4;
            octagons += f.h == 6;
          }
          out << "automorphism orders:";
          for (const auto& mem : g.cls.members) out << " " << mem.automorphisms.size();
          out << "\noriented edge orbits: " << g.oriented.size() << "\nedge orbits: " << g.edges.size()
              << "\nfaces: " << squares << " squares, " << pentagons << " pentagons, " << hexagons << " hexagons, "
              << octagons << " octagons\n";
        }
      } catch (const InvertedEdge& e) {
        if (json) out << class_json(enumerate_class(m, {cap, std::nullopt})).dump(2) << "\n";
        err << "warning: " << e.what() << "\n";
      }
      return kExitOk;
    }
    if (*present) {
      const auto m = load_quiver(quiver_arg);
      AssembleOptions opt;
      opt.full_check = full_check;
      const auto b = assemble_presentation(m, {cap, std::nullopt}, opt);
      const auto p = raw ? b.presentation : tietze_simplify(b.presentation);
      if (json) {
        Json j = presentation_json(p, base);
        j["certified_relators"] = b.certified;
        j["full_checked_relators"] = b.full_checked;
        out << j.dump(2) << "\n";
      } else {
        out << "class size: " << b.graph.cls.size() << "\nE+: " << b.data.eplus.size() << " (" << b.data.tree_edge_count()
            << " tree edges)\nfaces: " << b.data.faces.size() << "\nrelators certified: " << b.certified << " of "
            << b.presentation.relators.size() << (full_check ? " (cmatrix and full)" : " (cmatrix)") << "\n";
        out << presentation_text(p, base);
        detail::print_abelianization(out, abelianize(p));
      }
      return kExitOk;
    }
    if (*abel) {
      AbelianInvariants a;
      if (detail::looks_like_presentation(quiver_arg)) {
        a = abelianize(presentation_from_json(parse_json_text(read_file(quiver_arg))));
      } else {
        const auto b = assemble_presentation(load_quiver(quiver_arg), {cap, std::nullopt});
        a = abelianize(tietze_simplify(b.presentation));
      }
      if (json)
        out << abelian_json(a).dump() << "\n";
      else
        detail::print_abelianization(out, a);
      return kExitOk;
    }
    if (*verify) {
      const auto m = load_quiver(quiver_arg);
      const auto file = parse_relation_file(read_file(rel_arg), m.n());
      const auto mode = parse_mode(mode_arg);
      const auto reports = verify_relations(m, file, mode, trail);
      bool all = true;
      Json arr = Json::array();
      for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        const auto& e = file.relations[i];
        all = all && r.trivial;
        if (json) {
          Json j{{"name", r.name}, {"lhs", e.lhs_text}, {"rhs", e.rhs_text}, {"is_loop", r.is_loop}, {"verdict", r.trivial}};
          if (r.is_loop) j["report"] = loop_report_json(r.loop);
          if (!r.error.empty()) j["error"] = r.error;
          arr.push_back(j);
          continue;
        }
        out << (r.trivial ? "PASS " : "FAIL ") << r.name << ": " << e.lhs_text << " = " << e.rhs_text;
        if (!r.is_loop) {
          out << "  [not a loop]\n";
          continue;
        }
        out << "  [" << (r.trivial ? "trivial" : "nontrivial") << ", " << to_string(r.loop.mode);
        if (r.loop.full_checked && !r.loop.modes_agree) out << ", MODES DISAGREE";
        out << ", " << r.loop.word_length << " tokens, " << r.loop.elapsed_ms << " ms]\n";
      }
      if (json) out << arr.dump(2) << "\n";
      if (!json) out << (all ? "all relations hold" : "some relations fail") << "\n";
      return all ? kExitOk : kExitVerificationFailed;
    }
    if (*dehn) {
      const auto c = enumerate_class(load_quiver(quiver_arg), {cap, std::nullopt});
      const auto cands = find_dehn_twist_candidates(c);
      out << "candidates: " << cands.size() << "\n";
      for (const auto& d : cands)
        out << "  class " << d.cls << " pair (" << d.i << " " << d.j << ") local " << d.local.to_string() << " twist "
            << normalize_word(d.twist).to_string() << (d.square_nontrivial ? "" : "  [square trivial]") << "\n";
      return kExitOk;
    }
    if (*elim) {
      const auto m = load_quiver(quiver_arg);
      const auto w = MutationWord::parse(word_arg, m.n(), base);
      std::vector<int> keep;
      std::stringstream ss(keep_arg);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        try {
          keep.push_back(std::stoi(tok) - base);
        } catch (const std::exception&) {
          throw InputError("bad vertex '" + tok + "' in --keep");
        }
      }
      out << eliminate(w, keep).to_string(base) << "\n";
      return kExitOk;
    }
    if (*cat) {
      for (const auto& e : catalog()) {
        out << e.name << "  " << e.description << "\n";
        if (!write_dir.empty()) {
          std::filesystem::create_directories(write_dir);
          std::ofstream f(std::filesystem::path(write_dir) / (e.name + ".json"));
          f << to_json(e.matrix).dump() << "\n";
        }
      }
      return kExitOk;
    }
    if (*serve) {
      Service svc;
      httplib::Server srv;
      svc.bind(srv);
      out << "listening on " << host << ":" << port << std::endl;
      if (!srv.listen(host, port)) {
        err << "error: cannot listen on " << host << ":" << port << "\n";
        return kExitInputError;
      }
      return kExitOk;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const FrozenMutation& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const IndexOutOfRange& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InvalidPermutation& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InvalidMatrix& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const NotALoop& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerificationFailed;
  } catch (const InvertedEdge& e) {
    // The construction needs non-inverted edges; the input is outside its scope.
    err << "error: " << e.what() << "; no presentation is derived\n";
    return kExitInputError;
  }
  return kExitOk;
}

}  // namespace clustermod
