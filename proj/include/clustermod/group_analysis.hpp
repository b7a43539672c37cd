#pragma once

#include <algorithm>
#include <cctype>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clustermod/error.hpp"
#include "clustermod/mutation_class.hpp"
#include "clustermod/seed.hpp"
#include "clustermod/word.hpp"

namespace clustermod {

// ---------------------------------------------------------------------------------------------
// Relation files
//
//   # comment
//   base 1                        vertex labels in word literals start at 1 (default 0)
//   let a = {(2 3) m2}            word literal in braces
//   let c = a b a^-1 [a, b]^2     juxtaposition is the product, [x,y] = x y x^-1 y^-1
//   rel name: lhs = rhs           chains "a = b = c" give the relations a = b and b = c
//
// Products follow the word convention: "x y" applies y first.
// ---------------------------------------------------------------------------------------------

struct RelationEntry {
  std::string name;
  std::string lhs_text;
  std::string rhs_text;
  MutationWord lhs;
  MutationWord rhs;
  int line = 0;
};

struct RelationFile {
  int base = 0;
  std::map<std::string, MutationWord> definitions;
  std::vector<RelationEntry> relations;
};

namespace detail {

class RelationParser {
 public:
  RelationParser(const std::string& text, int n) : text_(text), n_(n) {}

  RelationFile parse() {
    std::size_t line_start = 0;
    int line_no = 0;
    while (line_start <= text_.size()) {
      ++line_no;
      auto end = text_.find('\n', line_start);
      if (end == std::string::npos) end = text_.size();
      parse_line(line_start, end, line_no);
      line_start = end + 1;
    }
    return std::move(file_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t pos) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(msg + " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")", pos);
  }

  void skip_ws() {
    while (pos_ < end_ && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= end_ || text_[pos_] == '#';
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ >= end_ || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      fail("expected a name", pos_);
    while (pos_ < end_ && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= end_ || text_[pos_] != c) fail(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  long integer() {
    skip_ws();
    const std::size_t start = pos_;
    bool neg = false;
    if (pos_ < end_ && (text_[pos_] == '-' || text_[pos_] == '+')) neg = text_[pos_++] == '-';
    if (pos_ >= end_ || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected an integer", start);
    long v = 0;
    while (pos_ < end_ && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_++] - '0');
      if (v > 100000) fail("integer too large", start);
    }
    return neg ? -v : v;
  }

  bool starts_term() {
    skip_ws();
    if (pos_ >= end_) return false;
    const char c = text_[pos_];
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '{' || c == '(' || c == '[' || c == '1';
  }

  MutationWord expr() {
    if (!starts_term()) fail("expected an expression", pos_);
    MutationWord w(n_);
    while (starts_term()) w = w * term();
    return w;
  }

  MutationWord term() {
    MutationWord a = atom();
    skip_ws();
    if (pos_ < end_ && text_[pos_] == '^') {
      ++pos_;
      a = a.pow(static_cast<int>(integer()));
    }
    return a;
  }

  MutationWord atom() {
    skip_ws();
    const char c = text_[pos_];
    if (c == '{') {
      const std::size_t open = pos_;
      const auto close = text_.find('}', pos_);
      if (close == std::string::npos || close > end_) fail("unterminated word literal", open);
      pos_ = close + 1;
      try {
        return MutationWord::parse(text_.substr(open + 1, close - open - 1), n_, file_.base);
      } catch (const InputError& e) {
        fail(e.what(), open + 1 + (e.position() == InputError::npos ? 0 : e.position()));
      }
    }
    if (c == '(') {
      ++pos_;
      auto w = expr();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      auto x = expr();
      expect(',');
      auto y = expr();
      expect(']');
      return x * y * x.inverse() * y.inverse();
    }
    if (c == '1') {
      ++pos_;
      return MutationWord(n_);
    }
    const std::size_t start = pos_;
    const auto name = identifier();
    auto it = file_.definitions.find(name);
    if (it == file_.definitions.end()) fail("undefined name '" + name + "'", start);
    return it->second;
  }

  void parse_line(std::size_t begin, std::size_t end, int line_no) {
    pos_ = begin;
    end_ = end;
    if (at_end()) return;
    const std::size_t kw_pos = pos_;
    const auto kw = identifier();
    if (kw == "base") {
      const long b = integer();
      if (b != 0 && b != 1) fail("base must be 0 or 1", kw_pos);
      file_.base = static_cast<int>(b);
    } else if (kw == "let") {
      const auto name = identifier();
      expect('=');
      file_.definitions[name] = expr();
    } else if (kw == "rel") {
      const auto name = identifier();
      expect(':');
      std::vector<std::pair<std::string, MutationWord>> sides;
      for (;;) {
        skip_ws();
        const std::size_t s = pos_;
        auto w = expr();
        std::string t = text_.substr(s, pos_ - s);
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
        sides.emplace_back(std::move(t), std::move(w));
        skip_ws();
        if (pos_ < end_ && text_[pos_] == '=') {
          ++pos_;
          continue;
        }
        break;
      }
      if (sides.size() < 2) fail("relation needs '='", pos_);
      for (std::size_t i = 0; i + 1 < sides.size(); ++i) {
        RelationEntry e;
        e.name = sides.size() == 2 ? name : name + "." + std::to_string(i + 1);
        e.lhs_text = sides[i].first;
        e.rhs_text = sides[i + 1].first;
        e.lhs = sides[i].second;
        e.rhs = sides[i + 1].second;
        e.line = line_no;
        file_.relations.push_back(std::move(e));
      }
    } else {
      fail("unknown directive '" + kw + "'", kw_pos);
    }
    if (!at_end()) fail("unexpected text", pos_);
  }

  const std::string& text_;
  int n_;
  std::size_t pos_ = 0;
  std::size_t end_ = 0;
  RelationFile file_;
};

}  // namespace detail

inline RelationFile parse_relation_file(const std::string& text, int n) {
  return detail::RelationParser(text, n).parse();
}

struct RelationReport {
  std::string name;
  bool is_loop = false;
  bool trivial = false;
  std::string error;  // set when the word is not a loop
  LoopReport loop;
};

// lhs = rhs holds iff lhs rhs^-1 is a trivial loop at `base`. NotALoop propagates.
inline LoopReport verify_relation(const ExchangeMatrix& base, const MutationWord& lhs, const MutationWord& rhs,
                                  OracleMode mode, bool trail = false) {
  return is_trivial_loop(base, lhs * rhs.inverse(), mode, trail);
}

// Verifies every entry of a relation file concurrently; results keep file order.
inline std::vector<RelationReport> verify_relations(const ExchangeMatrix& base, const RelationFile& file,
                                                    OracleMode mode, bool trail = false) {
  std::vector<std::future<RelationReport>> jobs;
  for (const auto& r : file.relations)
    jobs.push_back(std::async(std::launch::async, [&base, &r, mode, trail] {
      RelationReport rep;
      rep.name = r.name;
      try {
        rep.loop = verify_relation(base, r.lhs, r.rhs, mode, trail);
        rep.is_loop = true;
        rep.trivial = rep.loop.trivial;
      } catch (const NotALoopError& e) {
        rep.error = e.what();
      }
      return rep;
    }));
  std::vector<RelationReport> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

// ---------------------------------------------------------------------------------------------
// Cluster Dehn twist candidates
// ---------------------------------------------------------------------------------------------

struct DehnCandidate {
  std::size_t cls = 0;
  int i = 0;
  int j = 0;            // eps_ij > 0, eps_ij * eps_ji = -4
  int k = 0;            // mutated vertex of the local twist (i j) m_k
  MutationWord path;    // start quiver -> rep_cls
  MutationWord local;   // (i j) m_k, a loop at rep_cls
  MutationWord twist;   // path^-1 local path, a loop at the start quiver
  bool square_nontrivial = false;
};

inline std::vector<DehnCandidate> find_dehn_twist_candidates(const MutationClass& c) {
  std::vector<DehnCandidate> out;
  const int n = c.n();
  for (std::size_t q = 0; q < c.size(); ++q) {
    const auto& rep = c.members[q].rep;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j || rep.is_frozen(i) || rep.is_frozen(j)) continue;
        if (rep(i, j) <= 0 || rep(i, j) * rep(j, i) != -4) continue;
        for (int k : {j, i}) {
          const auto local = MutationWord(n, {Token::permutation(Permutation::from_cycles(n, {{i, j}})), Token::mutation(k)});
          if (rep.weight(i) != rep.weight(j) || apply_word(rep, local) != rep) continue;
          DehnCandidate d;
          d.cls = q;
          d.i = i;
          d.j = j;
          d.k = k;
          d.path = c.members[q].path;
          d.local = local;
          d.twist = d.path.inverse() * local * d.path;
          d.square_nontrivial = !is_trivial_loop(c.start, d.twist.pow(2), OracleMode::cmatrix).trivial;
          out.push_back(std::move(d));
          break;
        }
      }
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Elimination homomorphism
// ---------------------------------------------------------------------------------------------

// Projects the normal form sigma m_{i_l} ... m_{i_1} of `w` to the vertices in `keep` (listed in
// increasing order; vertex keep[a] becomes a). Mutations must stay inside `keep` and sigma must
// preserve it.
inline MutationWord eliminate(const MutationWord& w, std::vector<int> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  const int n = w.n();
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  for (std::size_t a = 0; a < keep.size(); ++a) {
    if (keep[a] < 0 || keep[a] >= n) throw IndexOutOfRange("kept vertex out of range");
    index[static_cast<std::size_t>(keep[a])] = static_cast<int>(a);
  }
  const int m = static_cast<int>(keep.size());
  const auto nw = normalize_word(w);
  std::vector<Token> out;
  for (const auto& t : nw.tokens()) {
    if (t.is_mutation()) {
      const int a = index[static_cast<std::size_t>(t.k)];
      if (a < 0) throw InputError("word mutates eliminated vertex " + std::to_string(t.k));
      out.push_back(Token::mutation(a));
      continue;
    }
    std::vector<int> images(static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a) {
      const int img = index[static_cast<std::size_t>(t.perm(keep[static_cast<std::size_t>(a)]))];
      if (img < 0) throw InputError("permutation does not preserve the kept vertices");
      images[static_cast<std::size_t>(a)] = img;
    }
    auto p = Permutation::from_images(images);
    if (!p.is_identity()) out.push_back(Token::permutation(std::move(p)));
  }
  return MutationWord(m, std::move(out));
}

}  // namespace clustermod
