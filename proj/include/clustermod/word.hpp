#pragma once

#include <cctype>
#include <compare>
#include <string>
#include <vector>

#include "clustermod/error.hpp"
#include "clustermod/exchange_matrix.hpp"
#include "clustermod/permutation.hpp"

namespace clustermod {

struct Token {
  enum class Kind { mutate, permute };
  Kind kind = Kind::mutate;
  int k = 0;         // for mutate
  Permutation perm;  // for permute

  static Token mutation(int k) { return Token{Kind::mutate, k, {}}; }
  static Token permutation(Permutation p) { return Token{Kind::permute, 0, std::move(p)}; }
  bool is_mutation() const noexcept { return kind == Kind::mutate; }

  friend bool operator==(const Token&, const Token&) = default;
};

// A word in mutations m_k and seed permutations, stored in written order. Words are read
// right to left: the rightmost token acts first, so "s m2 m1" applies m1, then m2, then s.
// Concatenation `a * b` therefore means "b first, then a".
class MutationWord {
 public:
  MutationWord() = default;
  explicit MutationWord(int n) : n_(n) {}
  MutationWord(int n, std::vector<Token> tokens) : n_(n), tokens_(std::move(tokens)) {
    for (const auto& t : tokens_) check(t);
  }

  static MutationWord mutation(int n, int k) { return MutationWord(n, {Token::mutation(k)}); }
  static MutationWord permutation(Permutation p) {
    const int n = p.size();
    return MutationWord(n, {Token::permutation(std::move(p))});
  }

  // Tokens: "m<k>" for a mutation, cycle notation for a permutation, "id" or "1" for nothing.
  // Vertex indices are shifted by -base.
  static MutationWord parse(const std::string& text, int n, int base = 0) {
    MutationWord w(n);
    std::size_t i = 0;
    while (i < text.size()) {
      const char c = text[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (c == '(') {
        const std::size_t start = i;
        // Adjacent cycles form one permutation token.
        std::size_t j = i;
        while (j < text.size() && text[j] == '(') {
          const auto close = text.find(')', j);
          if (close == std::string::npos) throw InputError("unterminated cycle in word", j);
          j = close + 1;
        }
        try {
          w.tokens_.push_back(Token::permutation(Permutation::parse(text.substr(start, j - start), n, base)));
        } catch (const InputError& e) {
          throw InputError(std::string("bad permutation in word: ") + e.what(), start);
        } catch (const InvalidPermutation& e) {
          throw InputError(std::string("bad permutation in word: ") + e.what(), start);
        }
        i = j;
        continue;
      }
      if (c == 'm') {
        const std::size_t start = i;
        ++i;
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
          throw InputError("expected vertex index after 'm'", i);
        long v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          v = v * 10 + (text[i] - '0');
          if (v > 1000000) throw InputError("vertex index too large", start);
          ++i;
        }
        const long k = v - base;
        if (k < 0 || k >= n) throw InputError("mutation index " + std::to_string(v) + " out of range", start);
        w.tokens_.push_back(Token::mutation(static_cast<int>(k)));
        continue;
      }
      if (text.compare(i, 2, "id") == 0) {
        i += 2;
        continue;
      }
      if (c == '1' && (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
        ++i;
        continue;
      }
      throw InputError(std::string("unexpected character '") + c + "' in word", i);
    }
    return w;
  }

  int n() const noexcept { return n_; }
  const std::vector<Token>& tokens() const noexcept { return tokens_; }
  bool empty() const noexcept { return tokens_.empty(); }
  std::size_t size() const noexcept { return tokens_.size(); }

  std::size_t mutation_count() const {
    std::size_t c = 0;
    for (const auto& t : tokens_) c += t.is_mutation() ? 1 : 0;
    return c;
  }

  MutationWord operator*(const MutationWord& o) const {
    MutationWord r(n_ ? n_ : o.n_);
    r.tokens_ = tokens_;
    r.tokens_.insert(r.tokens_.end(), o.tokens_.begin(), o.tokens_.end());
    return r;
  }

  MutationWord inverse() const {
    MutationWord r(n_);
    for (auto it = tokens_.rbegin(); it != tokens_.rend(); ++it)
      r.tokens_.push_back(it->is_mutation() ? *it : Token::permutation(it->perm.inverse()));
    return r;
  }

  MutationWord pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    MutationWord r(n_);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  // Adds a token acting after all current ones (written on the left).
  void push_left(const Token& t) {
    check(t);
    tokens_.insert(tokens_.begin(), t);
  }
  void pop_left() { tokens_.erase(tokens_.begin()); }

  std::string to_string(int base = 0) const {
    std::string s;
    for (const auto& t : tokens_) {
      if (!s.empty()) s += ' ';
      s += t.is_mutation() ? "m" + std::to_string(t.k + base) : t.perm.to_string(base);
    }
    return s;
  }

  friend bool operator==(const MutationWord& a, const MutationWord& b) { return a.tokens_ == b.tokens_; }

 private:
  void check(const Token& t) const {
    if (t.is_mutation()) {
      if (t.k < 0 || t.k >= n_) throw IndexOutOfRange("mutation index " + std::to_string(t.k) + " out of range");
    } else if (t.perm.size() != n_) {
      throw InvalidPermutation("permutation degree does not match word");
    }
  }

  int n_ = 0;
  std::vector<Token> tokens_;
};

// Returns sigma * m_{i_l} ... m_{i_1} with adjacent equal mutations cancelled; the permutation
// token is omitted when it is the identity.
inline MutationWord normalize_word(const MutationWord& w) {
  const int n = w.n();
  Permutation pi = Permutation::identity(n);
  std::vector<int> applied;  // mutation indices in application order
  const auto& ts = w.tokens();
  for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
    if (!it->is_mutation()) {
      pi = it->perm * pi;
      continue;
    }
    // m_k pi = pi m_{pi^-1(k)}.
    const int j = pi.inverse()(it->k);
    if (!applied.empty() && applied.back() == j)
      applied.pop_back();
    else
      applied.push_back(j);
  }
  std::vector<Token> out;
  if (!pi.is_identity()) out.push_back(Token::permutation(pi));
  for (auto it = applied.rbegin(); it != applied.rend(); ++it) out.push_back(Token::mutation(*it));
  return MutationWord(n, std::move(out));
}

// Permutation part and mutation sequence (application order) of a normalized word.
struct NormalizedParts {
  Permutation perm;
  std::vector<int> mutations;
};

inline NormalizedParts normalized_parts(const MutationWord& w) {
  const auto nw = normalize_word(w);
  NormalizedParts p{Permutation::identity(w.n()), {}};
  for (auto it = nw.tokens().rbegin(); it != nw.tokens().rend(); ++it) {
    if (it->is_mutation())
      p.mutations.push_back(it->k);
    else
      p.perm = it->perm;
  }
  return p;
}

inline ExchangeMatrix apply_word(const ExchangeMatrix& m, const MutationWord& w) {
  ExchangeMatrix cur = m;
  const auto& ts = w.tokens();
  for (auto it = ts.rbegin(); it != ts.rend(); ++it)
    cur = it->is_mutation() ? mutate_matrix(cur, it->k) : apply_permutation(cur, it->perm);
  return cur;
}

// Lexicographic order on normalized words: mutation sequence first, then permutation images.
inline bool normalized_less(const MutationWord& a, const MutationWord& b) {
  const auto pa = normalized_parts(a), pb = normalized_parts(b);
  if (pa.mutations.size() != pb.mutations.size()) return pa.mutations.size() < pb.mutations.size();
  if (pa.mutations != pb.mutations) return pa.mutations < pb.mutations;
  return pa.perm < pb.perm;
}

}  // namespace clustermod
