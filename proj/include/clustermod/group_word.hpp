#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "clustermod/checked.hpp"
#include "clustermod/error.hpp"

namespace clustermod {

struct Syllable {
  int gen = 0;
  std::int64_t exp = 0;  // never zero in a reduced word
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

// Freely reduced word in abstract generators 0..N-1, written left to right.
class GroupWord {
 public:
  GroupWord() = default;

  static GroupWord generator(int g, std::int64_t e = 1) {
    GroupWord w;
    w.append(g, e);
    return w;
  }

  // Appends g^e on the right, merging with the last syllable.
  void append(int g, std::int64_t e) {
    if (e == 0) return;
    if (g < 0) throw InternalError("negative generator index");
    if (!syl_.empty() && syl_.back().gen == g) {
      syl_.back().exp = checked::add(syl_.back().exp, e);
      if (syl_.back().exp == 0) syl_.pop_back();
      return;
    }
    syl_.push_back({g, e});
  }

  const std::vector<Syllable>& syllables() const noexcept { return syl_; }
  bool empty() const noexcept { return syl_.empty(); }

  std::int64_t length() const {
    std::int64_t l = 0;
    for (const auto& s : syl_) l = checked::add(l, checked::abs(s.exp));
    return l;
  }

  GroupWord operator*(const GroupWord& o) const {
    GroupWord r = *this;
    for (const auto& s : o.syl_) r.append(s.gen, s.exp);
    return r;
  }

  GroupWord inverse() const {
    GroupWord r;
    for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) r.append(it->gen, -it->exp);
    return r;
  }

  GroupWord pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    GroupWord r;
    for (std::int64_t i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  // Cyclic reduction: conjugates away matching ends. Relators are kept in this form.
  GroupWord cyclically_reduced() const {
    std::vector<Syllable> s = syl_;
    while (s.size() >= 2 && s.front().gen == s.back().gen) {
      s.front().exp = checked::add(s.front().exp, s.back().exp);
      s.pop_back();
      if (s.front().exp == 0) s.erase(s.begin());
    }
    GroupWord r;
    r.syl_ = std::move(s);
    return r;
  }

  std::vector<std::int64_t> exponent_sums(int ngens) const {
    std::vector<std::int64_t> v(static_cast<std::size_t>(ngens), 0);
    for (const auto& s : syl_) {
      if (s.gen >= ngens) throw InternalError("generator index out of range in exponent sum");
      v[static_cast<std::size_t>(s.gen)] = checked::add(v[static_cast<std::size_t>(s.gen)], s.exp);
    }
    return v;
  }

  // Total |exponent| of generator g.
  std::int64_t occurrences(int g) const {
    std::int64_t c = 0;
    for (const auto& s : syl_)
      if (s.gen == g) c += checked::abs(s.exp);
    return c;
  }

  GroupWord substitute(int g, const GroupWord& value) const {
    GroupWord r;
    for (const auto& s : syl_) {
      if (s.gen != g) {
        r.append(s.gen, s.exp);
        continue;
      }
      r = r * value.pow(s.exp);
    }
    return r;
  }

  // Renames generators through `map`; entries of -1 mark removed generators (must not occur).
  GroupWord reindexed(const std::vector<int>& map) const {
    GroupWord r;
    for (const auto& s : syl_) {
      const int t = map.at(static_cast<std::size_t>(s.gen));
      if (t < 0) throw InternalError("word uses a removed generator");
      r.append(t, s.exp);
    }
    return r;
  }

  // "a b^-1 c^2"; "1" for the empty word.
  std::string to_string(const std::vector<std::string>& names) const {
    if (syl_.empty()) return "1";
    std::string out;
    for (const auto& s : syl_) {
      if (!out.empty()) out += ' ';
      out += names.at(static_cast<std::size_t>(s.gen));
      if (s.exp != 1) out += "^" + std::to_string(s.exp);
    }
    return out;
  }

  friend bool operator==(const GroupWord&, const GroupWord&) = default;

 private:
  std::vector<Syllable> syl_;
};

}  // namespace clustermod
