#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "clustermod/error.hpp"

namespace clustermod {

// A bijection of {0, ..., n-1}, stored as its image list.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int n) {
    Permutation p;
    p.images_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p.images_[static_cast<std::size_t>(i)] = i;
    return p;
  }

  static Permutation from_images(std::vector<int> images) {
    std::vector<char> seen(images.size(), 0);
    for (int v : images) {
      if (v < 0 || static_cast<std::size_t>(v) >= images.size() || seen[static_cast<std::size_t>(v)])
        throw InvalidPermutation("image list is not a permutation");
      seen[static_cast<std::size_t>(v)] = 1;
    }
    Permutation p;
    p.images_ = std::move(images);
    return p;
  }

  // Product of disjoint or overlapping cycles, composed right to left.
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    Permutation result = identity(n);
    for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
      const auto& c = *it;
      Permutation cyc = identity(n);
      std::vector<char> seen(static_cast<std::size_t>(n), 0);
      for (std::size_t i = 0; i < c.size(); ++i) {
        int a = c[i];
        if (a < 0 || a >= n) throw InvalidPermutation("cycle entry " + std::to_string(a) + " out of range");
        if (seen[static_cast<std::size_t>(a)]) throw InvalidPermutation("repeated entry in cycle");
        seen[static_cast<std::size_t>(a)] = 1;
        cyc.images_[static_cast<std::size_t>(a)] = c[(i + 1) % c.size()];
      }
      result = compose(cyc, result);
    }
    return result;
  }

  // Cycle notation such as "(0 1 2)(3 4)"; entries are shifted by -base.
  static Permutation parse(const std::string& text, int n, int base = 0) {
    std::vector<std::vector<int>> cycles;
    std::size_t i = 0;
    auto skip = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    while (i < text.size()) {
      if (text[i] != '(') throw InputError("expected '(' in permutation", i);
      ++i;
      std::vector<int> cyc;
      skip();
      while (i < text.size() && text[i] != ')') {
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
          throw InputError("expected vertex index in permutation", i);
        int v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          v = v * 10 + (text[i] - '0');
          if (v > 1000000) throw InputError("vertex index too large", i);
          ++i;
        }
        cyc.push_back(v - base);
        skip();
        if (i < text.size() && text[i] == ',') {
          ++i;
          skip();
        }
      }
      if (i >= text.size()) throw InputError("unterminated cycle", i);
      ++i;
      cycles.push_back(std::move(cyc));
      skip();
    }
    return from_cycles(n, cycles);
  }

  int size() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != static_cast<int>(i)) return false;
    return true;
  }

  // (a * b)(i) = a(b(i)).
  static Permutation compose(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw InvalidPermutation("composing permutations of different degree");
    Permutation r;
    r.images_.resize(b.images_.size());
    for (std::size_t i = 0; i < b.images_.size(); ++i) r.images_[i] = a(b.images_[i]);
    return r;
  }

  Permutation operator*(const Permutation& other) const { return compose(*this, other); }

  Permutation inverse() const {
    Permutation r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) r.images_[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
    return r;
  }

  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(images_.size(), 0);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i] || images_[i] == static_cast<int>(i)) continue;
      std::vector<int> c;
      for (int j = static_cast<int>(i); !seen[static_cast<std::size_t>(j)]; j = images_[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = 1;
        c.push_back(j);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  // "()" for the identity.
  std::string to_string(int base = 0) const {
    auto cs = cycles();
    if (cs.empty()) return "()";
    std::string s;
    for (const auto& c : cs) {
      s += '(';
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(c[i] + base);
      }
      s += ')';
    }
    return s;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.images_ <=> b.images_; }

 private:
  std::vector<int> images_;
};

}  // namespace clustermod
