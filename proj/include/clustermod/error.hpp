#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace clustermod {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input. `position` is a byte offset into the offending text when known.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what, std::size_t position = npos)
      : Error(position == npos ? what : what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class FrozenMutation : public Error {
 public:
  explicit FrozenMutation(int k) : Error("mutation at frozen vertex " + std::to_string(k)), vertex(k) {}
  int vertex;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class InvalidMatrix : public Error {
 public:
  using Error::Error;
};

class InvalidPermutation : public Error {
 public:
  using Error::Error;
};

class Overflow : public Error {
 public:
  using Error::Error;
};

class NotALoop : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  explicit CapExceeded(std::size_t cap)
      : Error("mutation class exceeds cap of " + std::to_string(cap) + " classes"), cap(cap) {}
  std::size_t cap;
};

class InvertedEdge : public Error {
 public:
  InvertedEdge(std::size_t cls, int k)
      : Error("edge orbit (" + std::to_string(cls) + ", " + std::to_string(k) +
              ") is inverted by an element of the group"),
        class_id(cls),
        vertex(k) {}
  std::size_t class_id;
  int vertex;
};

// An internal consistency check failed; indicates a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace clustermod
