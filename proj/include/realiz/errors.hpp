#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace realiz {

// Raised when a truncated object would exceed a configured ceiling.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// Name/formula recursion went deeper than the evaluator allows.
class CycleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A relation has a descending cycle; cycle() lists its node indices.
class NotWellFoundedError : public std::runtime_error {
 public:
  NotWellFoundedError(const std::string& what, std::vector<std::size_t> cycle)
      : std::runtime_error(what), cycle_(std::move(cycle)) {}
  const std::vector<std::size_t>& cycle() const { return cycle_; }

 private:
  std::vector<std::size_t> cycle_;
};

// Two distinct classes have the same members; first() and second() name them.
class ExtensionalityError : public std::runtime_error {
 public:
  ExtensionalityError(const std::string& what, std::size_t first, std::size_t second)
      : std::runtime_error(what), first_(first), second_(second) {}
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  std::size_t first_, second_;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace realiz
