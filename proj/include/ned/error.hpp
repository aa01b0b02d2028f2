#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ned {

// Malformed input text: edge lists, tree literals, weight files.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line_or_pos)
      : std::runtime_error(what), where_(line_or_pos) {}

  std::size_t where() const noexcept { return where_; }

 private:
  std::size_t where_;
};

// Caller asked for something the inputs cannot support (mode/graph-kind
// mismatch, size caps on exhaustive oracles, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation undefined on the given data, e.g. an empty graph.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A checked algorithmic invariant failed at run time.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ned
