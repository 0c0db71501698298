#pragma once

#include <stdexcept>
#include <string>

namespace tangles {

// Violations of an operation's preconditions: unknown vertex ids, non-nested
// separators, identical tangles passed to distinguish, and the like.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a combinator cannot analyze a deletion (or a partition) exactly.
// The toolkit refuses rather than approximating.
class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

// Parse failures for presentation files and witness documents.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tangles
