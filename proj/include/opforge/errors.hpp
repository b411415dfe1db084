#pragma once

#include <stdexcept>
#include <string>

namespace opforge {

struct ShapeError : std::runtime_error {
  explicit ShapeError(const std::string& m) : std::runtime_error(m) {}
};

struct ArityError : std::runtime_error {
  explicit ArityError(const std::string& m) : std::runtime_error(m) {}
};

// Resource guard exceeded (class too large, dimension too big, ...).
struct GuardError : std::runtime_error {
  explicit GuardError(const std::string& m) : std::runtime_error(m) {}
};

struct GraphError : std::runtime_error {
  explicit GraphError(const std::string& m) : std::runtime_error(m) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace opforge
