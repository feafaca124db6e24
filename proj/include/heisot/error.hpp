#ifndef HEISOT_ERROR_HPP
#define HEISOT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace heisot {

/// Raised when an input violates an operation's precondition.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a linear program cannot be solved (infeasible, non-finite data).
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}

}  // namespace detail
}  // namespace heisot

#endif  // HEISOT_ERROR_HPP
