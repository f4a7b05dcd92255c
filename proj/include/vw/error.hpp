#ifndef VW_ERROR_HPP
#define VW_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vw {

/// Malformed word or word-map text. `position()` is a 0-based byte offset.
class ParseError : public std::invalid_argument {
public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}

  [[nodiscard]] std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// Operands live in free groups of different rank, or a generator exceeds the rank.
class RankError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its domain (d(w) too small, K <= 0, ...).
class PreconditionError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// An enumeration would exceed its configured state budget.
class GuardExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A construction failed its own post-condition check. Always a bug or a
/// counterexample worth reporting; never swallowed.
class VerificationError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace vw

#endif  // VW_ERROR_HPP
