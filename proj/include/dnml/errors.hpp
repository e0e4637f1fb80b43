#ifndef DNML_ERRORS_HPP
#define DNML_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dnml {

// Sizes or dimensions of the inputs do not agree with each other.
class InputShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value lies outside the domain an operation accepts.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed text input. line() is 1-based; 0 when no line applies.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// The community detector could not produce a labeling.
class DetectorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dnml

#endif  // DNML_ERRORS_HPP
