#ifndef ABSREF_ERROR_HPP
#define ABSREF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace absref {

// Library-level error: violated precondition, malformed input, unknown name.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Syntax error with a character offset into the parsed text.
class ParseError : public Error {
public:
  ParseError(std::size_t position, const std::string& message)
      : Error("at " + std::to_string(position) + ": " + message),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

// Internal invariant failure (a produced witness did not re-verify, a
// generator built an object that fails its own validity check, ...).
class InternalError : public std::logic_error {
public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace absref

#endif
