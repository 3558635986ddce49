#ifndef HSINT_ERRORS_HPP
#define HSINT_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hsint {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidField : Error {
  explicit InvalidField(const std::string& msg) : Error(msg) {}
};

struct DegenerateInput : Error {
  explicit DegenerateInput(const std::string& msg) : Error(msg) {}
};

struct ZeroDivisor : Error {
  explicit ZeroDivisor(const std::string& msg) : Error(msg) {}
};

struct RingMismatch : Error {
  explicit RingMismatch(const std::string& msg) : Error(msg) {}
};

struct LengthExceeded : Error {
  explicit LengthExceeded(const std::string& msg) : Error(msg) {}
};

struct LengthMismatch : Error {
  explicit LengthMismatch(const std::string& msg) : Error(msg) {}
};

struct NotLogarithmic : Error {
  explicit NotLogarithmic(const std::string& msg) : Error(msg) {}
};

struct NotLogarithmicPrefix : Error {
  explicit NotLogarithmicPrefix(const std::string& msg) : Error(msg) {}
};

struct NotApplicable : Error {
  explicit NotApplicable(const std::string& msg) : Error(msg) {}
};

struct NotALeap : Error {
  explicit NotALeap(const std::string& msg) : Error(msg) {}
};

struct NoInverse : Error {
  explicit NoInverse(const std::string& msg) : Error(msg) {}
};

struct UsePowerReduce : Error {
  explicit UsePowerReduce(const std::string& msg) : Error(msg) {}
};

struct NotAPowerCase : Error {
  explicit NotAPowerCase(const std::string& msg) : Error(msg) {}
};

struct BudgetExceeded : Error {
  uint64_t explored;
  explicit BudgetExceeded(uint64_t n)
      : Error("search branch budget exceeded after " + std::to_string(n) +
              " branches"),
        explored(n) {}
};

struct ParseError : Error {
  size_t offset;
  ParseError(const std::string& msg, size_t off)
      : Error(msg + " (at offset " + std::to_string(off) + ")"), offset(off) {}
};

}  // namespace hsint

#endif
