#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace wittkit {

/// Base of all typed errors.  `name()` is stable and machine-matchable; the
/// CLI prints it verbatim so scripts can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& detail)
      : std::runtime_error(name + ": " + detail), m_name(std::move(name)) {}

  const std::string& name() const noexcept { return m_name; }

 private:
  std::string m_name;
};

#define WITTKIT_SIMPLE_ERROR(Name)                        \
  class Name : public Error {                             \
   public:                                                \
    explicit Name(const std::string& detail)              \
        : Error(#Name, detail) {}                         \
  }

WITTKIT_SIMPLE_ERROR(AllZeroToPrecision);  // inverting a series with no known nonzero coefficient
WITTKIT_SIMPLE_ERROR(ZeroBasePoint);       // (t+0)^n with n < 0
WITTKIT_SIMPLE_ERROR(DomainError);         // operation precondition violated by the data
WITTKIT_SIMPLE_ERROR(NotInFiltrationOne);  // exp direction with val <= 0
WITTKIT_SIMPLE_ERROR(ZeroScale);           // diagonal automorphism with b = 0
WITTKIT_SIMPLE_ERROR(InconsistentHead);    // conjugator target disagrees with its declared head
WITTKIT_SIMPLE_ERROR(NotAutomorphism);     // image table fails the factorization checks
WITTKIT_SIMPLE_ERROR(ZeroElement);         // operation needs a nonzero element
WITTKIT_SIMPLE_ERROR(PrecisionExhausted);  // known window too short to reach the requested index
WITTKIT_SIMPLE_ERROR(WindowTooSmall);      // shared column window shorter than the rank bound
WITTKIT_SIMPLE_ERROR(OutOfModel);          // generator expression has no finite principal part

#undef WITTKIT_SIMPLE_ERROR

/// Parse failure with the offset (0-based, into the input string) and what was
/// expected there.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& expected)
      : Error("ParseError",
              "at offset " + std::to_string(position) + ": expected " + expected),
        m_position(position),
        m_expected(expected) {}

  std::size_t position() const noexcept { return m_position; }
  const std::string& expected() const noexcept { return m_expected; }

 private:
  std::size_t m_position;
  std::string m_expected;
};

/// Residual certificate from the inner-derivation recovery: the basis index
/// whose image disagrees and the rendered residual element.
class NotInnerAtPrecision : public Error {
 public:
  NotInnerAtPrecision(int index, const std::string& residual_text)
      : Error("NotInnerAtPrecision",
              "residual at L[" + std::to_string(index) + "]: " + residual_text),
        m_index(index),
        m_residual_text(residual_text) {}

  int index() const noexcept { return m_index; }
  const std::string& residual_text() const noexcept { return m_residual_text; }

 private:
  int m_index;
  std::string m_residual_text;
};

}  // namespace wittkit
