#pragma once

#include <stdexcept>
#include <string>

namespace ddch {

/// Base of every error the library throws.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define DDCH_DEFINE_ERROR(Name)                                                \
  class Name : public Error {                                                  \
  public:                                                                      \
    using Error::Error;                                                        \
  }

DDCH_DEFINE_ERROR(InvalidGrid);
DDCH_DEFINE_ERROR(AllMobilitiesZero);
DDCH_DEFINE_ERROR(TriangleInequalityViolated);
DDCH_DEFINE_ERROR(NoWettingEquilibrium);
DDCH_DEFINE_ERROR(UnbalancedDefect);
DDCH_DEFINE_ERROR(GeometryTooLarge);
DDCH_DEFINE_ERROR(NoContactLine);
DDCH_DEFINE_ERROR(EmptyLevelSet);
DDCH_DEFINE_ERROR(InsufficientResolution);
DDCH_DEFINE_ERROR(OverlappingShapes);
DDCH_DEFINE_ERROR(DivergenceDetected);
DDCH_DEFINE_ERROR(ValidationError);
DDCH_DEFINE_ERROR(FormatError);

#undef DDCH_DEFINE_ERROR

/// Config syntax error; carries the offending line and key.
class ParseError : public Error {
public:
  ParseError(int line, std::string key, const std::string &what)
      : Error("line " + std::to_string(line) + " (" + key + "): " + what),
        line_(line), key_(std::move(key)) {}

  int line() const noexcept { return line_; }
  const std::string &key() const noexcept { return key_; }

private:
  int line_;
  std::string key_;
};

} // namespace ddch
