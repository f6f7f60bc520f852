#pragma once

#include <stdexcept>
#include <string>

namespace fcif {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MalformedNumber : Error {
  using Error::Error;
};
struct OutOfUnitInterval : Error {
  using Error::Error;
};
struct ValueOverflow : Error {
  using Error::Error;
};
struct IndexOutOfRange : Error {
  using Error::Error;
};
struct EmptyVector : Error {
  using Error::Error;
};
struct UnknownFcif : Error {
  using Error::Error;
};
struct MissingParameter : Error {
  using Error::Error;
};
struct UnexpectedParameter : Error {
  using Error::Error;
};
struct WitnessShapeMismatch : Error {
  using Error::Error;
};
struct SearchSpaceTooLarge : Error {
  using Error::Error;
};
struct UnknownScenario : Error {
  using Error::Error;
};
struct BadInput : Error {
  using Error::Error;
};

// DSL diagnostics carry a source position.
struct DslError : Error {
  int line = 0;
  int column = 0;
  DslError(const std::string& msg, int l, int c)
      : Error(msg + " (line " + std::to_string(l) + ", column " + std::to_string(c) + ")"),
        line(l),
        column(c) {}
};

struct LexError : DslError {
  using DslError::DslError;
};
struct ParseError : DslError {
  using DslError::DslError;
};
struct DivisionByZero : Error {
  using Error::Error;
};
struct AgentIndexOutOfRange : Error {
  using Error::Error;
};
struct ResultOutOfUnitInterval : Error {
  using Error::Error;
};
struct UnresolvableIndex : Error {
  using Error::Error;
};

}  // namespace fcif
