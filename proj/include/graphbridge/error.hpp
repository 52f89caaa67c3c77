#pragma once

#include <stdexcept>
#include <string>

namespace graphbridge {

// Every engine failure carries a stable code that travels verbatim in
// protocol "error" events and CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(detail), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& detail) : Error("ParseError", detail) {}
};

class ValidationError : public Error {
 public:
  ValidationError(std::string rule, std::string element)
      : Error("ValidationError", rule + ": " + element),
        rule_(std::move(rule)),
        element_(std::move(element)) {}

  const std::string& rule() const noexcept { return rule_; }
  const std::string& element() const noexcept { return element_; }

 private:
  std::string rule_;
  std::string element_;
};

#define GRAPHBRIDGE_SIMPLE_ERROR(Name)                                    \
  class Name : public Error {                                             \
   public:                                                                \
    explicit Name(const std::string& detail) : Error(#Name, detail) {}    \
  }

GRAPHBRIDGE_SIMPLE_ERROR(SelfLoopError);
GRAPHBRIDGE_SIMPLE_ERROR(UnknownFrame);
GRAPHBRIDGE_SIMPLE_ERROR(PredicateTypeError);
GRAPHBRIDGE_SIMPLE_ERROR(EmptyInput);
GRAPHBRIDGE_SIMPLE_ERROR(DegeneratePolygon);
GRAPHBRIDGE_SIMPLE_ERROR(UnknownNode);
GRAPHBRIDGE_SIMPLE_ERROR(MissingPosition);
GRAPHBRIDGE_SIMPLE_ERROR(ProgressOutOfRange);
GRAPHBRIDGE_SIMPLE_ERROR(DegenerateAnchors);
GRAPHBRIDGE_SIMPLE_ERROR(IllegalTransition);
GRAPHBRIDGE_SIMPLE_ERROR(UnknownView);
GRAPHBRIDGE_SIMPLE_ERROR(MalformedMessage);
GRAPHBRIDGE_SIMPLE_ERROR(IoError);

#undef GRAPHBRIDGE_SIMPLE_ERROR

}  // namespace graphbridge
