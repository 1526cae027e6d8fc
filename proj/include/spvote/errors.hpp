#pragma once

#include <stdexcept>
#include <string>

namespace spvote {

enum class ErrorKind {
  Config,
  InvalidGeometry,
  SubsetOutOfRange,
  PayloadShapeMismatch,
  AlienAlternative,
  ScopeMismatch,
  InvalidDistance,
  InvalidT,
  InvalidDispersion,
  EmptySample,
  EmptyProfile,
  EmptySubset,
  EmptyGrid,
  DegenerateConditional,
  UnsupportedRuleForFormat,
  InstanceTooLarge,
  ParseError,
  IoError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

const char* error_kind_name(ErrorKind kind);

}  // namespace spvote
