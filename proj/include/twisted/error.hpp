#pragma once

#include <stdexcept>
#include <string>

namespace twisted {

enum class ErrorKind {
  UnsupportedFamily,
  DimensionMismatch,
  Overflow,
  ProjectionFailed,
  GroupMismatch,
  InvalidAutomorphism,
  DifferentialNotInAlgebra,
  OrderUndetermined,
  IllConditioned,
  GenericityFailure,
  WeightReconstructionFailed,
  EnumerationTooLarge,
  UnsupportedKind,
  ClosureExplosion,
  NotOneSemisimple,
  OrderMismatch,
  InvalidArgument,
  ConfigError,
  UnknownSuite,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace twisted
