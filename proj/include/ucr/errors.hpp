#pragma once

#include <stdexcept>
#include <string>

namespace ucr {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct NotUnitary : Error {
  NotUnitary(const std::string& what, double residual)
      : Error(what), residual(residual) {}
  double residual;
};

struct IndexOutOfRange : Error {
  using Error::Error;
};

struct TruncationTooSmall : Error {
  using Error::Error;
};

struct MemoryBudgetExceeded : Error {
  using Error::Error;
};

struct RelationMismatch : Error {
  using Error::Error;
};

struct NotInVariety : Error {
  using Error::Error;
};

struct NotInCore : Error {
  using Error::Error;
};

struct NotInterior : Error {
  using Error::Error;
};

struct NotInOpenBall : Error {
  using Error::Error;
};

struct NotInCoreInterior : Error {
  using Error::Error;
};

struct DenominatorVanishes : Error {
  using Error::Error;
};

struct NotIntertwiner : Error {
  using Error::Error;
};

struct WrongDimensions : Error {
  using Error::Error;
};

struct WrongKernelDim : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace ucr
