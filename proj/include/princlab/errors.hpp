#pragma once

#include <stdexcept>
#include <string>

namespace princlab {

// Base class for all errors raised by the library. CLI maps these to exit 2.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CyclicCoversError : Error {
  using Error::Error;
};

// Covers contain a pair already implied by transitivity.
struct NotReducedError : Error {
  using Error::Error;
};

struct UnknownElementError : Error {
  using Error::Error;
};

struct NotALatticeError : Error {
  std::string x, y;
  NotALatticeError(std::string x_, std::string y_, const std::string& what_)
      : Error(what_), x(std::move(x_)), y(std::move(y_)) {}
};

struct NotComparableError : Error {
  using Error::Error;
};

struct NotBoundedError : Error {
  using Error::Error;
};

struct NotDistributiveError : Error {
  using Error::Error;
};

struct NotSectionallyComplementedError : Error {
  using Error::Error;
};

struct NoLargestCollapsedElementError : Error {
  using Error::Error;
};

struct RoleMismatchError : Error {
  using Error::Error;
};

struct NoGadgetFoundError : Error {
  using Error::Error;
};

struct GadgetContractError : Error {
  using Error::Error;
};

struct BoundTooLargeError : Error {
  using Error::Error;
};

struct InvalidCandidateError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace princlab
