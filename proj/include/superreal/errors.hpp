#pragma once

#include <stdexcept>
#include <string>

namespace superreal {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SignatureMismatch : Error {
  using Error::Error;
};
struct CapExceeded : Error {
  using Error::Error;
};
struct NotInvertible : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct ShapeMismatch : Error {
  using Error::Error;
};
struct InvalidMorphism : Error {
  using Error::Error;
};
struct InapplicableDescriptor : Error {
  using Error::Error;
};
struct MembershipViolation : Error {
  using Error::Error;
};
struct ExtractionMismatch : Error {
  using Error::Error;
};
struct InternalInconsistency : Error {
  using Error::Error;
};
struct SamplingFailed : Error {
  using Error::Error;
};
/// Request that cannot be served as stated (CLI exit code 2).
struct UsageError : Error {
  using Error::Error;
};

}  // namespace superreal
