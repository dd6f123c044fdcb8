#pragma once

#include <stdexcept>
#include <string>

namespace attsp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};
struct NonNegativityViolation : Error {
  using Error::Error;
};
struct DegenerateTopic : Error {
  using Error::Error;
};
struct AllDocumentsEmpty : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct CycleError : Error {
  using Error::Error;
};
struct UnknownCategory : Error {
  using Error::Error;
};
struct UnknownTerm : Error {
  using Error::Error;
};
struct EmptyGroup : Error {
  using Error::Error;
};
struct EmptyGraph : Error {
  using Error::Error;
};
struct DegenerateAttribute : Error {
  using Error::Error;
};
struct InsufficientData : Error {
  using Error::Error;
};

}  // namespace attsp
