#pragma once

#include <stdexcept>
#include <string>

namespace cqnd {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define CQND_ERROR(Name)                        \
  struct Name : Error {                         \
    using Error::Error;                         \
  }

CQND_ERROR(NotHermitian);
CQND_ERROR(Singular);
CQND_ERROR(InvalidInterval);
CQND_ERROR(DimensionTooLarge);
CQND_ERROR(SpaceMismatch);
CQND_ERROR(UnknownOutcome);
CQND_ERROR(NoNonnegativeDual);
CQND_ERROR(InfeasibleAlpha);
CQND_ERROR(UnsupportedPriors);
CQND_ERROR(UnsupportedCombination);
CQND_ERROR(SingularAverage);
CQND_ERROR(NoFeasibleConfig);
CQND_ERROR(DegenerateBasis);
CQND_ERROR(DepthExceeded);
CQND_ERROR(InvalidArgument);

#undef CQND_ERROR

}  // namespace cqnd
