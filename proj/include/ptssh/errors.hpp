#pragma once

#include <stdexcept>
#include <string>

namespace ptssh {

/// Base class for all domain errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PTSSH_DEFINE_ERROR(Name)      \
  class Name : public Error {         \
   public:                            \
    using Error::Error;               \
  }

PTSSH_DEFINE_ERROR(NotHermitian);
PTSSH_DEFINE_ERROR(NoConvergence);
PTSSH_DEFINE_ERROR(Overflow);
PTSSH_DEFINE_ERROR(ZeroNorm);
PTSSH_DEFINE_ERROR(DegenerateSpectrum);
PTSSH_DEFINE_ERROR(DegenerateGround);
PTSSH_DEFINE_ERROR(InvalidState);
PTSSH_DEFINE_ERROR(NoDominantMode);
PTSSH_DEFINE_ERROR(DegenerateTop);
PTSSH_DEFINE_ERROR(BoundaryMismatch);
PTSSH_DEFINE_ERROR(BracketFailure);
PTSSH_DEFINE_ERROR(RegimeViolation);
PTSSH_DEFINE_ERROR(MissingAsymptote);
PTSSH_DEFINE_ERROR(TraceTooShort);
PTSSH_DEFINE_ERROR(EmptySeries);

#undef PTSSH_DEFINE_ERROR

}  // namespace ptssh
