#pragma once

#include <stdexcept>
#include <string>

namespace cgolab {

/// Root of every numerical or configuration failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CGOLAB_DEFINE_ERROR(Name)            \
  class Name : public Error {                \
   public:                                   \
    explicit Name(const std::string& what)   \
        : Error(#Name ": " + what) {}        \
  }

CGOLAB_DEFINE_ERROR(DomainError);
CGOLAB_DEFINE_ERROR(NoContraction);
CGOLAB_DEFINE_ERROR(SingularFundamental);
CGOLAB_DEFINE_ERROR(UnresolvedOscillation);
CGOLAB_DEFINE_ERROR(DegenerateCritical);
CGOLAB_DEFINE_ERROR(CriticalOnBoundary);
CGOLAB_DEFINE_ERROR(PhaseCriticalOnBoundary);
CGOLAB_DEFINE_ERROR(ZeroEigenvalue);
CGOLAB_DEFINE_ERROR(ProfileViolation);
CGOLAB_DEFINE_ERROR(ConfigError);

#undef CGOLAB_DEFINE_ERROR

}  // namespace cgolab
