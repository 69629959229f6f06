#pragma once

#include <stdexcept>
#include <string>

namespace ebreak {

// Every failure raised by the library derives from Error, so callers can catch
// one type at an API boundary and still dispatch on the concrete kind.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define EBREAK_DEFINE_ERROR(Name)                  \
  class Name : public Error {                      \
   public:                                         \
    explicit Name(const std::string& what)         \
        : Error(std::string(#Name ": ") + what) {} \
  }

// Argument outside the mathematical domain of an operation.
EBREAK_DEFINE_ERROR(DomainError);

// gaussian-core
EBREAK_DEFINE_ERROR(NonSymmetricError);
EBREAK_DEFINE_ERROR(ComplexSpectrumError);
EBREAK_DEFINE_ERROR(NotSymplecticError);

// environment / propagation
EBREAK_DEFINE_ERROR(UnphysicalEnvError);
EBREAK_DEFINE_ERROR(NotSpecialFamilyError);

// discord
EBREAK_DEFINE_ERROR(SingularConditioningError);

// qudit
EBREAK_DEFINE_ERROR(BadProbabilitiesError);
EBREAK_DEFINE_ERROR(BadSubsystemError);
EBREAK_DEFINE_ERROR(ParamOutOfRangeError);
EBREAK_DEFINE_ERROR(DimensionMismatchError);
EBREAK_DEFINE_ERROR(DesignUnavailableError);
EBREAK_DEFINE_ERROR(NotRandomUnitaryError);
EBREAK_DEFINE_ERROR(InvalidStateError);

// bosonic-twirl
EBREAK_DEFINE_ERROR(NotInvariantError);

// cli: bad flags or flag values
EBREAK_DEFINE_ERROR(UsageError);

#undef EBREAK_DEFINE_ERROR

}  // namespace ebreak
