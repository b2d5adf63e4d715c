#pragma once

#include <stdexcept>
#include <string>

namespace jacobi {

// Every failure raised by the library derives from Error and carries a stable
// name (the CLI prints it verbatim).
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define JACOBI_DEFINE_ERROR(Type)                                  \
  class Type : public Error {                                      \
   public:                                                         \
    explicit Type(const std::string& what) : Error(#Type, what) {} \
  };

// scalar_kernel
JACOBI_DEFINE_ERROR(PoleError)
JACOBI_DEFINE_ERROR(UndefinedError)
// hypergeom
JACOBI_DEFINE_ERROR(DivergentError)
JACOBI_DEFINE_ERROR(ContinuationRequired)
JACOBI_DEFINE_ERROR(LowerPoleError)
JACOBI_DEFINE_ERROR(CutError)
JACOBI_DEFINE_ERROR(NoConvergentPath)
JACOBI_DEFINE_ERROR(ZeroArgument)
// jacobi_first / jacobi_second
JACOBI_DEFINE_ERROR(DomainCutError)
JACOBI_DEFINE_ERROR(ValidityError)
JACOBI_DEFINE_ERROR(ConvergenceConstraintError)
JACOBI_DEFINE_ERROR(CoefficientZeroError)
// quadrature
JACOBI_DEFINE_ERROR(ExponentError)
JACOBI_DEFINE_ERROR(NonConvergence)
JACOBI_DEFINE_ERROR(DecayCheckFailed)
JACOBI_DEFINE_ERROR(OrderCapExceeded)
JACOBI_DEFINE_ERROR(CutIntersection)
// identity_engine
JACOBI_DEFINE_ERROR(ConstraintViolation)
JACOBI_DEFINE_ERROR(EmptyAdmissibleSet)
JACOBI_DEFINE_ERROR(UnknownIdentity)
JACOBI_DEFINE_ERROR(InvalidArgument)
// fixtures / cli
JACOBI_DEFINE_ERROR(ParseError)

#undef JACOBI_DEFINE_ERROR

}  // namespace jacobi
