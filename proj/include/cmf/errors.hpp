#ifndef CMF_ERRORS_HPP
#define CMF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cmf {

// Every failure raised by the library derives from Error; the class name
// is the error kind that reports and exit codes are keyed on.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define CMF_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  };

CMF_DEFINE_ERROR(ZeroInverse)
CMF_DEFINE_ERROR(NotPrime)
CMF_DEFINE_ERROR(RingMismatch)
CMF_DEFINE_ERROR(UnknownVariable)
CMF_DEFINE_ERROR(ExponentOverflow)
CMF_DEFINE_ERROR(NotHomogeneous)
CMF_DEFINE_ERROR(DegreeCapExceeded)
CMF_DEFINE_ERROR(StepCapExceeded)
CMF_DEFINE_ERROR(NotMinimal)
CMF_DEFINE_ERROR(NotAnnihilated)
CMF_DEFINE_ERROR(NotPeriodic)
CMF_DEFINE_ERROR(LiftFailure)
CMF_DEFINE_ERROR(NoStabilization)
CMF_DEFINE_ERROR(GenericityFailure)
CMF_DEFINE_ERROR(EmptySystem)
CMF_DEFINE_ERROR(CenterOnSurface)
CMF_DEFINE_ERROR(BadPartition)
CMF_DEFINE_ERROR(NoCubic)
CMF_DEFINE_ERROR(NotLinearMF)
CMF_DEFINE_ERROR(NotUlrich)
CMF_DEFINE_ERROR(DegenerateSections)
CMF_DEFINE_ERROR(ShapeMismatch)
CMF_DEFINE_ERROR(TimeBudgetExceeded)
CMF_DEFINE_ERROR(NotApplicable)
CMF_DEFINE_ERROR(InvalidArgument)
CMF_DEFINE_ERROR(SelfCheckFailed)

#undef CMF_DEFINE_ERROR

// Parse failures carry a 1-based position.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, int line, int column)
      : Error("SyntaxError", what + " at " + std::to_string(line) + ":" +
                                 std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace cmf

#endif  // CMF_ERRORS_HPP
