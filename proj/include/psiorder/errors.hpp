#pragma once

#include <stdexcept>
#include <string>

namespace psiorder {

// Base of every recoverable error raised by the library. `kind()` is the
// stable machine-readable name used in CLI error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define PSIORDER_DEFINE_ERROR(Name)                                    \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(#Name, what) {}     \
  }

PSIORDER_DEFINE_ERROR(ParseError);
PSIORDER_DEFINE_ERROR(InvalidArgument);
PSIORDER_DEFINE_ERROR(SourceExhausted);
PSIORDER_DEFINE_ERROR(NotAJumpPoint);
PSIORDER_DEFINE_ERROR(CapExceeded);
PSIORDER_DEFINE_ERROR(IndexOutOfRange);
PSIORDER_DEFINE_ERROR(LengthMismatch);
PSIORDER_DEFINE_ERROR(UnknownLabel);
PSIORDER_DEFINE_ERROR(InfeasibleSchedule);
PSIORDER_DEFINE_ERROR(QuotientUnderflow);
PSIORDER_DEFINE_ERROR(PatternMismatch);
PSIORDER_DEFINE_ERROR(EnumerationInferenceFailed);

#undef PSIORDER_DEFINE_ERROR

// Raised when two brackets still overlap at the refinement limit. Carries the
// pair so callers can report which functions could not be separated.
class ComparisonUndecided : public Error {
 public:
  ComparisonUndecided(std::string first, std::string second, int depth)
      : Error("ComparisonUndecided",
              "cannot separate psi_" + first + " and psi_" + second +
                  " within " + std::to_string(depth) + " refinements"),
        first_(std::move(first)),
        second_(std::move(second)),
        depth_(depth) {}
  const std::string& first() const noexcept { return first_; }
  const std::string& second() const noexcept { return second_; }
  int depth() const noexcept { return depth_; }

 private:
  std::string first_;
  std::string second_;
  int depth_;
};

}  // namespace psiorder
