#pragma once

#include <stdexcept>
#include <string>

namespace ordp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define ORDP_DEFINE_ERROR(Name)                                 \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  };

ORDP_DEFINE_ERROR(UnknownVariable)
ORDP_DEFINE_ERROR(NonConfluentPresentation)
ORDP_DEFINE_ERROR(NonTerminatingPresentation)
ORDP_DEFINE_ERROR(RingMismatch)
ORDP_DEFINE_ERROR(DomainError)
ORDP_DEFINE_ERROR(Undecidable)
ORDP_DEFINE_ERROR(ZeroValuation)
ORDP_DEFINE_ERROR(NonIntegral)
ORDP_DEFINE_ERROR(PrecisionExhausted)
ORDP_DEFINE_ERROR(UnsupportedRing)
ORDP_DEFINE_ERROR(InvariantViolation)
ORDP_DEFINE_ERROR(NotACogenerator)
ORDP_DEFINE_ERROR(NonUnitW)
ORDP_DEFINE_ERROR(RelationViolation)
ORDP_DEFINE_ERROR(InvalidValuations)

#undef ORDP_DEFINE_ERROR

}  // namespace ordp
