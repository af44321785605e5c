#pragma once

#include <stdexcept>
#include <string>

namespace skeinhom {

// Every library failure carries a stable machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define SKEINHOM_ERROR(Name, Code)                                   \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& message) : Error(Code, message) {} \
  };

SKEINHOM_ERROR(InvalidBoundary, "invalid_boundary")
SKEINHOM_ERROR(OpenBoundary, "open_boundary")
SKEINHOM_ERROR(GradingError, "grading")
SKEINHOM_ERROR(InvalidSite, "invalid_site")
SKEINHOM_ERROR(TruncationError, "truncation")
SKEINHOM_ERROR(ChainMapError, "chain_map")
SKEINHOM_ERROR(SpecError, "spec")
SKEINHOM_ERROR(AdmissibilityError, "admissibility")

#undef SKEINHOM_ERROR

}  // namespace skeinhom
