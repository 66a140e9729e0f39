#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace angles {

// Base of every data error raised by the library. The CLI turns these into
// {code, message, context} JSON and exit status 1.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message,
        std::map<std::string, std::string> context = {})
      : std::runtime_error(message), code_(std::move(code)), context_(std::move(context)) {}

  const std::string& code() const noexcept { return code_; }
  const std::map<std::string, std::string>& context() const noexcept { return context_; }

 private:
  std::string code_;
  std::map<std::string, std::string> context_;
};

#define ANGLES_DEFINE_ERROR(Name)                                              \
  class Name : public Error {                                                  \
   public:                                                                     \
    explicit Name(const std::string& message,                                  \
                  std::map<std::string, std::string> context = {})             \
        : Error(#Name, message, std::move(context)) {}                         \
  };

ANGLES_DEFINE_ERROR(FieldConfigError)
ANGLES_DEFINE_ERROR(ArithmeticOverflow)
ANGLES_DEFINE_ERROR(UnsupportedField)
ANGLES_DEFINE_ERROR(GeneratorNotFound)
ANGLES_DEFINE_ERROR(ZeroElement)
ANGLES_DEFINE_ERROR(SingularLattice)
ANGLES_DEFINE_ERROR(ParamViolation)
ANGLES_DEFINE_ERROR(NotEquivalent)
ANGLES_DEFINE_ERROR(OverlapError)
ANGLES_DEFINE_ERROR(DomainError)
ANGLES_DEFINE_ERROR(InputError)

#undef ANGLES_DEFINE_ERROR

}  // namespace angles
