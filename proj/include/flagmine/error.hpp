#pragma once

#include <stdexcept>
#include <string>

namespace flagmine {

// Base of every library error. `code()` is a stable machine-readable name
// used by the CLI error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define FLAGMINE_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(#Name, what) {}   \
  };

FLAGMINE_DEFINE_ERROR(NonPositiveEntry)
FLAGMINE_DEFINE_ERROR(InvalidPsi)
FLAGMINE_DEFINE_ERROR(IndexOutOfRange)
FLAGMINE_DEFINE_ERROR(EmptyAlignment)
FLAGMINE_DEFINE_ERROR(TooFewColumns)
FLAGMINE_DEFINE_ERROR(EmptyRowOrColumn)
FLAGMINE_DEFINE_ERROR(TooLarge)
FLAGMINE_DEFINE_ERROR(CapExceeded)
FLAGMINE_DEFINE_ERROR(ConfigError)
FLAGMINE_DEFINE_ERROR(RowSetMismatch)
FLAGMINE_DEFINE_ERROR(InfeasiblePlant)
FLAGMINE_DEFINE_ERROR(BothEmpty)
FLAGMINE_DEFINE_ERROR(ParseError)
FLAGMINE_DEFINE_ERROR(IoError)

#undef FLAGMINE_DEFINE_ERROR

}  // namespace flagmine
