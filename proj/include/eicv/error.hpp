#pragma once

#include <stdexcept>
#include <string>

namespace eicv {

enum class ErrorKind {
  kValidation,  // malformed input or violated precondition
  kDuplicate,
  kNotFound,
  kIo,
  kBackend,     // provider or search backend failure
  kNoTweet,     // username resolved to nothing
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace eicv
