#pragma once

#include <stdexcept>
#include <string>

namespace bucketforge {

enum class ErrorCode {
  kUsage,               // bad arguments or violated precondition
  kParse,               // malformed input text
  kModel,               // well-formed text describing an invalid model
  kImpossibleEvidence,  // P(e) = 0
  kUnsatisfiable,
  kTooLarge,            // enumeration guard exceeded
  kInternal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace bucketforge
