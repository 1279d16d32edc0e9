#pragma once

#include <stdexcept>
#include <string>

namespace pagelen {

// Error codes shared across the library. The CLI maps categories to
// process exit codes (usage=1, io=2, data=3, numeric=4).
enum class ErrorCode {
  IoFailure,
  SizesExceedCorpus,
  EmptyCorpus,
  EmptyVocabulary,
  WidthMismatch,
  UnfittedVectorizer,
  SingularSystem,
  RowCapExceeded,
  NonFiniteLoss,
  OobUndefined,
  LengthMismatch,
  R2Undefined,
  GridCapExceeded,
  InvalidConfig,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::SizesExceedCorpus: return "SizesExceedCorpus";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::EmptyVocabulary: return "EmptyVocabulary";
    case ErrorCode::WidthMismatch: return "WidthMismatch";
    case ErrorCode::UnfittedVectorizer: return "UnfittedVectorizer";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::RowCapExceeded: return "RowCapExceeded";
    case ErrorCode::NonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::OobUndefined: return "OobUndefined";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::R2Undefined: return "R2Undefined";
    case ErrorCode::GridCapExceeded: return "GridCapExceeded";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pagelen
