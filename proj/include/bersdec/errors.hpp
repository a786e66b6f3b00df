#pragma once

#include <stdexcept>
#include <string>

namespace bersdec {

enum class ErrorCode {
  NonHyperbolicTrace,
  DegenerateLength,
  DegenerateBound,
  EllipticAxis,
  InvalidLaminarFamily,
  TraceMismatch,
  UnbalancedCut,
  NonSeparatingWord,
  ParseError,
  RangeTooSmall,
  RangeTooLarge,
  NTooLarge,
  NoBalancedCandidate,
  NoValidRootEdge,
  MalformedInstance,
  RestartBudgetExceeded,
  InsertionBoundViolated,
  NoCompletion,
  MergeCountMismatch,
  BoundViolated,
  DomainError,
  ParityInconsistency,
  WrongCurveCount,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonHyperbolicTrace: return "NonHyperbolicTrace";
    case ErrorCode::DegenerateLength: return "DegenerateLength";
    case ErrorCode::DegenerateBound: return "DegenerateBound";
    case ErrorCode::EllipticAxis: return "EllipticAxis";
    case ErrorCode::InvalidLaminarFamily: return "InvalidLaminarFamily";
    case ErrorCode::TraceMismatch: return "TraceMismatch";
    case ErrorCode::UnbalancedCut: return "UnbalancedCut";
    case ErrorCode::NonSeparatingWord: return "NonSeparatingWord";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::RangeTooSmall: return "RangeTooSmall";
    case ErrorCode::RangeTooLarge: return "RangeTooLarge";
    case ErrorCode::NTooLarge: return "NTooLarge";
    case ErrorCode::NoBalancedCandidate: return "NoBalancedCandidate";
    case ErrorCode::NoValidRootEdge: return "NoValidRootEdge";
    case ErrorCode::MalformedInstance: return "MalformedInstance";
    case ErrorCode::RestartBudgetExceeded: return "RestartBudgetExceeded";
    case ErrorCode::InsertionBoundViolated: return "InsertionBoundViolated";
    case ErrorCode::NoCompletion: return "NoCompletion";
    case ErrorCode::MergeCountMismatch: return "MergeCountMismatch";
    case ErrorCode::BoundViolated: return "BoundViolated";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::ParityInconsistency: return "ParityInconsistency";
    case ErrorCode::WrongCurveCount: return "WrongCurveCount";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace bersdec
