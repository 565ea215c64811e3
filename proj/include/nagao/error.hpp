#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nagao {

enum class ErrorCode {
  BadTable,
  NotAssociative,
  NoIdentity,
  NoInverse,
  NotSubgroup,
  IndexTooSmall,
  RootGroupTooSmall,
  BadAction,
  BadSchedule,
  UnknownName,
  ParseError,
  NonCanonicalAddress,
  NotInTruncation,
  LevelZeroBase,
  LevelTooHigh,
  LevelMismatch,
  NotSameHorosphere,
  NotInGraph,
  NotLevelPreserving,
  NotIsomorphism,
  TruncationExceeded,
  InputNotLevelPreserving,
  CannotExtendInTruncation,
  TypeMismatch,
  CannotTransportInTruncation,
  NotBiregular,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nagao
