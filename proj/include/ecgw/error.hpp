#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace ecgw {

enum class ErrorKind {
  NotComposable,
  NotCoproductInclusion,
  MalformedSquare,
  SquareNotGood,
  StarPushoutMissing,
  ChainConditionViolated,
  MalformedComplex,
  NotPullback,
  SquareNotCommuting,
  IndexOutOfWindow,
  NotKernelCokernelPair,
  NotExact,
  ParseError,
  ValidationError,
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotComposable: return "NotComposable";
    case ErrorKind::NotCoproductInclusion: return "NotCoproductInclusion";
    case ErrorKind::MalformedSquare: return "MalformedSquare";
    case ErrorKind::SquareNotGood: return "SquareNotGood";
    case ErrorKind::StarPushoutMissing: return "StarPushoutMissing";
    case ErrorKind::ChainConditionViolated: return "ChainConditionViolated";
    case ErrorKind::MalformedComplex: return "MalformedComplex";
    case ErrorKind::NotPullback: return "NotPullback";
    case ErrorKind::SquareNotCommuting: return "SquareNotCommuting";
    case ErrorKind::IndexOutOfWindow: return "IndexOutOfWindow";
    case ErrorKind::NotKernelCokernelPair: return "NotKernelCokernelPair";
    case ErrorKind::NotExact: return "NotExact";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::optional<int> index = std::nullopt)
      : std::runtime_error(std::string(kind_name(kind)) +
                           (index ? "(" + std::to_string(*index) + ")" : std::string()) +
                           (what.empty() ? "" : ": " + what)),
        kind_(kind),
        index_(index) {}

  ErrorKind kind() const { return kind_; }
  std::optional<int> index() const { return index_; }

 private:
  ErrorKind kind_;
  std::optional<int> index_;
};

}  // namespace ecgw
