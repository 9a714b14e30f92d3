#ifndef VEEVERIFY_ERROR_HPP
#define VEEVERIFY_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace veeverify {

enum class ErrorKind {
  DivisionByZero,
  InvalidRadicand,
  MixedRadicals,
  ZeroVector,
  CollinearPair,
  NonGenericDirection,
  DimensionMismatch,
  SingularGram,
  NonGenericPoint,
  SamplingExhausted,
  UnsupportedFamily,
  WrongParameterCount,
  InvalidParameter,
  InvalidInput,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::InvalidRadicand: return "InvalidRadicand";
    case ErrorKind::MixedRadicals: return "MixedRadicals";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::CollinearPair: return "CollinearPair";
    case ErrorKind::NonGenericDirection: return "NonGenericDirection";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SingularGram: return "SingularGram";
    case ErrorKind::NonGenericPoint: return "NonGenericPoint";
    case ErrorKind::SamplingExhausted: return "SamplingExhausted";
    case ErrorKind::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorKind::WrongParameterCount: return "WrongParameterCount";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// Every failure the library reports. `indices` carries member indices when
/// the error concerns specific configuration members (e.g. CollinearPair(i, j)).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::vector<std::size_t> indices = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        indices_(std::move(indices)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  ErrorKind kind_;
  std::vector<std::size_t> indices_;
};

}  // namespace veeverify

#endif  // VEEVERIFY_ERROR_HPP
