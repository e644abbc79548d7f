#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mems {

enum class ErrorKind {
  DimensionMismatch,
  ZeroNorm,
  InvalidSize,
  DigitOutOfRange,
  SubsetInvalid,
  NotHermitian,
  NotPSD,
  NotNormalized,
  SizeOutOfRange,
  ShapeMismatch,
  WeightInvalid,
  ConfigInvalid,
  ParseError,
  IoError,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroNorm: return "ZeroNorm";
    case ErrorKind::InvalidSize: return "InvalidSize";
    case ErrorKind::DigitOutOfRange: return "DigitOutOfRange";
    case ErrorKind::SubsetInvalid: return "SubsetInvalid";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::SizeOutOfRange: return "SizeOutOfRange";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::WeightInvalid: return "WeightInvalid";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

// Every failure raised by the library carries a kind so front ends can map it
// to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace mems
