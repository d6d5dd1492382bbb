#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ipomset {

enum class ErrorKind {
  InvalidInput,
  NotAPartialOrder,
  NotTotal,
  InterfaceViolation,
  NotInterval,
  InterfaceMismatch,
  NotASubset,
  KindMismatch,
  NotCoherent,
  NotApplicable,
  SizeLimitExceeded,
  UnknownCell,
  MissingFace,
  FaceConclistMismatch,
  PrecubicalViolation,
  InvalidPath,
  LabelMismatch,
  UnknownState,
  SyntaxError,
  MixedKindLetter,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NotAPartialOrder: return "NotAPartialOrder";
    case ErrorKind::NotTotal: return "NotTotal";
    case ErrorKind::InterfaceViolation: return "InterfaceViolation";
    case ErrorKind::NotInterval: return "NotInterval";
    case ErrorKind::InterfaceMismatch: return "InterfaceMismatch";
    case ErrorKind::NotASubset: return "NotASubset";
    case ErrorKind::KindMismatch: return "KindMismatch";
    case ErrorKind::NotCoherent: return "NotCoherent";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::UnknownCell: return "UnknownCell";
    case ErrorKind::MissingFace: return "MissingFace";
    case ErrorKind::FaceConclistMismatch: return "FaceConclistMismatch";
    case ErrorKind::PrecubicalViolation: return "PrecubicalViolation";
    case ErrorKind::InvalidPath: return "InvalidPath";
    case ErrorKind::LabelMismatch: return "LabelMismatch";
    case ErrorKind::UnknownState: return "UnknownState";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::MixedKindLetter: return "MixedKindLetter";
  }
  return "Unknown";
}

/// Base class of every error raised by the library. The kind is what the CLI
/// reports in its machine-readable error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct Violation {
  ErrorKind kind;
  std::string detail;
};

/// Raised by the validators; carries every violated axiom, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error(violations.empty() ? ErrorKind::InvalidInput : violations.front().kind,
              summarize(violations)),
        violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  static std::string summarize(const std::vector<Violation>& vs) {
    std::string out;
    for (const auto& v : vs) {
      if (!out.empty()) out += "; ";
      out += std::string(to_string(v.kind)) + " (" + v.detail + ")";
    }
    return out;
  }

  std::vector<Violation> violations_;
};

}  // namespace ipomset
