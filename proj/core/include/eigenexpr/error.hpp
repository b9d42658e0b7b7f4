#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eigenexpr {

enum class ErrorKind {
  kDimension,        // empty or mismatched matrix dimensions
  kShape,            // wrong shape for the operation (non-square, wrong canonical size, ...)
  kDegenerateSample, // too few observations for a sample statistic
  kDegenerateRank,   // fewer than five meaningfully positive eigenvalues
  kBounds,           // crop rectangle outside the source image
  kParameter,        // invalid scalar argument
  kCoverage,         // missing expression or region
  kIo,               // unreadable / unwritable file
  kFormat,           // malformed manifest, fixture, model or report document
};

std::string_view to_string(ErrorKind kind);

/// Base class of every error thrown by the library. The kind lets callers
/// (the CLI in particular) map failures onto exit statuses without string
/// matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Same kind, message prefixed with `context: `.
  Error with_context(std::string_view context) const;

 private:
  ErrorKind kind_;
};

}  // namespace eigenexpr
