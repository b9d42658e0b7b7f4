#include "eigenexpr/error.hpp"

namespace eigenexpr {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimension: return "dimension error";
    case ErrorKind::kShape: return "shape error";
    case ErrorKind::kDegenerateSample: return "degenerate sample";
    case ErrorKind::kDegenerateRank: return "degenerate rank";
    case ErrorKind::kBounds: return "bounds error";
    case ErrorKind::kParameter: return "parameter error";
    case ErrorKind::kCoverage: return "coverage error";
    case ErrorKind::kIo: return "I/O error";
    case ErrorKind::kFormat: return "format error";
  }
  return "error";
}

Error Error::with_context(std::string_view context) const {
  std::string message(context);
  message += ": ";
  message += what();
  return Error(kind_, message);
}

}  // namespace eigenexpr
