#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eigenexpr/classifier.hpp"
#include "eigenexpr/model.hpp"

namespace eigenexpr {

struct ExpressionTally {
  int tested = 0;
  int correct = 0;

  /// Absent when nothing was tested.
  std::optional<double> success_rate() const;
};

struct EntryOutcome {
  std::string image;
  Expression truth = Expression::kSurprise;
  std::optional<Expression> decided;
  bool tie_broken = false;
  double seconds = 0.0;
  /// Set when the entry could not be classified.
  std::string error;
};

enum class OverlapMode { kUnknown, kDisjoint, kOverlapping };

std::string_view overlap_name(OverlapMode mode);

struct EvalReport {
  std::array<ExpressionTally, kExpressionCount> per_expression{};
  /// confusion[truth][decided]
  std::array<std::array<int, kExpressionCount>, kExpressionCount> confusion{};
  std::vector<EntryOutcome> entries;
  int tie_count = 0;
  int error_count = 0;
  double mean_classify_seconds = 0.0;
  double max_classify_seconds = 0.0;
  OverlapMode overlap = OverlapMode::kUnknown;

  std::optional<double> overall_rate() const;
  int total_tested() const;
};

struct EvalOptions {
  /// When given, test entries are compared against it (by image path) to
  /// report whether the sets are disjoint.
  const TrainingManifest* training = nullptr;
};

/// Classifies every entry. An entry that fails (unreadable image, bad crop,
/// degenerate region) is recorded with its error and left out of the
/// tallies; nothing is thrown. Timing covers classification of the decoded
/// image only.
EvalReport evaluate(const ExpressionModel& model, const TrainingManifest& manifest,
                    const EvalOptions& options = {});

/// Success-rate table followed by the confusion matrix.
std::string render_text(const EvalReport& report);
/// JSON document carrying the same numbers.
std::string render_json(const EvalReport& report);
/// Inverse of render_json; throws kFormat.
EvalReport parse_report_json(std::string_view text);

/// Equality ignoring timing fields.
bool same_results(const EvalReport& a, const EvalReport& b);

}  // namespace eigenexpr
