#include "eigenexpr/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "eigenexpr/error.hpp"
#include "eigenexpr/image_io.hpp"

namespace eigenexpr {
namespace {

using json = nlohmann::ordered_json;

std::string path_key(const std::filesystem::path& p) {
  std::error_code ec;
  auto canonical = std::filesystem::weakly_canonical(p, ec);
  return ec ? p.lexically_normal().string() : canonical.string();
}

OverlapMode overlap_between(const TrainingManifest& train, const TrainingManifest& test) {
  std::set<std::string> seen;
  for (const auto& e : train.entries) seen.insert(path_key(e.image));
  for (const auto& e : test.entries) {
    if (seen.count(path_key(e.image))) return OverlapMode::kOverlapping;
  }
  return OverlapMode::kDisjoint;
}

std::string percent(std::optional<double> rate) {
  if (!rate) return "-";
  const double pct = *rate * 100.0;
  std::ostringstream out;
  if (std::abs(pct - std::round(pct)) < 1e-9) {
    out << static_cast<long>(std::round(pct)) << "%";
  } else {
    out << std::fixed << std::setprecision(1) << pct << "%";
  }
  return out.str();
}

Expression expression_from_json(const json& j) {
  const auto e = parse_expression(j.get<std::string>());
  if (!e) throw Error(ErrorKind::kFormat, "report: unknown expression");
  return *e;
}

}  // namespace

std::optional<double> ExpressionTally::success_rate() const {
  if (tested == 0) return std::nullopt;
  return static_cast<double>(correct) / static_cast<double>(tested);
}

std::string_view overlap_name(OverlapMode mode) {
  switch (mode) {
    case OverlapMode::kUnknown: return "unknown";
    case OverlapMode::kDisjoint: return "disjoint";
    case OverlapMode::kOverlapping: return "overlapping";
  }
  return "unknown";
}

int EvalReport::total_tested() const {
  int n = 0;
  for (const auto& t : per_expression) n += t.tested;
  return n;
}

std::optional<double> EvalReport::overall_rate() const {
  int correct = 0;
  for (const auto& t : per_expression) correct += t.correct;
  const int tested = total_tested();
  if (tested == 0) return std::nullopt;
  return static_cast<double>(correct) / static_cast<double>(tested);
}

EvalReport evaluate(const ExpressionModel& model, const TrainingManifest& manifest,
                    const EvalOptions& options) {
  EvalReport report;
  if (options.training != nullptr) report.overlap = overlap_between(*options.training, manifest);

  double total_seconds = 0.0;
  int timed = 0;
  for (const auto& entry : manifest.entries) {
    EntryOutcome outcome;
    outcome.image = entry.image.string();
    outcome.truth = entry.expression;
    try {
      const GrayImage image = load_image(entry.image);
      const auto start = std::chrono::steady_clock::now();
      const ClassificationResult result = classify(image, entry.crops, model);
      const auto stop = std::chrono::steady_clock::now();
      outcome.seconds = std::chrono::duration<double>(stop - start).count();
      outcome.decided = result.decided;
      outcome.tie_broken = result.tie_broken;
    } catch (const Error& e) {
      outcome.error = e.what();
    }

    if (outcome.decided) {
      auto& tally = report.per_expression[index_of(entry.expression)];
      ++tally.tested;
      tally.correct += *outcome.decided == entry.expression;
      ++report.confusion[index_of(entry.expression)][index_of(*outcome.decided)];
      report.tie_count += outcome.tie_broken;
      total_seconds += outcome.seconds;
      report.max_classify_seconds = std::max(report.max_classify_seconds, outcome.seconds);
      ++timed;
    } else {
      ++report.error_count;
    }
    report.entries.push_back(std::move(outcome));
  }
  if (timed > 0) report.mean_classify_seconds = total_seconds / timed;
  return report;
}

std::string render_text(const EvalReport& r) {
  std::ostringstream out;
  out << std::left << std::setw(12) << "Expression" << std::right << std::setw(32)
      << "Number of images experimented" << std::setw(32) << "Number of correct recognition"
      << std::setw(14) << "Success rate" << "\n";
  for (Expression e : kAllExpressions) {
    const auto& t = r.per_expression[index_of(e)];
    out << std::left << std::setw(12) << expression_name(e) << std::right << std::setw(32)
        << t.tested << std::setw(32) << t.correct << std::setw(14) << percent(t.success_rate())
        << "\n";
  }
  int correct = 0;
  for (const auto& t : r.per_expression) correct += t.correct;
  out << std::left << std::setw(12) << "Overall" << std::right << std::setw(32) << r.total_tested()
      << std::setw(32) << correct << std::setw(14) << percent(r.overall_rate()) << "\n\n";

  out << "Confusion matrix (rows: true, columns: decided)\n" << std::left << std::setw(12) << "";
  for (Expression e : kAllExpressions) out << std::right << std::setw(9) << expression_name(e);
  out << "\n";
  for (Expression t : kAllExpressions) {
    out << std::left << std::setw(12) << expression_name(t);
    for (Expression d : kAllExpressions) {
      out << std::right << std::setw(9) << r.confusion[index_of(t)][index_of(d)];
    }
    out << "\n";
  }
  out << "\nMean classification time: " << std::fixed << std::setprecision(4)
      << r.mean_classify_seconds << " s (max " << r.max_classify_seconds << " s)\n";
  out << "Vote ties broken: " << r.tie_count << "\n";
  out << "Entries failed: " << r.error_count << "\n";
  out << "Train/test overlap: " << overlap_name(r.overlap) << "\n";
  for (const auto& e : r.entries) {
    if (!e.error.empty()) out << "  error: " << e.error << "\n";
  }
  return out.str();
}

std::string render_json(const EvalReport& r) {
  json doc;
  json per = json::array();
  for (Expression e : kAllExpressions) {
    const auto& t = r.per_expression[index_of(e)];
    json row;
    row["expression"] = expression_name(e);
    row["tested"] = t.tested;
    row["correct"] = t.correct;
    const auto rate = t.success_rate();
    row["success_rate"] = rate ? json(*rate) : json(nullptr);
    per.push_back(std::move(row));
  }
  doc["per_expression"] = std::move(per);
  const auto overall = r.overall_rate();
  doc["overall_rate"] = overall ? json(*overall) : json(nullptr);
  doc["confusion"] = r.confusion;
  doc["tie_count"] = r.tie_count;
  doc["error_count"] = r.error_count;
  doc["mean_classify_seconds"] = r.mean_classify_seconds;
  doc["max_classify_seconds"] = r.max_classify_seconds;
  doc["overlap"] = overlap_name(r.overlap);
  json entries = json::array();
  for (const auto& e : r.entries) {
    json row;
    row["image"] = e.image;
    row["truth"] = expression_name(e.truth);
    row["decided"] = e.decided ? json(expression_name(*e.decided)) : json(nullptr);
    row["tie_broken"] = e.tie_broken;
    row["seconds"] = e.seconds;
    if (!e.error.empty()) row["error"] = e.error;
    entries.push_back(std::move(row));
  }
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

EvalReport parse_report_json(std::string_view text) {
  EvalReport r;
  try {
    const json doc = json::parse(text);
    const json& per = doc.at("per_expression");
    if (per.size() != kExpressionCount) throw Error(ErrorKind::kFormat, "report: need 6 rows");
    for (const json& row : per) {
      auto& t = r.per_expression[index_of(expression_from_json(row.at("expression")))];
      t.tested = row.at("tested").get<int>();
      t.correct = row.at("correct").get<int>();
    }
    r.confusion = doc.at("confusion").get<decltype(r.confusion)>();
    r.tie_count = doc.at("tie_count").get<int>();
    r.error_count = doc.at("error_count").get<int>();
    r.mean_classify_seconds = doc.at("mean_classify_seconds").get<double>();
    r.max_classify_seconds = doc.at("max_classify_seconds").get<double>();
    const auto overlap = doc.at("overlap").get<std::string>();
    for (OverlapMode m : {OverlapMode::kUnknown, OverlapMode::kDisjoint, OverlapMode::kOverlapping}) {
      if (overlap_name(m) == overlap) r.overlap = m;
    }
    for (const json& row : doc.at("entries")) {
      EntryOutcome e;
      e.image = row.at("image").get<std::string>();
      e.truth = expression_from_json(row.at("truth"));
      if (!row.at("decided").is_null()) e.decided = expression_from_json(row.at("decided"));
      e.tie_broken = row.at("tie_broken").get<bool>();
      e.seconds = row.at("seconds").get<double>();
      if (row.contains("error")) e.error = row.at("error").get<std::string>();
      r.entries.push_back(std::move(e));
    }
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::kFormat, std::string("report: ") + ex.what());
  }
  return r;
}

bool same_results(const EvalReport& a, const EvalReport& b) {
  if (a.confusion != b.confusion || a.tie_count != b.tie_count ||
      a.error_count != b.error_count || a.overlap != b.overlap ||
      a.entries.size() != b.entries.size()) {
    return false;
  }
  for (std::size_t i = 0; i < kExpressionCount; ++i) {
    if (a.per_expression[i].tested != b.per_expression[i].tested ||
        a.per_expression[i].correct != b.per_expression[i].correct) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    const auto& x = a.entries[i];
    const auto& y = b.entries[i];
    if (x.image != y.image || x.truth != y.truth || x.decided != y.decided ||
        x.tie_broken != y.tie_broken || x.error != y.error) {
      return false;
    }
  }
  return true;
}

}  // namespace eigenexpr
