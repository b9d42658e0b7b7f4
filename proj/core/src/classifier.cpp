#include "eigenexpr/classifier.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "eigenexpr/error.hpp"
#include "eigenexpr/file_util.hpp"
#include "eigenexpr/parallel.hpp"

namespace eigenexpr {

int VoteTable::region_count(RegionKind r, Expression e) const {
  for (const auto& rv : regions) {
    if (rv.region == r) {
      int n = 0;
      for (Expression w : rv.winners) n += w == e;
      return n;
    }
  }
  return 0;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::kShape, "euclidean_distance of vectors with lengths " +
                                       std::to_string(a.size()) + " and " +
                                       std::to_string(b.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = b[i] - a[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

EDMatrix region_ed_matrix(const EigenBasis& test, const ExpressionModel& model, RegionKind region) {
  if (test.region != region) {
    throw Error(ErrorKind::kShape, "test basis is " + std::string(region_key(test.region)) +
                                       ", expected " + std::string(region_key(region)));
  }
  EDMatrix out;
  out.region = region;
  for (Expression e : kAllExpressions) {
    const EigenBasis& ref = model.basis(e, region);
    for (std::size_t k = 0; k < kBasisSize; ++k) {
      out.at(e, k) = euclidean_distance(test.pairs[k].vector, ref.pairs[k].vector);
    }
  }
  return out;
}

RegionWinners region_votes(const EDMatrix& ed) {
  RegionWinners winners{};
  for (std::size_t k = 0; k < kBasisSize; ++k) {
    Expression best = kAllExpressions.front();
    for (Expression e : kAllExpressions) {
      if (ed.at(e, k) < ed.at(best, k)) best = e;
    }
    winners[k] = best;
  }
  return winners;
}

Decision aggregate(std::span<const RegionVotes> per_region, std::span<const EDMatrix> ed_matrices,
                   RegionCoverage coverage) {
  if (per_region.empty()) throw Error(ErrorKind::kCoverage, "no regions to aggregate");
  std::array<const EDMatrix*, kRegionCount> ed_for{};
  for (const auto& ed : ed_matrices) ed_for[index_of(ed.region)] = &ed;

  std::array<bool, kRegionCount> seen{};
  Decision out;
  for (const auto& rv : per_region) {
    if (seen[index_of(rv.region)]) {
      throw Error(ErrorKind::kCoverage, "region '" + std::string(region_key(rv.region)) +
                                            "' appears twice");
    }
    if (ed_for[index_of(rv.region)] == nullptr) {
      throw Error(ErrorKind::kCoverage,
                  "no distance matrix for region '" + std::string(region_key(rv.region)) + "'");
    }
    seen[index_of(rv.region)] = true;
    for (Expression w : rv.winners) ++out.votes.totals[index_of(w)];
    out.votes.regions.push_back(rv);
  }
  if (coverage == RegionCoverage::kAllRegions) {
    for (RegionKind r : kAllRegions) {
      if (!seen[index_of(r)]) {
        throw Error(ErrorKind::kCoverage, "missing region '" + std::string(region_key(r)) + "'");
      }
    }
  }

  const int top = *std::max_element(out.votes.totals.begin(), out.votes.totals.end());
  std::vector<Expression> leaders;
  for (Expression e : kAllExpressions) {
    if (out.votes.total(e) == top) leaders.push_back(e);
  }
  out.decided = leaders.front();
  out.tie_broken = leaders.size() > 1;
  if (out.tie_broken) {
    double best_sum = std::numeric_limits<double>::infinity();
    for (Expression e : leaders) {
      double sum = 0.0;
      for (const auto& rv : per_region) {
        const EDMatrix& ed = *ed_for[index_of(rv.region)];
        for (std::size_t k = 0; k < kBasisSize; ++k) {
          if (rv.winners[k] == e) sum += ed.at(e, k);
        }
      }
      if (sum < best_sum) {
        best_sum = sum;
        out.decided = e;
      }
    }
  }
  return out;
}

ClassificationResult classify_distances(std::vector<EDMatrix> ed_matrices) {
  std::sort(ed_matrices.begin(), ed_matrices.end(), [](const EDMatrix& a, const EDMatrix& b) {
    return index_of(a.region) < index_of(b.region);
  });
  std::vector<RegionVotes> votes;
  votes.reserve(ed_matrices.size());
  for (const auto& ed : ed_matrices) {
    for (const auto& row : ed.ed) {
      for (double d : row) {
        if (!(d >= 0.0) || !std::isfinite(d)) {
          throw Error(ErrorKind::kParameter, std::string(region_key(ed.region)) +
                                                 ": distances must be finite and non-negative");
        }
      }
    }
    votes.push_back({ed.region, region_votes(ed)});
  }
  Decision decision = aggregate(votes, ed_matrices);
  ClassificationResult result;
  result.decided = decision.decided;
  result.votes = std::move(decision.votes);
  result.ed_matrices = std::move(ed_matrices);
  result.tie_broken = decision.tie_broken;
  return result;
}

std::array<EigenBasis, kRegionCount> extract_regions(const GrayImage& image, const CropSet& crops) {
  std::array<EigenBasis, kRegionCount> bases;
  parallel_for(kRegionCount, [&](std::size_t i) {
    const RegionKind r = kAllRegions[i];
    try {
      bases[i] = extract_basis(prepare_region(image, crops[i], r), r);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kBounds) throw;  // already carries the region
      throw e.with_context(region_key(r));
    }
  });
  return bases;
}

ClassificationResult classify(const GrayImage& image, const CropSet& crops,
                              const ExpressionModel& model) {
  const auto bases = extract_regions(image, crops);
  std::vector<EDMatrix> eds;
  eds.reserve(kRegionCount);
  for (RegionKind r : kAllRegions) eds.push_back(region_ed_matrix(bases[index_of(r)], model, r));
  return classify_distances(std::move(eds));
}

EDMatrix parse_ed_fixture(std::string_view text, RegionKind region) {
  EDMatrix out;
  out.region = region;
  std::size_t row = 0;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string token;
    if (!(tokens >> token) || token.front() == '#') continue;
    const std::string where =
        std::string(region_key(region)) + " fixture line " + std::to_string(line_no);
    if (row >= kExpressionCount) throw Error(ErrorKind::kFormat, where + ": more than 6 rows");
    const Expression expected = kAllExpressions[row];

    std::vector<std::string> fields;
    do fields.push_back(token);
    while (tokens >> token);
    std::size_t first = 0;
    if (const auto e = parse_expression(fields.front())) {
      if (*e != expected) {
        throw Error(ErrorKind::kFormat, where + ": expected row '" +
                                            std::string(expression_name(expected)) + "'");
      }
      first = 1;
    }
    if (fields.size() - first != kBasisSize) {
      throw Error(ErrorKind::kFormat, where + ": expected " + std::to_string(kBasisSize) +
                                          " distances");
    }
    for (std::size_t k = 0; k < kBasisSize; ++k) {
      const std::string& f = fields[first + k];
      double value = 0.0;
      auto [end, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
      if (ec != std::errc() || end != f.data() + f.size() || !std::isfinite(value) || value < 0.0) {
        throw Error(ErrorKind::kFormat, where + ": bad distance '" + f + "'");
      }
      out.at(expected, k) = value;
    }
    ++row;
  }
  if (row != kExpressionCount) {
    throw Error(ErrorKind::kFormat, std::string(region_key(region)) + " fixture has " +
                                        std::to_string(row) + " rows, expected 6");
  }
  return out;
}

std::string format_ed_fixture(const EDMatrix& ed) {
  std::string out = "# " + std::string(region_label(ed.region)) + ": ED1 .. ED5\n";
  char buf[32];
  for (Expression e : kAllExpressions) {
    out += expression_name(e);
    for (std::size_t k = 0; k < kBasisSize; ++k) {
      auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), ed.at(e, k));
      out += ' ';
      out.append(buf, end);
    }
    out += '\n';
  }
  return out;
}

std::vector<EDMatrix> load_ed_fixtures(const std::filesystem::path& dir) {
  std::vector<EDMatrix> out;
  for (RegionKind r : kAllRegions) {
    const auto path = dir / (std::string(region_key(r)) + ".txt");
    if (!std::filesystem::exists(path)) {
      throw Error(ErrorKind::kCoverage, "missing replay fixture " + path.string());
    }
    try {
      out.push_back(parse_ed_fixture(read_file(path), r));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kIo) throw;
      throw e.with_context(path.string());
    }
  }
  return out;
}

}  // namespace eigenexpr
