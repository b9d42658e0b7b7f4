#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eigenexpr/eigenfeatures.hpp"
#include "eigenexpr/expression.hpp"
#include "eigenexpr/model.hpp"

namespace eigenexpr {

/// Distances between the test eigenvectors of one region and every
/// expression's reference eigenvectors: ed[e][k] compares test vector k with
/// expression e's vector k.
struct EDMatrix {
  RegionKind region = RegionKind::kLeftEye;
  std::array<std::array<double, kBasisSize>, kExpressionCount> ed{};

  double at(Expression e, std::size_t k) const { return ed[index_of(e)][k]; }
  double& at(Expression e, std::size_t k) { return ed[index_of(e)][k]; }

  friend bool operator==(const EDMatrix&, const EDMatrix&) = default;
};

using RegionWinners = std::array<Expression, kBasisSize>;

struct RegionVotes {
  RegionKind region = RegionKind::kLeftEye;
  RegionWinners winners{};
};

struct VoteTable {
  std::vector<RegionVotes> regions;
  std::array<int, kExpressionCount> totals{};

  int total(Expression e) const { return totals[index_of(e)]; }
  /// Votes one region gave to `e`.
  int region_count(RegionKind r, Expression e) const;
};

struct Decision {
  VoteTable votes;
  Expression decided = Expression::kSurprise;
  /// Set whenever more than one expression shared the top vote total.
  bool tie_broken = false;
};

struct ClassificationResult {
  Expression decided = Expression::kSurprise;
  VoteTable votes;
  std::vector<EDMatrix> ed_matrices;
  bool tie_broken = false;
};

/// Throws kShape on a length mismatch.
double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// Throws kShape when test.region != region.
EDMatrix region_ed_matrix(const EigenBasis& test, const ExpressionModel& model, RegionKind region);

/// Index-paired argmin: winner[k] is the expression with the smallest
/// ed[.][k]; equal distances go to the earlier expression.
RegionWinners region_votes(const EDMatrix& ed);

enum class RegionCoverage { kAllRegions, kAnySubset };

/// Counts the winners over all supplied regions and decides.
///
/// The top vote total wins. Equal totals go to the expression whose winning
/// cells have the smallest summed distance, then to the earlier expression.
/// `ed_matrices` must hold one matrix per region in `per_region`.
///
/// Throws kCoverage when `per_region` is empty, repeats a region, or (under
/// kAllRegions) misses one.
Decision aggregate(std::span<const RegionVotes> per_region, std::span<const EDMatrix> ed_matrices,
                   RegionCoverage coverage = RegionCoverage::kAllRegions);

/// Voting on raw distance grids, bypassing feature extraction.
ClassificationResult classify_distances(std::vector<EDMatrix> ed_matrices);

/// Test-side feature extraction for all five regions.
std::array<EigenBasis, kRegionCount> extract_regions(const GrayImage& image, const CropSet& crops);

/// Full pipeline: crop, resize, extract, compare, vote, aggregate.
ClassificationResult classify(const GrayImage& image, const CropSet& crops,
                              const ExpressionModel& model);

/// Replay fixture: six non-empty lines, one per expression in canonical
/// order, each with five distances, optionally led by the expression name.
/// Blank lines and lines starting with '#' are ignored.
EDMatrix parse_ed_fixture(std::string_view text, RegionKind region);
std::string format_ed_fixture(const EDMatrix& ed);

/// Reads `<region_key>.txt` for every region found in `dir`; all five must
/// exist.
std::vector<EDMatrix> load_ed_fixtures(const std::filesystem::path& dir);

}  // namespace eigenexpr
