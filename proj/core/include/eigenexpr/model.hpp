#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "eigenexpr/eigenfeatures.hpp"
#include "eigenexpr/expression.hpp"
#include "eigenexpr/image.hpp"

namespace eigenexpr {

struct ManifestEntry {
  std::filesystem::path image;
  Expression expression = Expression::kSurprise;
  CropSet crops{};
};

struct TrainingManifest {
  std::vector<ManifestEntry> entries;
};

/// Parses a manifest document:
///
///   {"entries": [{"image": "faces/s01.png", "expression": "Sad",
///                 "crops": {"left_eye": [x, y, w, h], ...}}]}
///
/// A bare top-level array of entries is accepted too. Rectangles may also
/// be objects {"x":..,"y":..,"w":..,"h":..}. Relative image paths resolve
/// against `base_dir`.
TrainingManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir);
TrainingManifest load_manifest(const std::filesystem::path& path);

/// Parses the five crop rectangles, either a bare region-keyed object or
/// one wrapped as {"crops": {...}}.
CropSet parse_crops(std::string_view text);
CropSet load_crops(const std::filesystem::path& path);

inline constexpr std::string_view kModelVersion = "eigenexpr-model/1";

/// Reference bases for every (expression, region) cell. Construction
/// validates completeness and every basis.
class ExpressionModel {
 public:
  using Grid = std::array<std::array<EigenBasis, kRegionCount>, kExpressionCount>;

  /// Throws kFormat when a cell is tagged with the wrong region or breaks an
  /// EigenBasis invariant.
  explicit ExpressionModel(Grid bases);

  const EigenBasis& basis(Expression e, RegionKind r) const {
    return bases_[index_of(e)][index_of(r)];
  }
  const Grid& bases() const noexcept { return bases_; }

  friend bool operator==(const ExpressionModel&, const ExpressionModel&) = default;

 private:
  Grid bases_;
};

/// Pixel-wise mean of `images`, summed in a content-sorted order so the
/// result does not depend on the order of the input.
Matrix mean_image(std::vector<GrayImage> images);

/// Builds the model: for every (expression, region) cell the region is cut
/// from each training image of that expression, resized to canonical dims,
/// averaged pixel-wise, and the mean image's basis becomes the reference.
///
/// Throws kCoverage naming expressions without any entry, kIo/kFormat with
/// the image path, kBounds for bad crops and kDegenerateRank with the
/// (expression, region) context.
ExpressionModel train(const TrainingManifest& manifest);

/// Same, from images that are already decoded (entries[i] pairs with
/// images[i]; the path field is ignored).
ExpressionModel train(const TrainingManifest& manifest, const std::vector<GrayImage>& images);

std::string serialize_model(const ExpressionModel& model);
/// Throws kFormat on a wrong version tag, truncation, or any invariant
/// violation; never returns a partial model.
ExpressionModel deserialize_model(std::string_view text);

/// Written atomically (temp file then rename).
void save_model(const ExpressionModel& model, const std::filesystem::path& path);
ExpressionModel load_model(const std::filesystem::path& path);

}  // namespace eigenexpr
