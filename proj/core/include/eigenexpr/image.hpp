#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "eigenexpr/matrix.hpp"

namespace eigenexpr {

/// Row-major luminance image with values in [0, 1].
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(std::size_t height, std::size_t width, double fill = 0.0);
  /// Throws kDimension on a size mismatch and kParameter on values outside
  /// [0, 1].
  GrayImage(std::size_t height, std::size_t width, std::vector<double> pixels);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  bool empty() const noexcept { return pixels_.empty(); }

  double operator()(std::size_t r, std::size_t c) const { return pixels_[r * width_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return pixels_[r * width_ + c]; }

  const std::vector<double>& pixels() const noexcept { return pixels_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<double> pixels_;
};

/// One colour channel, row-major, values in [0, 1].
struct ChannelPlane {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<double> values;
};

enum class RegionKind { kLeftEye, kRightEye, kNose, kLip, kNoseLip };

inline constexpr std::size_t kRegionCount = 5;
inline constexpr std::array<RegionKind, kRegionCount> kAllRegions = {
    RegionKind::kLeftEye, RegionKind::kRightEye, RegionKind::kNose, RegionKind::kLip,
    RegionKind::kNoseLip};

struct Dims {
  std::size_t rows = 0;
  std::size_t cols = 0;
  friend bool operator==(const Dims&, const Dims&) = default;
};

/// Size every cropped region is resampled to before feature extraction.
/// Read as rows x cols; the eigenvector length of a region equals `cols`.
constexpr Dims canonical_dims(RegionKind kind) {
  switch (kind) {
    case RegionKind::kLeftEye: return {40, 40};
    case RegionKind::kRightEye: return {40, 40};
    case RegionKind::kNose: return {70, 60};
    case RegionKind::kLip: return {60, 90};
    case RegionKind::kNoseLip: return {110, 95};
  }
  return {};
}

constexpr std::size_t index_of(RegionKind kind) { return static_cast<std::size_t>(kind); }

/// Snake-case key used in manifests, fixtures and model files.
std::string_view region_key(RegionKind kind);
/// Human label, e.g. "Left eye".
std::string_view region_label(RegionKind kind);
std::optional<RegionKind> parse_region(std::string_view key);

struct Rect {
  long x = 0;
  long y = 0;
  long w = 0;
  long h = 0;
  friend bool operator==(const Rect&, const Rect&) = default;
};

struct RegionSpec {
  RegionKind kind = RegionKind::kLeftEye;
  Rect rect;
};

/// Crop rectangles for all five regions, indexed by index_of(RegionKind).
using CropSet = std::array<Rect, kRegionCount>;

/// BT.601 luma, clamped to [0, 1]. Throws kShape on mismatched planes.
GrayImage to_grayscale(const ChannelPlane& r, const ChannelPlane& g, const ChannelPlane& b);

/// Throws kBounds, naming the rectangle and image size, unless the rectangle
/// lies inside the image with w, h >= 2.
GrayImage crop(const GrayImage& img, const Rect& rect);
GrayImage crop(const GrayImage& img, const RegionSpec& spec);

/// Bilinear resampling with edge clamping (pixel-centre alignment).
GrayImage resize(const GrayImage& img, std::size_t target_rows, std::size_t target_cols);

Matrix region_to_matrix(const GrayImage& img);
/// Inverse of region_to_matrix; throws kParameter on values outside [0, 1].
GrayImage matrix_to_image(const Matrix& m);

/// crop followed by resize to the canonical dims of `kind`.
GrayImage prepare_region(const GrayImage& img, const Rect& rect, RegionKind kind);

}  // namespace eigenexpr
