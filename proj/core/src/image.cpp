#include "eigenexpr/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eigenexpr/error.hpp"

namespace eigenexpr {
namespace {

void check_unit_range(std::span<const double> values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorKind::kParameter, std::string(what) + " value " + std::to_string(v) +
                                             " at index " + std::to_string(i) +
                                             " is outside [0, 1]");
    }
  }
}

std::string describe(const Rect& r) {
  return "rect (x=" + std::to_string(r.x) + ", y=" + std::to_string(r.y) +
         ", w=" + std::to_string(r.w) + ", h=" + std::to_string(r.h) + ")";
}

}  // namespace

GrayImage::GrayImage(std::size_t height, std::size_t width, double fill)
    : height_(height), width_(width), pixels_(height * width, fill) {
  check_unit_range(std::span<const double>(&fill, 1), "pixel");
}

GrayImage::GrayImage(std::size_t height, std::size_t width, std::vector<double> pixels)
    : height_(height), width_(width), pixels_(std::move(pixels)) {
  if (pixels_.size() != height_ * width_) {
    throw Error(ErrorKind::kDimension, "image has " + std::to_string(pixels_.size()) +
                                           " pixels, expected " + std::to_string(height_) + "x" +
                                           std::to_string(width_));
  }
  check_unit_range(pixels_, "pixel");
}

std::string_view region_key(RegionKind kind) {
  switch (kind) {
    case RegionKind::kLeftEye: return "left_eye";
    case RegionKind::kRightEye: return "right_eye";
    case RegionKind::kNose: return "nose";
    case RegionKind::kLip: return "lip";
    case RegionKind::kNoseLip: return "nose_lip";
  }
  return "?";
}

std::string_view region_label(RegionKind kind) {
  switch (kind) {
    case RegionKind::kLeftEye: return "Left eye";
    case RegionKind::kRightEye: return "Right eye";
    case RegionKind::kNose: return "Nose";
    case RegionKind::kLip: return "Lip";
    case RegionKind::kNoseLip: return "Nose and lip together";
  }
  return "?";
}

std::optional<RegionKind> parse_region(std::string_view key) {
  for (RegionKind kind : kAllRegions) {
    if (region_key(kind) == key) return kind;
  }
  return std::nullopt;
}

GrayImage to_grayscale(const ChannelPlane& r, const ChannelPlane& g, const ChannelPlane& b) {
  const auto same = [](const ChannelPlane& x, const ChannelPlane& y) {
    return x.height == y.height && x.width == y.width && x.values.size() == y.values.size();
  };
  if (!same(r, g) || !same(r, b) || r.values.size() != r.height * r.width) {
    throw Error(ErrorKind::kShape, "channel planes differ in size");
  }
  std::vector<double> out(r.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double rv = r.values[i];
    if (rv == g.values[i] && rv == b.values[i]) {
      // Neutral pixels pass through bit-exactly.
      out[i] = std::clamp(rv, 0.0, 1.0);
      continue;
    }
    const double y = 0.299 * rv + 0.587 * g.values[i] + 0.114 * b.values[i];
    out[i] = std::clamp(y, 0.0, 1.0);
  }
  return GrayImage(r.height, r.width, std::move(out));
}

GrayImage crop(const GrayImage& img, const Rect& rect) {
  const auto width = static_cast<long>(img.width());
  const auto height = static_cast<long>(img.height());
  if (rect.w < 2 || rect.h < 2 || rect.x < 0 || rect.y < 0 || rect.x + rect.w > width ||
      rect.y + rect.h > height) {
    throw Error(ErrorKind::kBounds, describe(rect) + " does not fit inside a " +
                                        std::to_string(height) + "x" + std::to_string(width) +
                                        " image");
  }
  GrayImage out(static_cast<std::size_t>(rect.h), static_cast<std::size_t>(rect.w));
  for (std::size_t i = 0; i < out.height(); ++i) {
    const auto src = img.pixels().begin() +
                     static_cast<std::ptrdiff_t>((static_cast<std::size_t>(rect.y) + i) *
                                                     img.width() +
                                                 static_cast<std::size_t>(rect.x));
    std::copy(src, src + rect.w, &out(i, 0));
  }
  return out;
}

GrayImage crop(const GrayImage& img, const RegionSpec& spec) { return crop(img, spec.rect); }

GrayImage resize(const GrayImage& img, std::size_t target_rows, std::size_t target_cols) {
  if (img.empty()) throw Error(ErrorKind::kShape, "cannot resize an empty image");
  if (target_rows == 0 || target_cols == 0) {
    throw Error(ErrorKind::kParameter, "resize target must be at least 1x1");
  }
  if (target_rows == img.height() && target_cols == img.width()) return img;

  const double scale_y = static_cast<double>(img.height()) / static_cast<double>(target_rows);
  const double scale_x = static_cast<double>(img.width()) / static_cast<double>(target_cols);
  const double max_y = static_cast<double>(img.height() - 1);
  const double max_x = static_cast<double>(img.width() - 1);

  GrayImage out(target_rows, target_cols);
  for (std::size_t i = 0; i < target_rows; ++i) {
    const double sy = std::clamp((static_cast<double>(i) + 0.5) * scale_y - 0.5, 0.0, max_y);
    const auto y0 = static_cast<std::size_t>(sy);
    const std::size_t y1 = std::min(y0 + 1, img.height() - 1);
    const double fy = sy - static_cast<double>(y0);
    for (std::size_t j = 0; j < target_cols; ++j) {
      const double sx = std::clamp((static_cast<double>(j) + 0.5) * scale_x - 0.5, 0.0, max_x);
      const auto x0 = static_cast<std::size_t>(sx);
      const std::size_t x1 = std::min(x0 + 1, img.width() - 1);
      const double fx = sx - static_cast<double>(x0);
      const double top = (1.0 - fx) * img(y0, x0) + fx * img(y0, x1);
      const double bottom = (1.0 - fx) * img(y1, x0) + fx * img(y1, x1);
      out(i, j) = std::clamp((1.0 - fy) * top + fy * bottom, 0.0, 1.0);
    }
  }
  return out;
}

Matrix region_to_matrix(const GrayImage& img) {
  if (img.empty()) throw Error(ErrorKind::kShape, "empty image");
  return Matrix(img.height(), img.width(), img.pixels());
}

GrayImage matrix_to_image(const Matrix& m) {
  return GrayImage(m.rows(), m.cols(), std::vector<double>(m.data().begin(), m.data().end()));
}

GrayImage prepare_region(const GrayImage& img, const Rect& rect, RegionKind kind) {
  const Dims dims = canonical_dims(kind);
  try {
    return resize(crop(img, rect), dims.rows, dims.cols);
  } catch (const Error& e) {
    throw e.with_context(region_key(kind));
  }
}

}  // namespace eigenexpr
