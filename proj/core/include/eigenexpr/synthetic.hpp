#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "eigenexpr/expression.hpp"
#include "eigenexpr/image.hpp"
#include "eigenexpr/model.hpp"

namespace eigenexpr::synthetic {

/// Fixed layout of the five regions on the synthetic canvas; each crop is
/// already at canonical size.
CropSet layout();
Dims canvas_dims();

struct Sample {
  Expression expression = Expression::kSurprise;
  GrayImage image;
};

/// One synthetic face: every region holds class-specific vertical stripes
/// (bumps at class-dependent column positions) modulated by row cosines,
/// plus i.i.d. Gaussian pixel noise with standard deviation `noise`.
GrayImage render(Expression e, double noise, std::uint64_t seed);

/// `per_class` samples of each expression, grouped by expression.
std::vector<Sample> make_set(int per_class, double noise, std::uint64_t seed);

/// Writes the samples as plain-text images under `dir` plus a manifest
/// `manifest_name`; returns the manifest path.
std::filesystem::path write_set(const std::vector<Sample>& samples,
                                const std::filesystem::path& dir,
                                const std::string& manifest_name);

TrainingManifest manifest_for(const std::vector<Sample>& samples);
std::vector<GrayImage> images_of(const std::vector<Sample>& samples);

}  // namespace eigenexpr::synthetic
