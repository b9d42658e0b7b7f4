#include "eigenexpr/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <json.hpp>

#include "eigenexpr/file_util.hpp"
#include "eigenexpr/image_io.hpp"

namespace eigenexpr::synthetic {
namespace {

// Stripe amplitudes, strictly decreasing so the eigenvector order is
// well separated from the noise floor.
constexpr std::array<double, kBasisSize> kAmplitudes = {0.38, 0.32, 0.26, 0.21, 0.17};
constexpr std::size_t kSlots = kExpressionCount;

void paint_region(GrayImage& canvas, const Rect& rect, std::size_t region, std::size_t cls) {
  const auto rows = static_cast<std::size_t>(rect.h);
  const auto cols = static_cast<std::size_t>(rect.w);
  const double slot_width = static_cast<double>(cols) / kSlots;
  const double sigma = static_cast<double>(cols) / 16.0;
  for (std::size_t m = 0; m < kBasisSize; ++m) {
    const std::size_t slot = (cls + m + region) % kSlots;
    const double centre = (static_cast<double>(slot) + 0.5) * slot_width;
    for (std::size_t i = 0; i < rows; ++i) {
      const double row_wave = std::cos(std::numbers::pi * static_cast<double>(m + 1) *
                                       (static_cast<double>(i) + 0.5) / static_cast<double>(rows));
      for (std::size_t j = 0; j < cols; ++j) {
        const double d = static_cast<double>(j) - centre;
        const double bump = std::exp(-d * d / (2.0 * sigma * sigma));
        canvas(static_cast<std::size_t>(rect.y) + i, static_cast<std::size_t>(rect.x) + j) +=
            kAmplitudes[m] * row_wave * bump;
      }
    }
  }
}

std::string file_name(Expression e, int n) {
  std::string name(expression_name(e));
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return name + "_" + std::to_string(n) + ".txt";
}

}  // namespace

CropSet layout() {
  CropSet crops{};
  crops[index_of(RegionKind::kLeftEye)] = {0, 0, 40, 40};
  crops[index_of(RegionKind::kRightEye)] = {50, 0, 40, 40};
  crops[index_of(RegionKind::kNose)] = {100, 0, 60, 70};
  crops[index_of(RegionKind::kLip)] = {0, 80, 90, 60};
  crops[index_of(RegionKind::kNoseLip)] = {100, 80, 95, 110};
  return crops;
}

Dims canvas_dims() { return {190, 200}; }

GrayImage render(Expression e, double noise, std::uint64_t seed) {
  const Dims dims = canvas_dims();
  GrayImage canvas(dims.rows, dims.cols, 0.5);
  const CropSet crops = layout();
  for (RegionKind r : kAllRegions) {
    paint_region(canvas, crops[index_of(r)], index_of(r), index_of(e));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, noise);
  std::vector<double> pixels = canvas.pixels();
  for (double& p : pixels) {
    if (noise > 0.0) p += gauss(rng);
    p = std::clamp(p, 0.0, 1.0);
  }
  return GrayImage(dims.rows, dims.cols, std::move(pixels));
}

std::vector<Sample> make_set(int per_class, double noise, std::uint64_t seed) {
  std::mt19937_64 seeds(seed);
  std::vector<Sample> out;
  for (Expression e : kAllExpressions) {
    for (int n = 0; n < per_class; ++n) out.push_back({e, render(e, noise, seeds())});
  }
  return out;
}

TrainingManifest manifest_for(const std::vector<Sample>& samples) {
  TrainingManifest manifest;
  std::array<int, kExpressionCount> counter{};
  for (const auto& s : samples) {
    manifest.entries.push_back(
        {file_name(s.expression, counter[index_of(s.expression)]++), s.expression, layout()});
  }
  return manifest;
}

std::vector<GrayImage> images_of(const std::vector<Sample>& samples) {
  std::vector<GrayImage> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.image);
  return out;
}

std::filesystem::path write_set(const std::vector<Sample>& samples,
                                const std::filesystem::path& dir,
                                const std::string& manifest_name) {
  std::filesystem::create_directories(dir);
  const TrainingManifest manifest = manifest_for(samples);
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& entry = manifest.entries[i];
    save_text_image(samples[i].image, dir / entry.image);
    nlohmann::ordered_json crops;
    for (RegionKind r : kAllRegions) {
      const Rect& rect = entry.crops[index_of(r)];
      crops[std::string(region_key(r))] = {rect.x, rect.y, rect.w, rect.h};
    }
    entries.push_back({{"image", entry.image.string()},
                       {"expression", expression_name(entry.expression)},
                       {"crops", crops}});
  }
  const auto path = dir / manifest_name;
  write_file_atomic(path, nlohmann::ordered_json{{"entries", entries}}.dump(2) + "\n");
  return path;
}

}  // namespace eigenexpr::synthetic
