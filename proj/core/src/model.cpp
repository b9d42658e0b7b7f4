#include "eigenexpr/model.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include <json.hpp>

#include "eigenexpr/error.hpp"
#include "eigenexpr/file_util.hpp"
#include "eigenexpr/image_io.hpp"
#include "eigenexpr/parallel.hpp"

namespace eigenexpr {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kFormat, std::string(what) + ": " + e.what());
  }
}

Rect parse_rect(const json& j, std::string_view region) {
  const auto fail = [&](const std::string& why) {
    return Error(ErrorKind::kFormat, "crop '" + std::string(region) + "': " + why);
  };
  std::array<long, 4> v{};
  if (j.is_array()) {
    if (j.size() != 4) throw fail("expected [x, y, w, h]");
    for (std::size_t i = 0; i < 4; ++i) {
      if (!j[i].is_number_integer()) throw fail("coordinates must be integers");
      v[i] = j[i].get<long>();
    }
  } else if (j.is_object()) {
    const char* keys[] = {"x", "y", "w", "h"};
    for (std::size_t i = 0; i < 4; ++i) {
      if (!j.contains(keys[i]) || !j[keys[i]].is_number_integer()) {
        throw fail(std::string("missing integer field '") + keys[i] + "'");
      }
      v[i] = j[keys[i]].get<long>();
    }
  } else {
    throw fail("expected an array or object");
  }
  return Rect{v[0], v[1], v[2], v[3]};
}

CropSet parse_crop_object(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::kFormat, "crops must be an object keyed by region");
  std::array<std::optional<Rect>, kRegionCount> found;
  for (const auto& [key, value] : j.items()) {
    const auto region = parse_region(key);
    if (!region) throw Error(ErrorKind::kFormat, "unknown region '" + key + "'");
    found[index_of(*region)] = parse_rect(value, key);
  }
  CropSet crops{};
  for (RegionKind r : kAllRegions) {
    if (!found[index_of(r)]) {
      throw Error(ErrorKind::kCoverage, "crops missing region '" + std::string(region_key(r)) + "'");
    }
    crops[index_of(r)] = *found[index_of(r)];
  }
  return crops;
}

void check_coverage(const TrainingManifest& manifest) {
  std::array<int, kExpressionCount> counts{};
  for (const auto& entry : manifest.entries) ++counts[index_of(entry.expression)];
  std::string missing;
  for (Expression e : kAllExpressions) {
    if (counts[index_of(e)] == 0) {
      if (!missing.empty()) missing += ", ";
      missing += expression_name(e);
    }
  }
  if (!missing.empty()) {
    throw Error(ErrorKind::kCoverage, "no training images for: " + missing);
  }
}

std::string cell_name(Expression e, RegionKind r) {
  return "(" + std::string(expression_name(e)) + ", " + std::string(region_key(r)) + ")";
}

}  // namespace

TrainingManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir) {
  const json doc = parse_json(text, "manifest");
  const json* entries = &doc;
  if (doc.is_object()) {
    if (!doc.contains("entries")) throw Error(ErrorKind::kFormat, "manifest has no 'entries'");
    entries = &doc["entries"];
  }
  if (!entries->is_array()) throw Error(ErrorKind::kFormat, "manifest entries must be an array");

  TrainingManifest manifest;
  for (std::size_t i = 0; i < entries->size(); ++i) {
    const json& e = (*entries)[i];
    const std::string where = "manifest entry " + std::to_string(i);
    try {
      if (!e.is_object()) throw Error(ErrorKind::kFormat, "not an object");
      if (!e.contains("image") || !e["image"].is_string()) {
        throw Error(ErrorKind::kFormat, "missing 'image' path");
      }
      if (!e.contains("expression") || !e["expression"].is_string()) {
        throw Error(ErrorKind::kFormat, "missing 'expression'");
      }
      if (!e.contains("crops")) throw Error(ErrorKind::kFormat, "missing 'crops'");
      const auto name = e["expression"].get<std::string>();
      const auto expression = parse_expression(name);
      if (!expression) throw Error(ErrorKind::kFormat, "unknown expression '" + name + "'");

      ManifestEntry entry;
      entry.image = std::filesystem::path(e["image"].get<std::string>());
      if (entry.image.is_relative() && !base_dir.empty()) entry.image = base_dir / entry.image;
      entry.expression = *expression;
      entry.crops = parse_crop_object(e["crops"]);
      manifest.entries.push_back(std::move(entry));
    } catch (const Error& err) {
      throw err.with_context(where);
    }
  }
  return manifest;
}

TrainingManifest load_manifest(const std::filesystem::path& path) {
  try {
    return parse_manifest(read_file(path), path.parent_path());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kIo) throw;
    throw e.with_context(path.string());
  }
}

CropSet parse_crops(std::string_view text) {
  const json doc = parse_json(text, "crops");
  if (doc.is_object() && doc.contains("crops")) return parse_crop_object(doc["crops"]);
  return parse_crop_object(doc);
}

CropSet load_crops(const std::filesystem::path& path) {
  try {
    return parse_crops(read_file(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kIo) throw;
    throw e.with_context(path.string());
  }
}

ExpressionModel::ExpressionModel(Grid bases) : bases_(std::move(bases)) {
  for (Expression e : kAllExpressions) {
    for (RegionKind r : kAllRegions) {
      const EigenBasis& b = basis(e, r);
      if (b.region != r) {
        throw Error(ErrorKind::kFormat, cell_name(e, r) + " holds a " +
                                            std::string(region_key(b.region)) + " basis");
      }
      try {
        validate_basis(b);
      } catch (const Error& err) {
        throw err.with_context(cell_name(e, r));
      }
    }
  }
}

Matrix mean_image(std::vector<GrayImage> images) {
  if (images.empty()) throw Error(ErrorKind::kCoverage, "mean of zero images");
  const std::size_t rows = images.front().height();
  const std::size_t cols = images.front().width();
  for (const auto& img : images) {
    if (img.height() != rows || img.width() != cols) {
      throw Error(ErrorKind::kShape, "mean of images with different sizes");
    }
  }
  std::sort(images.begin(), images.end(),
            [](const GrayImage& a, const GrayImage& b) { return a.pixels() < b.pixels(); });
  // Running mean: identical inputs reproduce themselves exactly.
  std::vector<double> mean = images.front().pixels();
  for (std::size_t k = 1; k < images.size(); ++k) {
    const auto& px = images[k].pixels();
    const double count = static_cast<double>(k + 1);
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += (px[i] - mean[i]) / count;
  }
  return Matrix(rows, cols, std::move(mean));
}

ExpressionModel train(const TrainingManifest& manifest, const std::vector<GrayImage>& images) {
  if (images.size() != manifest.entries.size()) {
    throw Error(ErrorKind::kDimension, "one image per manifest entry required");
  }
  check_coverage(manifest);

  // regions[entry][region]
  std::vector<std::array<GrayImage, kRegionCount>> regions(images.size());
  parallel_for(images.size(), [&](std::size_t i) {
    try {
      for (RegionKind r : kAllRegions) {
        regions[i][index_of(r)] = prepare_region(images[i], manifest.entries[i].crops[index_of(r)], r);
      }
    } catch (const Error& e) {
      throw e.with_context(manifest.entries[i].image.string());
    }
  });

  ExpressionModel::Grid grid;
  parallel_for(kExpressionCount * kRegionCount, [&](std::size_t cell) {
    const Expression e = kAllExpressions[cell / kRegionCount];
    const RegionKind r = kAllRegions[cell % kRegionCount];
    std::vector<GrayImage> members;
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (manifest.entries[i].expression == e) members.push_back(regions[i][index_of(r)]);
    }
    try {
      grid[index_of(e)][index_of(r)] = extract_basis(mean_image(std::move(members)), r);
    } catch (const Error& err) {
      throw err.with_context(cell_name(e, r));
    }
  });
  return ExpressionModel(std::move(grid));
}

ExpressionModel train(const TrainingManifest& manifest) {
  check_coverage(manifest);
  std::vector<GrayImage> images(manifest.entries.size());
  parallel_for(images.size(), [&](std::size_t i) { images[i] = load_image(manifest.entries[i].image); });
  return train(manifest, images);
}

std::string serialize_model(const ExpressionModel& model) {
  ordered_json doc;
  doc["version"] = kModelVersion;
  doc["basis_size"] = kBasisSize;
  ordered_json cells = ordered_json::array();
  for (Expression e : kAllExpressions) {
    for (RegionKind r : kAllRegions) {
      const EigenBasis& b = model.basis(e, r);
      const Dims dims = canonical_dims(r);
      ordered_json cell;
      cell["expression"] = expression_name(e);
      cell["region"] = region_key(r);
      cell["rows"] = dims.rows;
      cell["cols"] = dims.cols;
      ordered_json values = ordered_json::array();
      ordered_json vectors = ordered_json::array();
      for (const EigenPair& p : b.pairs) {
        values.push_back(p.value);
        vectors.push_back(p.vector);
      }
      cell["eigenvalues"] = std::move(values);
      cell["eigenvectors"] = std::move(vectors);
      cells.push_back(std::move(cell));
    }
  }
  doc["cells"] = std::move(cells);
  return doc.dump(1) + "\n";
}

ExpressionModel deserialize_model(std::string_view text) {
  const json doc = parse_json(text, "model");
  const auto fail = [](const std::string& why) { return Error(ErrorKind::kFormat, "model: " + why); };
  if (!doc.is_object() || !doc.contains("version") || !doc["version"].is_string()) {
    throw fail("missing version field");
  }
  const auto version = doc["version"].get<std::string>();
  if (version != kModelVersion) throw fail("unsupported version '" + version + "'");
  if (!doc.contains("basis_size") || doc["basis_size"] != kBasisSize) {
    throw fail("basis_size must be " + std::to_string(kBasisSize));
  }
  if (!doc.contains("cells") || !doc["cells"].is_array()) throw fail("missing cells");
  const json& cells = doc["cells"];
  if (cells.size() != kExpressionCount * kRegionCount) {
    throw fail("expected " + std::to_string(kExpressionCount * kRegionCount) + " cells, got " +
               std::to_string(cells.size()));
  }

  ExpressionModel::Grid grid;
  std::array<std::array<bool, kRegionCount>, kExpressionCount> filled{};
  try {
    for (const json& cell : cells) {
      const auto e = parse_expression(cell.at("expression").get<std::string>());
      const auto r = parse_region(cell.at("region").get<std::string>());
      if (!e || !r) throw fail("unknown expression or region in cell");
      const std::string where = cell_name(*e, *r);
      if (filled[index_of(*e)][index_of(*r)]) throw fail("duplicate cell " + where);
      const Dims dims = canonical_dims(*r);
      if (cell.at("rows").get<std::size_t>() != dims.rows ||
          cell.at("cols").get<std::size_t>() != dims.cols) {
        throw fail(where + " has non-canonical dims");
      }
      const json& values = cell.at("eigenvalues");
      const json& vectors = cell.at("eigenvectors");
      if (!values.is_array() || !vectors.is_array() || values.size() != kBasisSize ||
          vectors.size() != kBasisSize) {
        throw fail(where + " must hold " + std::to_string(kBasisSize) + " eigenpairs");
      }
      EigenBasis basis;
      basis.region = *r;
      for (std::size_t k = 0; k < kBasisSize; ++k) {
        if (!values[k].is_number()) throw fail(where + " eigenvalue is not a number");
        basis.pairs[k].value = values[k].get<double>();
        if (!vectors[k].is_array()) throw fail(where + " eigenvector is not an array");
        for (const json& x : vectors[k]) {
          if (!x.is_number()) throw fail(where + " eigenvector holds a non-number");
          basis.pairs[k].vector.push_back(x.get<double>());
        }
      }
      grid[index_of(*e)][index_of(*r)] = std::move(basis);
      filled[index_of(*e)][index_of(*r)] = true;
    }
  } catch (const json::exception& ex) {
    throw fail(ex.what());
  }
  return ExpressionModel(std::move(grid));
}

void save_model(const ExpressionModel& model, const std::filesystem::path& path) {
  write_file_atomic(path, serialize_model(model));
}

ExpressionModel load_model(const std::filesystem::path& path) {
  try {
    return deserialize_model(read_file(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kIo) throw;
    throw e.with_context(path.string());
  }
}

}  // namespace eigenexpr
