#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include <jpeglib.h>

#include "eigenexpr/error.hpp"
#include "eigenexpr/image.hpp"
#include "eigenexpr/image_io.hpp"
#include "support/oracles.hpp"
#include "support/temp_dir.hpp"

using namespace eigenexpr;

namespace {

ChannelPlane plane(std::size_t h, std::size_t w, double v) { return {h, w, std::vector<double>(h * w, v)}; }

GrayImage ramp(std::size_t h, std::size_t w) {
  std::vector<double> px(h * w);
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = static_cast<double>(i) / static_cast<double>(px.size());
  return GrayImage(h, w, px);
}

void write_jpeg(const std::filesystem::path& path, std::size_t h, std::size_t w, unsigned char r,
                unsigned char g, unsigned char b) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  REQUIRE(f != nullptr);
  jpeg_compress_struct cinfo;
  jpeg_error_mgr jerr;
  cinfo.err = jpeg_std_error(&jerr);
  jpeg_create_compress(&cinfo);
  jpeg_stdio_dest(&cinfo, f);
  cinfo.image_width = static_cast<JDIMENSION>(w);
  cinfo.image_height = static_cast<JDIMENSION>(h);
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, 100, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  std::vector<unsigned char> row(w * 3);
  for (std::size_t j = 0; j < w; ++j) {
    row[3 * j] = r;
    row[3 * j + 1] = g;
    row[3 * j + 2] = b;
  }
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW p = row.data();
    jpeg_write_scanlines(&cinfo, &p, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
  std::fclose(f);
}

}  // namespace

TEST_CASE("to_grayscale") {
  const auto gray = to_grayscale(plane(2, 3, 0.5), plane(2, 3, 0.5), plane(2, 3, 0.5));
  for (double v : gray.pixels()) CHECK(v == 0.5);
  const auto white = to_grayscale(plane(1, 2, 1), plane(1, 2, 1), plane(1, 2, 1));
  for (double v : white.pixels()) CHECK(v == 1.0);
  const auto red = to_grayscale(plane(1, 1, 1), plane(1, 1, 0), plane(1, 1, 0));
  CHECK(red(0, 0) == doctest::Approx(0.299).epsilon(1e-15));
  const auto mixed = to_grayscale(plane(1, 1, 0.2), plane(1, 1, 0.4), plane(1, 1, 0.6));
  CHECK(mixed(0, 0) == doctest::Approx(0.299 * 0.2 + 0.587 * 0.4 + 0.114 * 0.6));

  CHECK_THROWS_AS(to_grayscale(plane(2, 2, 0), plane(2, 3, 0), plane(2, 2, 0)), Error);
}

TEST_CASE("GrayImage validates its pixels") {
  CHECK_THROWS_AS(GrayImage(2, 2, std::vector<double>{0, 0.5, 1.2, 0}), Error);
  CHECK_THROWS_AS(GrayImage(2, 2, std::vector<double>{0, 0.5}), Error);
}

TEST_CASE("crop") {
  const GrayImage img = ramp(6, 8);
  CHECK(crop(img, Rect{0, 0, 8, 6}) == img);

  const GrayImage two = crop(img, Rect{3, 2, 2, 2});
  CHECK(two(0, 0) == img(2, 3));
  CHECK(two(1, 1) == img(3, 4));

  std::mt19937_64 rng(5);
  const GrayImage big = oracle::random_image(rng, 50, 70);
  std::uniform_int_distribution<long> pick(0, 40);
  for (int t = 0; t < 20; ++t) {
    const Rect r{pick(rng), pick(rng) / 2, 2 + pick(rng) % 25, 2 + pick(rng) % 25};
    CHECK(crop(big, r) == oracle::crop(big, r));
    // Crop of a crop equals one crop with the composed rectangle.
    const Rect inner{1, 0, r.w - 1, r.h - 1};
    if (inner.w >= 2 && inner.h >= 2) {
      CHECK(crop(crop(big, r), inner) == crop(big, Rect{r.x + 1, r.y, r.w - 1, r.h - 1}));
    }
  }

  try {
    crop(img, Rect{7, 1, 3, 2});
    FAIL("expected a bounds error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kBounds);
    CHECK(std::string(e.what()).find("x=7") != std::string::npos);
  }
  CHECK_THROWS_AS(crop(img, Rect{0, 0, 1, 4}), Error);
  CHECK_THROWS_AS(crop(img, Rect{-1, 0, 3, 3}), Error);
}

TEST_CASE("resize") {
  std::mt19937_64 rng(8);
  const GrayImage img = oracle::random_image(rng, 9, 13);
  CHECK(oracle::max_abs_diff(resize(img, 9, 13).pixels(), img.pixels()) <= 1e-12);

  const GrayImage checker(2, 2, std::vector<double>{0, 1, 1, 0});
  const GrayImage up = resize(checker, 3, 3);
  CHECK(up(1, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(up(0, 0) == 0.0);
  CHECK(up(0, 2) == 1.0);

  const GrayImage flat(7, 5, 0.3);
  for (auto [r, c] : {std::pair{1, 1}, {40, 40}, {3, 90}, {110, 95}}) {
    const GrayImage out = resize(flat, r, c);
    CHECK(out.height() == static_cast<std::size_t>(r));
    CHECK(out.width() == static_cast<std::size_t>(c));
    CHECK(oracle::max_abs_diff(out.pixels(), std::vector<double>(out.pixels().size(), 0.3)) <= 1e-12);
  }

  for (int t = 0; t < 20; ++t) {
    const GrayImage src = oracle::random_image(rng, 5 + t, 20 - t / 2);
    const auto [lo, hi] = std::minmax_element(src.pixels().begin(), src.pixels().end());
    const GrayImage out = resize(src, 40, 37);
    for (double v : out.pixels()) {
      CHECK(v >= *lo - 1e-12);
      CHECK(v <= *hi + 1e-12);
    }
  }

  CHECK_THROWS_AS(resize(GrayImage{}, 3, 3), Error);
}

TEST_CASE("region_to_matrix") {
  const GrayImage img(2, 3, std::vector<double>{0, 0.1, 0.2, 0.3, 0.4, 0.5});
  const Matrix m = region_to_matrix(img);
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  CHECK(m(1, 2) == 0.5);
  CHECK(region_to_matrix(matrix_to_image(m)) == m);

  const Dims eye = canonical_dims(RegionKind::kLeftEye);
  const Matrix left = region_to_matrix(resize(ramp(17, 23), eye.rows, eye.cols));
  CHECK(left.rows() == 40);
  CHECK(left.cols() == 40);
}

TEST_CASE("canonical region sizes") {
  CHECK(canonical_dims(RegionKind::kLeftEye) == Dims{40, 40});
  CHECK(canonical_dims(RegionKind::kRightEye) == Dims{40, 40});
  CHECK(canonical_dims(RegionKind::kNose) == Dims{70, 60});
  CHECK(canonical_dims(RegionKind::kLip) == Dims{60, 90});
  CHECK(canonical_dims(RegionKind::kNoseLip) == Dims{110, 95});
  for (RegionKind r : kAllRegions) CHECK(parse_region(region_key(r)) == r);
  CHECK_FALSE(parse_region("mouth").has_value());
}

TEST_CASE("plain-text images") {
  const GrayImage img = parse_text_image("2 3\n0 0.25 1\n0.5 0.125 0.1\n");
  CHECK(img.height() == 2);
  CHECK(img(1, 2) == 0.1);
  CHECK(format_text_image(img) == "2 3\n0 0.25 1\n0.5 0.125 0.1\n");

  std::mt19937_64 rng(1);
  const GrayImage random = oracle::random_image(rng, 4, 6);
  CHECK(parse_text_image(format_text_image(random)) == random);

  CHECK_THROWS_AS(parse_text_image("2 2\n0 0\n"), Error);          // truncated
  CHECK_THROWS_AS(parse_text_image("2 2\n0 0\n0 0 0\n"), Error);   // ragged
  CHECK_THROWS_AS(parse_text_image("1 2\n0 1.5\n"), Error);        // out of range
  CHECK_THROWS_AS(parse_text_image("1 2\n0 x\n"), Error);
  CHECK_THROWS_AS(parse_text_image("1 1\n0\n0\n"), Error);          // extra row
}

TEST_CASE("image files") {
  TempDir dir;
  std::mt19937_64 rng(2);
  const GrayImage img = oracle::random_image(rng, 5, 7);

  SUBCASE("plain text loads bit-exactly") {
    save_text_image(img, dir.path() / "a.txt");
    CHECK(load_image(dir.path() / "a.txt") == img);
  }
  SUBCASE("png round trip to 8-bit precision") {
    save_png(img, dir.path() / "a.png");
    const GrayImage back = load_image(dir.path() / "a.png");
    REQUIRE(back.height() == 5);
    REQUIRE(back.width() == 7);
    CHECK(oracle::max_abs_diff(back.pixels(), img.pixels()) <= 0.5 / 255.0 + 1e-12);
  }
  SUBCASE("jpeg decodes to RGB then luma") {
    write_jpeg(dir.path() / "a.jpg", 8, 8, 200, 100, 50);
    const RgbPlanes planes = decode_image(dir.path() / "a.jpg");
    CHECK(planes.r.values[0] == doctest::Approx(200.0 / 255.0).epsilon(0.02));
    CHECK(planes.g.values[0] == doctest::Approx(100.0 / 255.0).epsilon(0.03));
    const GrayImage gray = load_image(dir.path() / "a.jpg");
    CHECK(gray(3, 3) == doctest::Approx((0.299 * 200 + 0.587 * 100 + 0.114 * 50) / 255.0).epsilon(0.02));
  }
  SUBCASE("errors carry the path") {
    try {
      load_image(dir.path() / "missing.png");
      FAIL("expected an I/O error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kIo);
      CHECK(std::string(e.what()).find("missing.png") != std::string::npos);
    }
    std::ofstream(dir.path() / "junk.png") << "\x89PNG\r\n\x1a\nnot really";
    CHECK_THROWS_AS(load_image(dir.path() / "junk.png"), Error);
    std::ofstream(dir.path() / "junk.jpg") << "\xFF\xD8\xFF\xE0 truncated";
    CHECK_THROWS_AS(load_image(dir.path() / "junk.jpg"), Error);
  }
}
