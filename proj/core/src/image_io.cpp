#include "eigenexpr/image_io.hpp"

#include <charconv>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <vector>

#include <jpeglib.h>
#include <png.h>

#include "eigenexpr/error.hpp"
#include "eigenexpr/file_util.hpp"

namespace eigenexpr {
namespace {

bool is_png(std::string_view bytes) {
  return bytes.size() >= 8 && std::memcmp(bytes.data(), "\x89PNG\r\n\x1a\n", 8) == 0;
}

bool is_jpeg(std::string_view bytes) {
  return bytes.size() >= 3 && static_cast<unsigned char>(bytes[0]) == 0xFF &&
         static_cast<unsigned char>(bytes[1]) == 0xD8 &&
         static_cast<unsigned char>(bytes[2]) == 0xFF;
}

RgbPlanes planes_from_rgb8(const unsigned char* rgb, std::size_t height, std::size_t width) {
  RgbPlanes out;
  for (ChannelPlane* p : {&out.r, &out.g, &out.b}) {
    p->height = height;
    p->width = width;
    p->values.resize(height * width);
  }
  for (std::size_t i = 0; i < height * width; ++i) {
    out.r.values[i] = rgb[3 * i] / 255.0;
    out.g.values[i] = rgb[3 * i + 1] / 255.0;
    out.b.values[i] = rgb[3 * i + 2] / 255.0;
  }
  return out;
}

RgbPlanes decode_png(std::string_view bytes, const std::string& name) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw Error(ErrorKind::kFormat, name + ": " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<unsigned char> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    std::string message = image.message;
    png_image_free(&image);
    throw Error(ErrorKind::kFormat, name + ": " + message);
  }
  return planes_from_rgb8(buffer.data(), image.height, image.width);
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

RgbPlanes decode_jpeg(std::string_view bytes, const std::string& name) {
  jpeg_decompress_struct cinfo;
  JpegErrorManager err;
  std::vector<unsigned char> buffer;
  volatile std::size_t height = 0;
  volatile std::size_t width = 0;
  volatile bool failed = false;

  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  if (setjmp(err.jump)) {
    failed = true;
  } else {
    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, reinterpret_cast<const unsigned char*>(bytes.data()),
                 static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);
    height = cinfo.output_height;
    width = cinfo.output_width;
    buffer.resize(height * width * 3);
    while (cinfo.output_scanline < cinfo.output_height) {
      JSAMPROW row = buffer.data() + static_cast<std::size_t>(cinfo.output_scanline) * width * 3;
      jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
  }
  jpeg_destroy_decompress(&cinfo);
  if (failed) throw Error(ErrorKind::kFormat, name + ": " + err.message);
  return planes_from_rgb8(buffer.data(), height, width);
}

std::string_view next_line(std::string_view& text) {
  const std::size_t end = text.find('\n');
  std::string_view line = text.substr(0, end);
  text.remove_prefix(end == std::string_view::npos ? text.size() : end + 1);
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

template <typename T>
std::vector<T> parse_numbers(std::string_view line, std::size_t line_no) {
  std::vector<T> out;
  const char* p = line.data();
  const char* end = line.data() + line.size();
  while (true) {
    while (p < end && (*p == ' ' || *p == '\t')) ++p;
    if (p == end) break;
    T value{};
    auto [next, ec] = std::from_chars(p, end, value);
    if (ec != std::errc() || (next < end && *next != ' ' && *next != '\t')) {
      throw Error(ErrorKind::kFormat, "text image line " + std::to_string(line_no) +
                                          ": bad number near '" +
                                          std::string(p, std::min<std::size_t>(12, end - p)) + "'");
    }
    out.push_back(value);
    p = next;
  }
  return out;
}

}  // namespace

GrayImage parse_text_image(std::string_view text) {
  std::size_t line_no = 1;
  const auto header = parse_numbers<std::size_t>(next_line(text), line_no);
  if (header.size() != 2 || header[0] == 0 || header[1] == 0) {
    throw Error(ErrorKind::kFormat, "text image header must be 'rows cols'");
  }
  const std::size_t rows = header[0];
  const std::size_t cols = header[1];
  std::vector<double> pixels;
  pixels.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    ++line_no;
    if (text.empty()) {
      throw Error(ErrorKind::kFormat, "text image truncated: expected " + std::to_string(rows) +
                                          " rows, got " + std::to_string(r));
    }
    const auto values = parse_numbers<double>(next_line(text), line_no);
    if (values.size() != cols) {
      throw Error(ErrorKind::kFormat, "text image line " + std::to_string(line_no) + " has " +
                                          std::to_string(values.size()) + " values, expected " +
                                          std::to_string(cols));
    }
    pixels.insert(pixels.end(), values.begin(), values.end());
  }
  while (!text.empty()) {
    ++line_no;
    if (!parse_numbers<double>(next_line(text), line_no).empty()) {
      throw Error(ErrorKind::kFormat, "text image has extra data after row " + std::to_string(rows));
    }
  }
  try {
    return GrayImage(rows, cols, std::move(pixels));
  } catch (const Error& e) {
    throw Error(ErrorKind::kFormat, std::string("text image: ") + e.what());
  }
}

std::string format_text_image(const GrayImage& img) {
  std::string out = std::to_string(img.height()) + " " + std::to_string(img.width()) + "\n";
  char buf[32];
  for (std::size_t r = 0; r < img.height(); ++r) {
    for (std::size_t c = 0; c < img.width(); ++c) {
      if (c > 0) out += ' ';
      auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), img(r, c));
      out.append(buf, end);
    }
    out += '\n';
  }
  return out;
}

void save_text_image(const GrayImage& img, const std::filesystem::path& path) {
  write_file_atomic(path, format_text_image(img));
}

void save_png(const GrayImage& img, const std::filesystem::path& path) {
  std::vector<unsigned char> gray(img.pixels().size());
  for (std::size_t i = 0; i < gray.size(); ++i) {
    gray[i] = static_cast<unsigned char>(std::lround(img.pixels()[i] * 255.0));
  }
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = PNG_FORMAT_GRAY;
  png_alloc_size_t size = 0;
  if (!png_image_write_get_memory_size(image, size, 0, gray.data(), 0, nullptr)) {
    throw Error(ErrorKind::kIo, path.string() + ": " + image.message);
  }
  std::string encoded(size, '\0');
  if (!png_image_write_to_memory(&image, encoded.data(), &size, 0, gray.data(), 0, nullptr)) {
    throw Error(ErrorKind::kIo, path.string() + ": " + image.message);
  }
  encoded.resize(size);
  write_file_atomic(path, encoded);
}

RgbPlanes decode_image(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  const std::string name = path.string();
  if (is_png(bytes)) return decode_png(bytes, name);
  if (is_jpeg(bytes)) return decode_jpeg(bytes, name);
  GrayImage gray;
  try {
    gray = parse_text_image(bytes);
  } catch (const Error& e) {
    throw e.with_context(name);
  }
  RgbPlanes out;
  for (ChannelPlane* p : {&out.r, &out.g, &out.b}) {
    p->height = gray.height();
    p->width = gray.width();
    p->values = gray.pixels();
  }
  return out;
}

GrayImage load_image(const std::filesystem::path& path) {
  const RgbPlanes planes = decode_image(path);
  return to_grayscale(planes.r, planes.g, planes.b);
}

}  // namespace eigenexpr
