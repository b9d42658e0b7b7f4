#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "eigenexpr/image.hpp"

namespace eigenexpr {

struct RgbPlanes {
  ChannelPlane r;
  ChannelPlane g;
  ChannelPlane b;
};

/// Decodes PNG, JPEG or the plain-text grayscale format into RGB planes
/// scaled to [0, 1]. The format is picked from the file's leading bytes.
/// Throws kIo when the file cannot be read and kFormat when it cannot be
/// decoded; both messages carry the path.
RgbPlanes decode_image(const std::filesystem::path& path);

/// decode_image followed by to_grayscale.
GrayImage load_image(const std::filesystem::path& path);

/// Plain-text grayscale: a `rows cols` header line, then `rows` lines of
/// `cols` whitespace-separated values in [0, 1].
GrayImage parse_text_image(std::string_view text);
std::string format_text_image(const GrayImage& img);
void save_text_image(const GrayImage& img, const std::filesystem::path& path);

/// 8-bit grayscale PNG (values rounded to the nearest level).
void save_png(const GrayImage& img, const std::filesystem::path& path);

}  // namespace eigenexpr
