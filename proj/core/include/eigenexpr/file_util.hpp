#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace eigenexpr {

/// Throws kIo with the path on failure.
std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temp file and renames it over `path`, so readers see
/// either the old file or the complete new one.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace eigenexpr
