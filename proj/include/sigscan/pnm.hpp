#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sigscan/image.hpp"

namespace sigscan {

/// Reads P1/P4 bitmaps (bit 1 = black = true). Gray maps (P2/P5) need a
/// threshold: values >= threshold become true. Throws FormatError on malformed
/// input or on a gray map without a threshold.
BinaryImage read_pnm(std::istream& in, std::optional<int> gray_threshold = std::nullopt);
BinaryImage read_pnm(const std::filesystem::path& path, std::optional<int> gray_threshold = std::nullopt);

enum class PbmEncoding { Plain, Raw };

/// Writes a bitmap; each entry of `comments` becomes a `# ...` header line.
void write_pbm(std::ostream& out, const BinaryImage& image, PbmEncoding encoding = PbmEncoding::Raw,
               const std::vector<std::string>& comments = {});
void write_pbm(const std::filesystem::path& path, const BinaryImage& image, PbmEncoding encoding = PbmEncoding::Raw,
               const std::vector<std::string>& comments = {});

/// Writes a raw P6 color map.
void write_ppm(std::ostream& out, const RgbImage& image);
void write_ppm(const std::filesystem::path& path, const RgbImage& image);

}  // namespace sigscan
