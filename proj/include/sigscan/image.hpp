#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sigscan {

/// 1-based pixel coordinate: x is the column, y is the row.
struct Pixel {
  int x = 0;
  int y = 0;

  // Row-major order (y first) so sorted pixel lists follow the raster.
  friend constexpr auto operator<=>(const Pixel& a, const Pixel& b) noexcept {
    if (auto c = a.y <=> b.y; c != 0) {
      return c;
    }
    return a.x <=> b.x;
  }
  friend constexpr bool operator==(const Pixel&, const Pixel&) noexcept = default;
};

/// Rectangular lattice of true/false pixels, row-major, 1-based accessors.
class BinaryImage {
 public:
  BinaryImage() = default;
  BinaryImage(int cols, int rows, bool fill = false);

  int cols() const noexcept { return cols_; }
  int rows() const noexcept { return rows_; }
  std::size_t pixel_count() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  bool get(int x, int y) const noexcept { return data_[index(x, y)] != 0; }
  void set(int x, int y, bool value) noexcept { data_[index(x, y)] = value ? 1 : 0; }
  bool get(Pixel p) const noexcept { return get(p.x, p.y); }
  void set(Pixel p, bool value) noexcept { set(p.x, p.y, value); }
  bool contains(int x, int y) const noexcept { return x >= 1 && y >= 1 && x <= cols_ && y <= rows_; }

  std::size_t count_true() const noexcept;

  /// Row-major 0/1 bytes.
  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::span<std::uint8_t> data() noexcept { return data_; }

  /// Sub-image with upper-left corner (x0, y0), clipped to the image.
  BinaryImage crop(int x0, int y0, int width, int height) const;

  BinaryImage& operator&=(const BinaryImage& other);
  BinaryImage& operator|=(const BinaryImage& other);
  friend BinaryImage operator&(BinaryImage a, const BinaryImage& b) { return a &= b; }
  friend BinaryImage operator|(BinaryImage a, const BinaryImage& b) { return a |= b; }

  bool operator==(const BinaryImage&) const = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y - 1) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(x - 1);
  }

  int cols_ = 0;
  int rows_ = 0;
  std::vector<std::uint8_t> data_;
};

/// 8-bit RGB raster used for overlays.
struct RgbImage {
  int cols = 0;
  int rows = 0;
  std::vector<std::uint8_t> rgb;  // 3 bytes per pixel, row-major

  RgbImage(int c, int r) : cols(c), rows(r), rgb(static_cast<std::size_t>(c) * r * 3, 255) {}
  void set(int x, int y, std::uint8_t red, std::uint8_t green, std::uint8_t blue);
};

}  // namespace sigscan
