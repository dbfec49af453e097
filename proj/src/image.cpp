#include "sigscan/image.hpp"

#include <algorithm>
#include <numeric>

#include "sigscan/errors.hpp"

namespace sigscan {

BinaryImage::BinaryImage(int cols, int rows, bool fill) : cols_(cols), rows_(rows) {
  if (cols < 0 || rows < 0) {
    throw DomainError("image dimensions must be non-negative");
  }
  data_.assign(static_cast<std::size_t>(cols) * static_cast<std::size_t>(rows), fill ? 1 : 0);
}

std::size_t BinaryImage::count_true() const noexcept {
  return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

BinaryImage BinaryImage::crop(int x0, int y0, int width, int height) const {
  const int x1 = std::min(cols_, x0 + width - 1);
  const int y1 = std::min(rows_, y0 + height - 1);
  if (x0 < 1 || y0 < 1 || x1 < x0 || y1 < y0) {
    throw DomainError("crop rectangle outside the image");
  }
  BinaryImage out(x1 - x0 + 1, y1 - y0 + 1);
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      out.set(x - x0 + 1, y - y0 + 1, get(x, y));
    }
  }
  return out;
}

BinaryImage& BinaryImage::operator&=(const BinaryImage& other) {
  if (cols_ != other.cols_ || rows_ != other.rows_) {
    throw DomainError("image dimensions differ");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    data_[i] &= other.data_[i];
  }
  return *this;
}

BinaryImage& BinaryImage::operator|=(const BinaryImage& other) {
  if (cols_ != other.cols_ || rows_ != other.rows_) {
    throw DomainError("image dimensions differ");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    data_[i] |= other.data_[i];
  }
  return *this;
}

void RgbImage::set(int x, int y, std::uint8_t red, std::uint8_t green, std::uint8_t blue) {
  const std::size_t i = (static_cast<std::size_t>(y - 1) * cols + static_cast<std::size_t>(x - 1)) * 3;
  rgb[i] = red;
  rgb[i + 1] = green;
  rgb[i + 2] = blue;
}

}  // namespace sigscan
