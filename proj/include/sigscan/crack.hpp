#pragma once

#include <cstdint>
#include <vector>

#include "sigscan/detect.hpp"
#include "sigscan/image.hpp"
#include "sigscan/patterns.hpp"

namespace sigscan {

struct Window {
  int id = 0;
  int x0 = 1;  // upper-left pixel
  int y0 = 1;
  int width = 0;
  int height = 0;
};

/// Non-overlapping windows in raster order; border windows are clipped.
class WindowGrid {
 public:
  WindowGrid(int cols, int rows, int window_width, int window_height);

  int window_width() const noexcept { return window_width_; }
  int window_height() const noexcept { return window_height_; }
  const std::vector<Window>& windows() const noexcept { return windows_; }

 private:
  int window_width_ = 0;
  int window_height_ = 0;
  std::vector<Window> windows_;
};

struct Extremity {
  Pixel pixel;  // image coordinates
  int window = 0;
};

/// Strip detected inside one window; params live in the window's own grid.
struct ElementaryStrip {
  int window = 0;
  Detection detection;
  Pixel end_a;
  Pixel end_b;
};

struct ElementaryResult {
  BinaryImage filtered;  // I', true on every pixel of every elementary strip
  std::vector<Extremity> extremities;
  std::vector<ElementaryStrip> strips;
};

struct CrackOptions {
  int window_width = 64;
  int window_height = 64;
  /// Minimum extremity distance for chaining; 0 = min(window width, height).
  double min_distance = 0.0;
  /// Chaining strip widths 1..max_width pixels.
  int max_width = 5;
  /// Quantization of the per-window strips and of the image-scale bounded strips.
  Quantization window_quantization;
  Quantization quantization;
  std::uint64_t seed = 1;
  int threads = 1;
};

ElementaryResult detect_elementary_strips(const BinaryImage& image, const WindowGrid& grid,
                                          const CrackOptions& options = {});

/// End points (window coordinates) of the strip's central axis clipped to the window.
std::pair<Pixel, Pixel> strip_axis_extremities(const StripParams& strip, const ParameterGrid& window_grid);

/// Bounded-strip candidates built from pairs of extremities of different windows.
std::vector<PatternParams> chaining_candidates(const std::vector<Extremity>& extremities, const ParameterGrid& grid,
                                               const CrackOptions& options);

struct ChainResult {
  FamilyConfig config;  // bounded-strip family restricted to the chaining candidates
  DetectionSet set;
};

ChainResult chain_bounded_strips(const BinaryImage& image, const BinaryImage& filtered,
                                 const std::vector<Extremity>& extremities, const CrackOptions& options = {});

/// Union of the accepted bounded strips, restricted to I'.
BinaryImage crack_mask(const DetectionSet& bounded, const BinaryImage& filtered);

struct CrackResult {
  ElementaryResult elementary;
  ChainResult chain;
  BinaryImage mask;
};

CrackResult crack_detect(const BinaryImage& image, const CrackOptions& options = {});

}  // namespace sigscan
