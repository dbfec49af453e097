#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sigscan/image.hpp"
#include "sigscan/patterns.hpp"

// Seeded scene generation. Every draw comes from one mt19937_64 stream seeded
// with the given seed; pixels are drawn in row-major order (or pattern raster
// order when planting) and a pixel is true iff uniform01() < p, where
// uniform01 takes the top 53 bits of one 64-bit output.
namespace sigscan::synth {

BinaryImage gen_bernoulli(int cols, int rows, double p, std::uint64_t seed);

/// Overwrites every pixel of the pattern with an independent draw of the given density.
void plant_pattern(BinaryImage& image, const PatternFamily& family, const PatternParams& params, double density,
                   std::uint64_t seed);

/// Overwrites every true pixel of `mask` with an independent draw.
void plant_mask(BinaryImage& image, const BinaryImage& mask, double density, std::uint64_t seed);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Segment {
  Point a;
  Point b;
};

/// Pixels whose center lies within width / 2 of the segment.
BinaryImage segment_mask(int cols, int rows, const std::vector<Segment>& segments, double width);

/// Splits a polyline into one segment per edge, shortening the edges at every
/// interior vertex so consecutive dashes are separated by `gap` pixels.
std::vector<Segment> dashed_polyline(const std::vector<Point>& vertices, double gap);

/// Comment lines placed in the header of generated bitmaps.
std::vector<std::string> generator_comments(std::uint64_t seed, double p);

/// Ground-truth sidecar: one "key value..." line per record.
class Manifest {
 public:
  void add(std::string line) { lines_.push_back(std::move(line)); }
  void add_pattern(const PatternParams& params, double density, std::uint64_t seed);
  void add_segment(const Segment& s, double width, double density, std::uint64_t seed);
  const std::vector<std::string>& lines() const noexcept { return lines_; }
  void write(std::ostream& out) const;

 private:
  std::vector<std::string> lines_;
};

}  // namespace sigscan::synth
