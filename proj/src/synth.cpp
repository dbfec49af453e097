#include "sigscan/synth.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "sigscan/errors.hpp"
#include "sigscan/random.hpp"
#include "sigscan/report.hpp"

namespace sigscan::synth {

namespace {

void check_density(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("density must lie in [0, 1]");
  }
}

std::string fmt(double v) { return format_number(v); }

}  // namespace

BinaryImage gen_bernoulli(int cols, int rows, double p, std::uint64_t seed) {
  check_density(p);
  if (cols < 1 || rows < 1) {
    throw DomainError("image needs positive dimensions");
  }
  BinaryImage image(cols, rows);
  Rng rng(seed);
  for (auto& v : image.data()) {
    v = uniform01(rng) < p ? 1 : 0;
  }
  return image;
}

void plant_pattern(BinaryImage& image, const PatternFamily& family, const PatternParams& params, double density,
                   std::uint64_t seed) {
  check_density(density);
  if (image.cols() != family.geometry().n_cols || image.rows() != family.geometry().n_rows) {
    throw DomainError("image does not match the family geometry");
  }
  Rng rng(seed);
  for (const auto& p : family.pixels(params)) {
    image.set(p, uniform01(rng) < density);
  }
}

void plant_mask(BinaryImage& image, const BinaryImage& mask, double density, std::uint64_t seed) {
  check_density(density);
  if (image.cols() != mask.cols() || image.rows() != mask.rows()) {
    throw DomainError("mask and image sizes differ");
  }
  Rng rng(seed);
  auto out = image.data();
  const auto m = mask.data();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i]) {
      out[i] = uniform01(rng) < density ? 1 : 0;
    }
  }
}

BinaryImage segment_mask(int cols, int rows, const std::vector<Segment>& segments, double width) {
  if (!(width > 0.0)) {
    throw DomainError("segment width must be positive");
  }
  BinaryImage mask(cols, rows);
  const double r = width / 2.0;
  for (const auto& s : segments) {
    const double dx = s.b.x - s.a.x;
    const double dy = s.b.y - s.a.y;
    const double len2 = dx * dx + dy * dy;
    const int x_lo = std::max(1, static_cast<int>(std::floor(std::min(s.a.x, s.b.x) - r)));
    const int x_hi = std::min(cols, static_cast<int>(std::ceil(std::max(s.a.x, s.b.x) + r)));
    const int y_lo = std::max(1, static_cast<int>(std::floor(std::min(s.a.y, s.b.y) - r)));
    const int y_hi = std::min(rows, static_cast<int>(std::ceil(std::max(s.a.y, s.b.y) + r)));
    for (int y = y_lo; y <= y_hi; ++y) {
      for (int x = x_lo; x <= x_hi; ++x) {
        double t = len2 > 0.0 ? ((x - s.a.x) * dx + (y - s.a.y) * dy) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const double ex = s.a.x + t * dx - x;
        const double ey = s.a.y + t * dy - y;
        if (ex * ex + ey * ey <= r * r + 1e-9) {
          mask.set(x, y, true);
        }
      }
    }
  }
  return mask;
}

std::vector<Segment> dashed_polyline(const std::vector<Point>& vertices, double gap) {
  if (vertices.size() < 2) {
    throw DomainError("a polyline needs at least two vertices");
  }
  std::vector<Segment> out;
  const double half = gap / 2.0;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    Point a = vertices[i];
    Point b = vertices[i + 1];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (len <= 0.0) {
      continue;
    }
    const double ux = (b.x - a.x) / len;
    const double uy = (b.y - a.y) / len;
    const double trim_a = i > 0 ? half : 0.0;
    const double trim_b = i + 2 < vertices.size() ? half : 0.0;
    if (trim_a + trim_b >= len) {
      continue;
    }
    a = {a.x + ux * trim_a, a.y + uy * trim_a};
    b = {b.x - ux * trim_b, b.y - uy * trim_b};
    out.push_back({a, b});
  }
  return out;
}

std::vector<std::string> generator_comments(std::uint64_t seed, double p) {
  return {"sigscan synth: generator mt19937_64 seed " + std::to_string(seed),
          "draws row-major, pixel true iff (u64 >> 11) * 2^-53 < " + fmt(p)};
}

void Manifest::add_pattern(const PatternParams& params, double density, std::uint64_t seed) {
  add("pattern " + std::string(family_name(family_of(params))) + " " + params_text(params) +
      " density " + fmt(density) + " seed " + std::to_string(seed));
}

void Manifest::add_segment(const Segment& s, double width, double density, std::uint64_t seed) {
  add("segment " + fmt(s.a.x) + " " + fmt(s.a.y) + " " + fmt(s.b.x) + " " + fmt(s.b.y) + " width " + fmt(width) +
      " density " + fmt(density) + " seed " + std::to_string(seed));
}

void Manifest::write(std::ostream& out) const {
  for (const auto& l : lines_) {
    out << l << '\n';
  }
}

}  // namespace sigscan::synth
