#include "sigscan/crack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <thread>

#include "sigscan/errors.hpp"

namespace sigscan {

WindowGrid::WindowGrid(int cols, int rows, int window_width, int window_height)
    : window_width_(window_width), window_height_(window_height) {
  if (cols < 1 || rows < 1) {
    throw DomainError("image needs positive dimensions");
  }
  if (window_width < 8 || window_height < 8) {
    throw DomainError("windows must be at least 8x8 pixels");
  }
  int id = 0;
  for (int y0 = 1; y0 <= rows; y0 += window_height) {
    for (int x0 = 1; x0 <= cols; x0 += window_width) {
      windows_.push_back({id++, x0, y0, std::min(window_width, cols - x0 + 1), std::min(window_height, rows - y0 + 1)});
    }
  }
}

namespace {

std::optional<std::pair<double, double>> clip_line(double px, double py, double ux, double uy, double x_lo,
                                                   double x_hi, double y_lo, double y_hi) {
  double t0 = -std::numeric_limits<double>::infinity();
  double t1 = std::numeric_limits<double>::infinity();
  auto axis = [&](double p, double u, double lo, double hi) {
    if (std::abs(u) < 1e-12) {
      return p >= lo - 1e-9 && p <= hi + 1e-9;
    }
    double a = (lo - p) / u;
    double b = (hi - p) / u;
    if (a > b) {
      std::swap(a, b);
    }
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
    return true;
  };
  if (!axis(px, ux, x_lo, x_hi) || !axis(py, uy, y_lo, y_hi) || t0 > t1 + 1e-9) {
    return std::nullopt;
  }
  return std::pair{t0, t1};
}

Pixel to_pixel(const ImageGeometry& g, double xc, double yc) {
  const int x = static_cast<int>(std::lround(xc + g.cx));
  const int y = static_cast<int>(std::lround(g.cy - yc));
  return {std::clamp(x, 1, g.n_cols), std::clamp(y, 1, g.n_rows)};
}

// Extreme pixels of the strip along its direction, for strips whose axis misses the window.
std::pair<Pixel, Pixel> extreme_projection(const std::vector<Pixel>& pixels, const ParameterGrid& grid, int theta) {
  const auto& g = grid.geometry();
  const double ux = -grid.sin_theta(theta);
  const double uy = grid.cos_theta(theta);
  Pixel lo = pixels.front();
  Pixel hi = pixels.front();
  double t_lo = std::numeric_limits<double>::infinity();
  double t_hi = -std::numeric_limits<double>::infinity();
  for (const auto& p : pixels) {
    const double t = g.xc(p.x) * ux + g.yc(p.y) * uy;
    if (t < t_lo) {
      t_lo = t;
      lo = p;
    }
    if (t > t_hi) {
      t_hi = t;
      hi = p;
    }
  }
  return {lo, hi};
}

struct WindowOutput {
  std::vector<ElementaryStrip> strips;
  std::vector<std::vector<Pixel>> pixels;  // image coordinates, one list per strip
};

WindowOutput process_window(const BinaryImage& image, const Window& w, const CrackOptions& options) {
  WindowOutput out;
  const auto crop = image.crop(w.x0, w.y0, w.width, w.height);
  FamilyConfig config;
  config.family = Family::Strip;
  config.quantization = options.window_quantization;
  const StripFamily family(ImageGeometry::of(w.width, w.height), config);
  DetectOptions d;
  d.seed = options.seed + static_cast<std::uint64_t>(w.id);
  const auto set = detect_all(crop, family, d);
  for (const auto& det : set.detections) {
    const auto& s = std::get<StripParams>(det.params);
    auto local = family.pixels(det.params);
    if (local.empty()) {
      continue;
    }
    auto [a, b] = strip_axis_extremities(s, family.grid());
    if (a == Pixel{} && b == Pixel{}) {
      std::tie(a, b) = extreme_projection(local, family.grid(), s.theta);
    }
    std::vector<Pixel> global;
    global.reserve(local.size());
    for (const auto& p : local) {
      global.push_back({p.x + w.x0 - 1, p.y + w.y0 - 1});
    }
    out.strips.push_back({w.id, det, {a.x + w.x0 - 1, a.y + w.y0 - 1}, {b.x + w.x0 - 1, b.y + w.y0 - 1}});
    out.pixels.push_back(std::move(global));
  }
  return out;
}

int wrap(int v, int n) { return ((v % n) + n) % n; }

}  // namespace

std::pair<Pixel, Pixel> strip_axis_extremities(const StripParams& strip, const ParameterGrid& grid) {
  const auto& g = grid.geometry();
  const double c = grid.cos_theta(strip.theta);
  const double s = grid.sin_theta(strip.theta);
  const double rho = 0.5 * (strip.rho0 + strip.rho1) * grid.rho_step();
  const auto t = clip_line(rho * c, rho * s, -s, c, g.xc(1), g.xc(g.n_cols), g.yc(g.n_rows), g.yc(1));
  if (!t) {
    return {Pixel{}, Pixel{}};
  }
  const auto a = to_pixel(g, rho * c - s * t->first, rho * s + c * t->first);
  const auto b = to_pixel(g, rho * c - s * t->second, rho * s + c * t->second);
  return {a, b};
}

ElementaryResult detect_elementary_strips(const BinaryImage& image, const WindowGrid& grid,
                                          const CrackOptions& options) {
  if (image.empty()) {
    throw DomainError("crack detection needs a nonempty image");
  }
  const auto& windows = grid.windows();
  std::vector<WindowOutput> outputs(windows.size());
  const int workers = std::max(1, std::min<int>(options.threads, static_cast<int>(windows.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < windows.size(); ++i) {
      outputs[i] = process_window(image, windows[i], options);
    }
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = static_cast<std::size_t>(t); i < windows.size(); i += static_cast<std::size_t>(workers)) {
          outputs[i] = process_window(image, windows[i], options);
        }
      });
    }
  }

  ElementaryResult result;
  result.filtered = BinaryImage(image.cols(), image.rows());
  for (auto& out : outputs) {
    for (std::size_t k = 0; k < out.strips.size(); ++k) {
      for (const auto& p : out.pixels[k]) {
        result.filtered.set(p, true);
      }
      const auto& s = out.strips[k];
      result.extremities.push_back({s.end_a, s.window});
      result.extremities.push_back({s.end_b, s.window});
      result.strips.push_back(std::move(out.strips[k]));
    }
  }
  return result;
}

std::vector<PatternParams> chaining_candidates(const std::vector<Extremity>& extremities, const ParameterGrid& grid,
                                               const CrackOptions& options) {
  const auto& g = grid.geometry();
  const double d_min = options.min_distance > 0.0 ? options.min_distance
                                                  : std::min(options.window_width, options.window_height);
  const int n_theta = grid.theta_cells();
  const int n_phi = grid.phi_cells();
  const int half = grid.rho_half();
  std::vector<PatternParams> out;
  for (std::size_t i = 0; i < extremities.size(); ++i) {
    for (std::size_t j = i + 1; j < extremities.size(); ++j) {
      const auto& a = extremities[i];
      const auto& b = extremities[j];
      if (a.window == b.window) {
        continue;
      }
      const double ax = g.xc(a.pixel.x);
      const double ay = g.yc(a.pixel.y);
      const double bx = g.xc(b.pixel.x);
      const double by = g.yc(b.pixel.y);
      const double dx = bx - ax;
      const double dy = by - ay;
      if (std::hypot(dx, dy) < d_min) {
        continue;
      }
      double theta = std::atan2(dx, -dy);  // direction of the normal (-dy, dx)
      if (theta < 0.0) {
        theta += std::numbers::pi;
      }
      const int k = wrap(static_cast<int>(std::lround(theta / grid.theta_step())), n_theta);
      const double c = grid.cos_theta(k);
      const double s = grid.sin_theta(k);
      const double rho = 0.5 * ((ax + bx) * c + (ay + by) * s);

      int phi = grid.phi_cell(a.pixel.x, a.pixel.y);
      int psi = grid.phi_cell(b.pixel.x, b.pixel.y);
      if (wrap(psi - phi, n_phi) > n_phi / 2) {
        std::swap(phi, psi);
      }
      for (int w = 1; w <= options.max_width; ++w) {
        const double h = 0.5 * (w - 1) * grid.rho_step();
        const int rho0 = std::clamp(grid.rho_cell_of(rho - h), -half, half);
        const int rho1 = std::clamp(grid.rho_cell_of(rho + h), -half, half);
        out.push_back(BoundedStripParams{k, rho0, rho1, phi, psi});
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ChainResult chain_bounded_strips(const BinaryImage& image, const BinaryImage& filtered,
                                 const std::vector<Extremity>& extremities, const CrackOptions& options) {
  if (image.cols() != filtered.cols() || image.rows() != filtered.rows()) {
    throw DomainError("filtered image size differs from the seed image");
  }
  ChainResult result;
  result.config.family = Family::BoundedStrip;
  result.config.quantization = options.quantization;
  const auto geometry = ImageGeometry::of(image.cols(), image.rows());
  const ParameterGrid grid(geometry, options.quantization);
  result.config.candidates = chaining_candidates(extremities, grid, options);
  result.set.support = BinaryImage(image.cols(), image.rows());
  if (result.config.candidates.empty()) {
    result.set.residual = filtered & image;
    return result;
  }
  const BoundedStripFamily family(geometry, result.config);
  DetectOptions d;
  d.seed = options.seed;
  d.threads = options.threads;
  result.set = detect_all(filtered & image, family, d);
  return result;
}

BinaryImage crack_mask(const DetectionSet& bounded, const BinaryImage& filtered) {
  if (bounded.support.empty()) {
    return BinaryImage(filtered.cols(), filtered.rows());
  }
  return bounded.support & filtered;
}

CrackResult crack_detect(const BinaryImage& image, const CrackOptions& options) {
  CrackResult result;
  const WindowGrid grid(image.cols(), image.rows(), options.window_width, options.window_height);
  result.elementary = detect_elementary_strips(image, grid, options);
  result.chain = chain_bounded_strips(image, result.elementary.filtered, result.elementary.extremities, options);
  result.mask = crack_mask(result.chain.set, result.elementary.filtered);
  return result;
}

}  // namespace sigscan
