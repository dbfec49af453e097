#include "sigscan/oracle.hpp"

#include <algorithm>
#include <functional>

#include "sigscan/errors.hpp"

namespace sigscan::oracle {

namespace {

int wrap(int v, int n) { return ((v % n) + n) % n; }

struct Visitor {
  Pixel p;
  const ParameterGrid& grid;

  bool operator()(const TileParams& t) const {
    return p.x >= t.x_ul && p.x <= t.x_lr && p.y >= t.y_ul && p.y <= t.y_lr;
  }
  bool operator()(const StripParams& s) const {
    const int c = grid.rho_cell(p.x, p.y, s.theta);
    return c >= s.rho0 && c <= s.rho1;
  }
  bool operator()(const RingParams& r) const {
    const int c = grid.ray_cell(p.x, p.y, r.x0, r.y0);
    return c >= r.rho0 && c <= r.rho1;
  }
  bool operator()(const BoundedStripParams& b) const {
    const int c = grid.rho_cell(p.x, p.y, b.theta);
    if (c < b.rho0 || c > b.rho1) {
      return false;
    }
    const int n = grid.phi_cells();
    return wrap(grid.phi_cell(p.x, p.y) - b.phi, n) <= wrap(b.psi - b.phi, n);
  }
};

// Candidate intervals [lo, hi] of a cell range, honoring the width limit.
void for_intervals(int first, int last, int max_width, const std::function<void(int, int)>& fn) {
  const int cells = last - first + 1;
  const int width = max_width > 0 ? max_width : cells;
  for (int lo = first; lo <= last; ++lo) {
    for (int hi = lo; hi <= std::min(last, lo + width - 1); ++hi) {
      fn(lo, hi);
    }
  }
}

}  // namespace

bool brute_contains(const PatternParams& params, Pixel pixel, const ParameterGrid& grid) {
  return std::visit(Visitor{pixel, grid}, params);
}

std::uint64_t brute_count(const BinaryImage& image, const PatternParams& params, const ParameterGrid& grid) {
  std::uint64_t n = 0;
  for (int y = 1; y <= image.rows(); ++y) {
    for (int x = 1; x <= image.cols(); ++x) {
      if (image.get(x, y) && brute_contains(params, {x, y}, grid)) {
        ++n;
      }
    }
  }
  return n;
}

std::uint64_t brute_count(const BinaryImage& image, const PatternParams& params, const Quantization& q) {
  const ParameterGrid grid(ImageGeometry::of(image.cols(), image.rows()), q);
  return brute_count(image, params, grid);
}

BestPerCardinality brute_best(const BinaryImage& image, const FamilyConfig& config) {
  if (image.empty() || image.cols() > kMaxSide || image.rows() > kMaxSide) {
    throw DomainError("brute_best is limited to nonempty images of at most 32x32 pixels");
  }
  const ParameterGrid grid(ImageGeometry::of(image.cols(), image.rows()), config.quantization);
  const BinaryImage full(image.cols(), image.rows(), true);
  BestPerCardinality best(image.pixel_count());

  auto offer = [&](const PatternParams& params) {
    std::uint64_t nu = 0;
    std::uint64_t kappa = 0;
    for (int y = 1; y <= image.rows(); ++y) {
      for (int x = 1; x <= image.cols(); ++x) {
        if (brute_contains(params, {x, y}, grid)) {
          ++nu;
          kappa += image.get(x, y) ? 1 : 0;
        }
      }
    }
    if (nu == 0) {
      return;
    }
    // Order-free tie rule: equal counts keep the smaller tuple.
    if (kappa > best.kappa_of[nu] || (kappa > 0 && kappa == best.kappa_of[nu] && params < best.params_of[nu])) {
      best.kappa_of[nu] = kappa;
      best.params_of[nu] = params;
    }
  };

  if (!config.candidates.empty()) {
    for (const auto& c : config.candidates) {
      if (family_of(c) != config.family) {
        throw DomainError("candidate of another family");
      }
      offer(c);
    }
    return best;
  }

  const int half = grid.rho_half();
  switch (config.family) {
    case Family::Tile:
      for (int x0 = 1; x0 <= image.cols(); ++x0) {
        for (int y0 = 1; y0 <= image.rows(); ++y0) {
          for (int x1 = x0; x1 <= image.cols(); ++x1) {
            for (int y1 = y0; y1 <= image.rows(); ++y1) {
              offer(TileParams{x0, y0, x1, y1});
            }
          }
        }
      }
      break;
    case Family::Strip:
      for (int k = 0; k < grid.theta_cells(); ++k) {
        for_intervals(-half, half, config.max_width, [&](int lo, int hi) { offer(StripParams{k, lo, hi}); });
      }
      break;
    case Family::Ring:
      for (const int x0 : grid.center_xs()) {
        for (const int y0 : grid.center_ys()) {
          for_intervals(0, grid.ray_max(), config.max_width,
                        [&](int lo, int hi) { offer(RingParams{x0, y0, lo, hi}); });
        }
      }
      break;
    case Family::BoundedStrip: {
      const int n = grid.phi_cells();
      const int sector = config.max_sector > 0 ? std::min(config.max_sector, n) : std::max(1, n / 2);
      for (int k = 0; k < grid.theta_cells(); ++k) {
        for_intervals(-half, half, config.max_width, [&](int lo, int hi) {
          for (int phi = 0; phi < n; ++phi) {
            for (int len = 1; len <= sector; ++len) {
              offer(BoundedStripParams{k, lo, hi, phi, (phi + len - 1) % n});
            }
          }
        });
      }
      break;
    }
  }
  return best;
}

}  // namespace sigscan::oracle
