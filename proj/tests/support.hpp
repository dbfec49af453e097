#pragma once

#include <algorithm>
#include <random>

#include "sigscan/geometry.hpp"
#include "sigscan/image.hpp"
#include "sigscan/patterns.hpp"

namespace sigscan::testing {

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline BinaryImage random_image(int cols, int rows, double p, std::mt19937_64& rng) {
  BinaryImage img(cols, rows);
  std::bernoulli_distribution b(p);
  for (auto& v : img.data()) {
    v = b(rng) ? 1 : 0;
  }
  return img;
}

/// Any valid parameter tuple of the family on the grid.
inline PatternParams random_params(Family family, const ParameterGrid& g, std::mt19937_64& rng) {
  const auto& geo = g.geometry();
  auto interval = [&](int lo, int hi) {
    int a = uniform_int(rng, lo, hi);
    int b = uniform_int(rng, lo, hi);
    return std::pair{std::min(a, b), std::max(a, b)};
  };
  switch (family) {
    case Family::Tile: {
      auto [x0, x1] = interval(1, geo.n_cols);
      auto [y0, y1] = interval(1, geo.n_rows);
      return TileParams{x0, y0, x1, y1};
    }
    case Family::Strip: {
      auto [r0, r1] = interval(-g.rho_half(), g.rho_half());
      return StripParams{uniform_int(rng, 0, g.theta_cells() - 1), r0, r1};
    }
    case Family::Ring: {
      auto [r0, r1] = interval(0, g.ray_max());
      const auto& xs = g.center_xs();
      const auto& ys = g.center_ys();
      return RingParams{xs[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(xs.size()) - 1))],
                        ys[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(ys.size()) - 1))], r0, r1};
    }
    case Family::BoundedStrip:
      break;
  }
  auto [r0, r1] = interval(-g.rho_half(), g.rho_half());
  return BoundedStripParams{uniform_int(rng, 0, g.theta_cells() - 1), r0, r1, uniform_int(rng, 0, g.phi_cells() - 1),
                            uniform_int(rng, 0, g.phi_cells() - 1)};
}

inline BinaryImage one_hot(int cols, int rows, Pixel p) {
  BinaryImage img(cols, rows);
  img.set(p, true);
  return img;
}

}  // namespace sigscan::testing
