#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace sigscan {

/// Image lattice with its centered coordinate frame.
///
/// The origin for signed distances and angular coordinates is the image
/// center ((N_c+1)/2, (N_r+1)/2) in 1-based pixel coordinates. Centered
/// coordinates point right (x) and up (y), so angles run counterclockwise on
/// screen.
struct ImageGeometry {
  int n_cols = 0;
  int n_rows = 0;
  double rho_d = 0.0;  // half diagonal
  double cx = 0.0;
  double cy = 0.0;

  static ImageGeometry of(int cols, int rows);

  double xc(int x) const noexcept { return x - cx; }
  double yc(int y) const noexcept { return cy - y; }
  int pixel_count() const noexcept { return n_cols * n_rows; }
};

/// Requested quantization steps. Non-positive angular steps select the
/// defaults (1 / rho_d radians).
struct Quantization {
  double theta_step = 0.0;
  double rho_step = 1.0;
  double phi_step = 0.0;
  int center_stride = 2;
};

/// Resolved discretization of every parameter axis for one image geometry.
///
/// Angular steps are shrunk so that an integer number of cells tiles [0, pi)
/// for theta and [0, 2 pi) for phi. Signed distances map to cells by rounding
/// half away from zero, after snapping to a 1e-9 grid so that pixels lying
/// exactly on a cell boundary are assigned the same way on every code path.
class ParameterGrid {
 public:
  ParameterGrid(const ImageGeometry& geometry, const Quantization& q);

  const ImageGeometry& geometry() const noexcept { return geometry_; }

  int theta_cells() const noexcept { return theta_cells_; }
  double theta_step() const noexcept { return theta_step_; }
  double theta(int k) const noexcept { return k * theta_step_; }
  double cos_theta(int k) const noexcept { return cos_[k]; }
  double sin_theta(int k) const noexcept { return sin_[k]; }

  double rho_step() const noexcept { return rho_step_; }
  /// Signed rho cells span [-rho_half, rho_half].
  int rho_half() const noexcept { return rho_half_; }
  int rho_cells() const noexcept { return 2 * rho_half_ + 1; }
  int rho_cell_of(double rho) const noexcept { return static_cast<int>(std::lround(snap(rho / rho_step_))); }
  int rho_cell(int x, int y, int k) const noexcept {
    return rho_cell_of(geometry_.xc(x) * cos_[k] + geometry_.yc(y) * sin_[k]);
  }

  /// Ring radii cells span [0, ray_max].
  int ray_max() const noexcept { return ray_max_; }
  int ray_cell(int x, int y, int x0, int y0) const noexcept {
    const double dx = x - x0;
    const double dy = y - y0;
    return static_cast<int>(std::lround(snap(std::sqrt(dx * dx + dy * dy) / rho_step_)));
  }

  int phi_cells() const noexcept { return phi_cells_; }
  double phi_step() const noexcept { return phi_step_; }
  double phi_of(double xc, double yc) const noexcept {
    double a = std::atan2(yc, xc);
    if (a < 0.0) {
      a += 2.0 * std::numbers::pi;
    }
    return a;
  }
  int phi_cell_of(double angle) const noexcept {
    int c = static_cast<int>(std::floor(snap(angle / phi_step_)));
    if (c >= phi_cells_) {
      c -= phi_cells_;
    }
    return c < 0 ? 0 : c;
  }
  int phi_cell(int x, int y) const noexcept { return phi_cell_of(phi_of(geometry_.xc(x), geometry_.yc(y))); }

  int center_stride() const noexcept { return center_stride_; }
  /// Candidate ring center columns / rows: 1, 1 + stride, ...
  const std::vector<int>& center_xs() const noexcept { return center_xs_; }
  const std::vector<int>& center_ys() const noexcept { return center_ys_; }

  static double snap(double v) noexcept { return std::round(v * 1e9) / 1e9; }

 private:
  ImageGeometry geometry_;
  int theta_cells_ = 1;
  double theta_step_ = 0.0;
  double rho_step_ = 1.0;
  int rho_half_ = 0;
  int ray_max_ = 0;
  int phi_cells_ = 1;
  double phi_step_ = 0.0;
  int center_stride_ = 1;
  std::vector<double> cos_;
  std::vector<double> sin_;
  std::vector<int> center_xs_;
  std::vector<int> center_ys_;
};

}  // namespace sigscan
