#include "sigscan/geometry.hpp"

#include "sigscan/errors.hpp"

namespace sigscan {

namespace {

int cells_for(double extent, double step) {
  // Tolerance absorbs steps that divide the extent up to rounding noise.
  const int n = static_cast<int>(std::ceil(extent / step - 1e-9));
  return n < 1 ? 1 : n;
}

}  // namespace

ImageGeometry ImageGeometry::of(int cols, int rows) {
  if (cols < 1 || rows < 1) {
    throw DomainError("image geometry needs positive dimensions");
  }
  ImageGeometry g;
  g.n_cols = cols;
  g.n_rows = rows;
  g.rho_d = 0.5 * std::sqrt(static_cast<double>(cols) * cols + static_cast<double>(rows) * rows);
  g.cx = (cols + 1) / 2.0;
  g.cy = (rows + 1) / 2.0;
  return g;
}

ParameterGrid::ParameterGrid(const ImageGeometry& geometry, const Quantization& q) : geometry_(geometry) {
  if (!(q.rho_step > 0.0)) {
    throw DomainError("rho step must be positive");
  }
  if (q.center_stride < 1) {
    throw DomainError("center stride must be >= 1");
  }
  const double default_angle = 1.0 / geometry.rho_d;
  const double theta_req = q.theta_step > 0.0 ? q.theta_step : default_angle;
  const double phi_req = q.phi_step > 0.0 ? q.phi_step : default_angle;

  theta_cells_ = cells_for(std::numbers::pi, theta_req);
  theta_step_ = std::numbers::pi / theta_cells_;
  phi_cells_ = cells_for(2.0 * std::numbers::pi, phi_req);
  phi_step_ = 2.0 * std::numbers::pi / phi_cells_;

  rho_step_ = q.rho_step;
  rho_half_ = cells_for(geometry.rho_d, rho_step_);
  ray_max_ = rho_half_;

  cos_.resize(theta_cells_);
  sin_.resize(theta_cells_);
  for (int k = 0; k < theta_cells_; ++k) {
    cos_[k] = std::cos(k * theta_step_);
    sin_[k] = std::sin(k * theta_step_);
  }

  center_stride_ = q.center_stride;
  for (int x = 1; x <= geometry.n_cols; x += center_stride_) {
    center_xs_.push_back(x);
  }
  for (int y = 1; y <= geometry.n_rows; y += center_stride_) {
    center_ys_.push_back(y);
  }
}

}  // namespace sigscan
