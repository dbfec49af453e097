#include "sigscan/patterns.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <thread>

#include "sigscan/errors.hpp"

namespace sigscan {

std::string_view family_name(Family family) {
  switch (family) {
    case Family::Tile:
      return "tile";
    case Family::Strip:
      return "strip";
    case Family::Ring:
      return "ring";
    case Family::BoundedStrip:
      return "bstrip";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "tile") return Family::Tile;
  if (name == "strip") return Family::Strip;
  if (name == "ring") return Family::Ring;
  if (name == "bstrip") return Family::BoundedStrip;
  throw DomainError("unknown pattern family: " + std::string(name));
}

Family family_of(const PatternParams& params) { return static_cast<Family>(params.index()); }

void BestPerCardinality::reset() noexcept {
  std::fill(kappa_of.begin(), kappa_of.end(), 0);
  std::fill(params_of.begin(), params_of.end(), PatternParams{});
}

void BestPerCardinality::merge(const BestPerCardinality& other) {
  if (other.kappa_of.size() != kappa_of.size()) {
    throw DomainError("cannot merge cardinality tables of different sizes");
  }
  for (std::size_t nu = 1; nu < kappa_of.size(); ++nu) {
    const auto k = other.kappa_of[nu];
    if (k == 0) {
      continue;
    }
    if (k > kappa_of[nu] || (k == kappa_of[nu] && other.params_of[nu] < params_of[nu])) {
      kappa_of[nu] = k;
      params_of[nu] = other.params_of[nu];
    }
  }
}

// ---------------------------------------------------------------------------
// PatternFamily

PatternFamily::PatternFamily(const ImageGeometry& geometry, FamilyConfig config)
    : config_(std::move(config)), grid_(geometry, config_.quantization) {
  if (config_.max_width < 0 || config_.max_sector < 0) {
    throw DomainError("max_width and max_sector must be >= 0");
  }
}

double PatternFamily::ln_candidate_count() const {
  const auto n = candidate_count();
  return n > 0 ? std::log(static_cast<double>(n)) : 0.0;
}

CumulativeSpace PatternFamily::area_space() const {
  const BinaryImage full(geometry().n_cols, geometry().n_rows, true);
  return integrate(vote(full));
}

const CumulativeSpace& PatternFamily::cached_area_space() const {
  std::call_once(area_once_, [this] { area_cache_ = area_space(); });
  return area_cache_;
}

std::uint64_t PatternFamily::area(const PatternParams& params, const CumulativeSpace& areas) const {
  return count_true(params, areas);
}

std::vector<Pixel> PatternFamily::pixels(const PatternParams& params) const {
  validate(params);
  std::vector<Pixel> out;
  for (int y = 1; y <= geometry().n_rows; ++y) {
    for (int x = 1; x <= geometry().n_cols; ++x) {
      if (contains(params, {x, y})) {
        out.push_back({x, y});
      }
    }
  }
  return out;
}

std::uint64_t PatternFamily::interval_pairs(int cells) const {
  const auto n = static_cast<std::uint64_t>(cells);
  const auto w = static_cast<std::uint64_t>(config_.max_width);
  if (w == 0 || w >= n) {
    return n * (n + 1) / 2;
  }
  return w * n - w * (w - 1) / 2;
}

void PatternFamily::scan_explicit(const CumulativeSpace& counts, const CumulativeSpace& areas, int begin, int end,
                                  BestPerCardinality& best) const {
  for (int i = begin; i < end; ++i) {
    const auto& params = config_.candidates[static_cast<std::size_t>(i)];
    const auto nu = area(params, areas);
    if (nu == 0) {
      continue;
    }
    best.offer(nu, count_true(params, counts), params);
  }
}

BestPerCardinality PatternFamily::parallel_scan(const CumulativeSpace& counts, const CumulativeSpace& areas,
                                                int threads) const {
  const auto max_nu = static_cast<std::size_t>(geometry().pixel_count());
  const int parts = partition_count();
  const int workers = std::max(1, std::min(threads, parts));
  if (workers == 1) {
    BestPerCardinality best(max_nu);
    scan(counts, areas, 0, parts, best);
    return best;
  }
  std::vector<BestPerCardinality> partial(static_cast<std::size_t>(workers), BestPerCardinality(max_nu));
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      const int begin = static_cast<int>(static_cast<long long>(parts) * w / workers);
      const int end = static_cast<int>(static_cast<long long>(parts) * (w + 1) / workers);
      pool.emplace_back([&, w, begin, end] { scan(counts, areas, begin, end, partial[static_cast<std::size_t>(w)]); });
    }
  }
  for (int w = 1; w < workers; ++w) {
    partial[0].merge(partial[static_cast<std::size_t>(w)]);
  }
  return std::move(partial[0]);
}

BestPerCardinality PatternFamily::best_per_cardinality(const BinaryImage& image, int threads) const {
  const auto counts = integrate(vote(image));
  return parallel_scan(counts, cached_area_space(), threads);
}

namespace {

template <class T>
const T& expect(const PatternParams& params, const char* family) {
  const T* p = std::get_if<T>(&params);
  if (!p) {
    throw DomainError(std::string("parameters are not of the ") + family + " family");
  }
  return *p;
}

std::vector<PatternParams> normalized(std::vector<PatternParams> list) {
  std::sort(list.begin(), list.end());
  list.erase(std::unique(list.begin(), list.end()), list.end());
  return list;
}

void check_image(const BinaryImage& image, const ImageGeometry& g) {
  if (image.cols() != g.n_cols || image.rows() != g.n_rows) {
    throw DomainError("image does not match the family geometry");
  }
}

}  // namespace

std::unique_ptr<PatternFamily> make_family(const ImageGeometry& geometry, const FamilyConfig& config) {
  switch (config.family) {
    case Family::Tile:
      return std::make_unique<TileFamily>(geometry, config);
    case Family::Strip:
      return std::make_unique<StripFamily>(geometry, config);
    case Family::Ring:
      return std::make_unique<RingFamily>(geometry, config);
    case Family::BoundedStrip:
      return std::make_unique<BoundedStripFamily>(geometry, config);
  }
  throw DomainError("unknown family");
}

// ---------------------------------------------------------------------------
// Tiles: J is the image itself; x and y are both bip axes (row-major x, y).

TileFamily::TileFamily(const ImageGeometry& geometry, FamilyConfig config)
    : PatternFamily(geometry, std::move(config)) {
  config_.candidates = normalized(std::move(config_.candidates));
  for (const auto& c : config_.candidates) {
    validate(c);
  }
}

std::uint64_t TileFamily::candidate_count() const {
  if (!config_.candidates.empty()) {
    return config_.candidates.size();
  }
  const auto nc = static_cast<std::uint64_t>(geometry().n_cols);
  const auto nr = static_cast<std::uint64_t>(geometry().n_rows);
  return (nc * (nc + 1) / 2) * (nr * (nr + 1) / 2);
}

CumulativeSpace TileFamily::vote(const BinaryImage& image) const {
  check_image(image, geometry());
  const int nc = geometry().n_cols;
  const int nr = geometry().n_rows;
  CumulativeSpace space({AxisSpec{AxisKind::Bip, nc, 1, 1.0, false}, AxisSpec{AxisKind::Bip, nr, 1, 1.0, false}});
  auto* cells = space.lane(0);
  const std::size_t row = space.row_stride();
  for (int y = 1; y <= nr; ++y) {
    for (int x = 1; x <= nc; ++x) {
      if (image.get(x, y)) {
        cells[static_cast<std::size_t>(x) * row + static_cast<std::size_t>(y)] += 1;
      }
    }
  }
  return space;
}

std::uint64_t TileFamily::count_true(const PatternParams& params, const CumulativeSpace& integrated) const {
  validate(params);
  const auto& t = std::get<TileParams>(params);
  return query_rect(integrated, {}, t.x_ul, t.x_lr, t.y_ul, t.y_lr);
}

std::uint64_t TileFamily::area(const PatternParams& params, const CumulativeSpace&) const {
  validate(params);
  const auto& t = std::get<TileParams>(params);
  return static_cast<std::uint64_t>(t.x_lr - t.x_ul + 1) * static_cast<std::uint64_t>(t.y_lr - t.y_ul + 1);
}

bool TileFamily::contains(const PatternParams& params, Pixel p) const {
  const auto& t = std::get<TileParams>(params);
  return p.x >= t.x_ul && p.x <= t.x_lr && p.y >= t.y_ul && p.y <= t.y_lr;
}

std::vector<Pixel> TileFamily::pixels(const PatternParams& params) const {
  validate(params);
  const auto& t = std::get<TileParams>(params);
  std::vector<Pixel> out;
  for (int y = t.y_ul; y <= t.y_lr; ++y) {
    for (int x = t.x_ul; x <= t.x_lr; ++x) {
      out.push_back({x, y});
    }
  }
  return out;
}

void TileFamily::validate(const PatternParams& params) const {
  const auto& t = expect<TileParams>(params, "tile");
  if (t.x_ul < 1 || t.y_ul < 1 || t.x_lr < t.x_ul || t.y_lr < t.y_ul || t.x_lr > geometry().n_cols ||
      t.y_lr > geometry().n_rows) {
    throw DomainError("tile corners outside the image or out of order");
  }
}

int TileFamily::partition_count() const {
  return config_.candidates.empty() ? geometry().n_cols : static_cast<int>(config_.candidates.size());
}

void TileFamily::scan(const CumulativeSpace& counts, const CumulativeSpace& areas, int begin, int end,
                      BestPerCardinality& best) const {
  if (!config_.candidates.empty()) {
    scan_explicit(counts, areas, begin, end, best);
    return;
  }
  const int nc = geometry().n_cols;
  const int nr = geometry().n_rows;
  const auto* cells = counts.lane(0);
  const std::size_t row = counts.row_stride();
  auto* kappa_of = best.kappa_of.data();
  for (int x_ul = begin + 1; x_ul <= end; ++x_ul) {
    const auto* top = cells + static_cast<std::size_t>(x_ul - 1) * row;
    for (int y_ul = 1; y_ul <= nr; ++y_ul) {
      for (int x_lr = x_ul; x_lr <= nc; ++x_lr) {
        const auto* bottom = cells + static_cast<std::size_t>(x_lr) * row;
        const std::uint64_t width = static_cast<std::uint64_t>(x_lr - x_ul + 1);
        const std::uint64_t base = static_cast<std::uint64_t>(top[y_ul - 1]) - bottom[y_ul - 1];
        for (int y_lr = y_ul; y_lr <= nr; ++y_lr) {
          const std::uint64_t kappa = static_cast<std::uint64_t>(bottom[y_lr]) - top[y_lr] + base;
          const std::uint64_t nu = width * static_cast<std::uint64_t>(y_lr - y_ul + 1);
          if (kappa > kappa_of[nu]) {
            kappa_of[nu] = kappa;
            best.params_of[nu] = TileParams{x_ul, y_ul, x_lr, y_lr};
          }
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Strips: the classic Hough space, theta mono and signed rho bip.

StripFamily::StripFamily(const ImageGeometry& geometry, FamilyConfig config)
    : PatternFamily(geometry, std::move(config)) {
  config_.candidates = normalized(std::move(config_.candidates));
  for (const auto& c : config_.candidates) {
    validate(c);
  }
}

std::uint64_t StripFamily::candidate_count() const {
  if (!config_.candidates.empty()) {
    return config_.candidates.size();
  }
  return static_cast<std::uint64_t>(grid_.theta_cells()) * interval_pairs(grid_.rho_cells());
}

CumulativeSpace StripFamily::vote(const BinaryImage& image) const {
  check_image(image, geometry());
  const int half = grid_.rho_half();
  CumulativeSpace space({AxisSpec{AxisKind::Mono, grid_.theta_cells(), 1, grid_.theta_step(), false},
                         AxisSpec{AxisKind::Bip, grid_.rho_cells(), half + 1, grid_.rho_step(), false}});
  const int n_theta = grid_.theta_cells();
  for (int y = 1; y <= image.rows(); ++y) {
    for (int x = 1; x <= image.cols(); ++x) {
      if (!image.get(x, y)) {
        continue;
      }
      for (int k = 0; k < n_theta; ++k) {
        space.lane(static_cast<std::size_t>(k))[grid_.rho_cell(x, y, k) + half + 1] += 1;
      }
    }
  }
  return space;
}

std::uint64_t StripFamily::count_true(const PatternParams& params, const CumulativeSpace& integrated) const {
  validate(params);
  const auto& s = std::get<StripParams>(params);
  const int half = grid_.rho_half();
  const std::array<int, 1> mono{s.theta + 1};
  return query_interval(integrated, mono, s.rho0 + half + 1, s.rho1 + half + 1);
}

bool StripFamily::contains(const PatternParams& params, Pixel p) const {
  const auto& s = std::get<StripParams>(params);
  const int c = grid_.rho_cell(p.x, p.y, s.theta);
  return c >= s.rho0 && c <= s.rho1;
}

void StripFamily::validate(const PatternParams& params) const {
  const auto& s = expect<StripParams>(params, "strip");
  const int half = grid_.rho_half();
  if (s.theta < 0 || s.theta >= grid_.theta_cells() || s.rho0 < -half || s.rho1 > half || s.rho0 > s.rho1) {
    throw DomainError("strip parameters outside the grid");
  }
}

int StripFamily::partition_count() const {
  return config_.candidates.empty() ? grid_.theta_cells() : static_cast<int>(config_.candidates.size());
}

void StripFamily::scan(const CumulativeSpace& counts, const CumulativeSpace& areas, int begin, int end,
                       BestPerCardinality& best) const {
  if (!config_.candidates.empty()) {
    scan_explicit(counts, areas, begin, end, best);
    return;
  }
  const int half = grid_.rho_half();
  const int cells = grid_.rho_cells();
  const int width = config_.max_width > 0 ? config_.max_width : cells;
  auto* kappa_of = best.kappa_of.data();
  for (int k = begin; k < end; ++k) {
    const auto* c = counts.lane(static_cast<std::size_t>(k));
    const auto* a = areas.lane(static_cast<std::size_t>(k));
    for (int lo = 1; lo <= cells; ++lo) {
      const int hi_end = std::min(cells, lo + width - 1);
      for (int hi = lo; hi <= hi_end; ++hi) {
        const std::uint64_t kappa = lane_ops::interval(c, lo, hi);
        const std::uint64_t nu = lane_ops::interval(a, lo, hi);
        if (kappa > kappa_of[nu]) {
          kappa_of[nu] = kappa;
          best.params_of[nu] = StripParams{k, lo - half - 1, hi - half - 1};
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Rings: circle Hough space, center (x0, y0) mono on a stride grid, radius bip.

RingFamily::RingFamily(const ImageGeometry& geometry, FamilyConfig config)
    : PatternFamily(geometry, std::move(config)) {
  config_.candidates = normalized(std::move(config_.candidates));
  for (const auto& c : config_.candidates) {
    validate(c);
  }
}

int RingFamily::center_slot_x(int x0) const {
  const int s = grid_.center_stride();
  if (x0 < 1 || x0 > geometry().n_cols || (x0 - 1) % s != 0) {
    throw DomainError("ring center column is not on the center grid");
  }
  return (x0 - 1) / s;
}

int RingFamily::center_slot_y(int y0) const {
  const int s = grid_.center_stride();
  if (y0 < 1 || y0 > geometry().n_rows || (y0 - 1) % s != 0) {
    throw DomainError("ring center row is not on the center grid");
  }
  return (y0 - 1) / s;
}

std::uint64_t RingFamily::candidate_count() const {
  if (!config_.candidates.empty()) {
    return config_.candidates.size();
  }
  return static_cast<std::uint64_t>(grid_.center_xs().size()) * grid_.center_ys().size() *
         interval_pairs(grid_.ray_max() + 1);
}

CumulativeSpace RingFamily::vote(const BinaryImage& image) const {
  check_image(image, geometry());
  const auto& xs = grid_.center_xs();
  const auto& ys = grid_.center_ys();
  const int rays = grid_.ray_max() + 1;
  const double stride = grid_.center_stride();
  CumulativeSpace space({AxisSpec{AxisKind::Mono, static_cast<int>(xs.size()), 1, stride, false},
                         AxisSpec{AxisKind::Mono, static_cast<int>(ys.size()), 1, stride, false},
                         AxisSpec{AxisKind::Bip, rays, 1, grid_.rho_step(), false}});
  for (int y = 1; y <= image.rows(); ++y) {
    for (int x = 1; x <= image.cols(); ++x) {
      if (!image.get(x, y)) {
        continue;
      }
      std::size_t lane = 0;
      for (const int x0 : xs) {
        for (const int y0 : ys) {
          const int r = grid_.ray_cell(x, y, x0, y0);
          if (r < rays) {
            space.lane(lane)[r + 1] += 1;
          }
          ++lane;
        }
      }
    }
  }
  return space;
}

std::uint64_t RingFamily::count_true(const PatternParams& params, const CumulativeSpace& integrated) const {
  validate(params);
  const auto& r = std::get<RingParams>(params);
  const std::array<int, 2> mono{center_slot_x(r.x0) + 1, center_slot_y(r.y0) + 1};
  return query_interval(integrated, mono, r.rho0 + 1, r.rho1 + 1);
}

bool RingFamily::contains(const PatternParams& params, Pixel p) const {
  const auto& r = std::get<RingParams>(params);
  const int c = grid_.ray_cell(p.x, p.y, r.x0, r.y0);
  return c >= r.rho0 && c <= r.rho1;
}

void RingFamily::validate(const PatternParams& params) const {
  const auto& r = expect<RingParams>(params, "ring");
  center_slot_x(r.x0);
  center_slot_y(r.y0);
  if (r.rho0 < 0 || r.rho0 > r.rho1 || r.rho1 > grid_.ray_max()) {
    throw DomainError("ring radii outside the grid");
  }
}

int RingFamily::partition_count() const {
  return config_.candidates.empty() ? static_cast<int>(grid_.center_xs().size())
                                    : static_cast<int>(config_.candidates.size());
}

void RingFamily::scan(const CumulativeSpace& counts, const CumulativeSpace& areas, int begin, int end,
                      BestPerCardinality& best) const {
  if (!config_.candidates.empty()) {
    scan_explicit(counts, areas, begin, end, best);
    return;
  }
  const auto& xs = grid_.center_xs();
  const auto& ys = grid_.center_ys();
  const int rays = grid_.ray_max() + 1;
  const int width = config_.max_width > 0 ? config_.max_width : rays;
  auto* kappa_of = best.kappa_of.data();
  for (int ix = begin; ix < end; ++ix) {
    for (std::size_t iy = 0; iy < ys.size(); ++iy) {
      const std::size_t lane = static_cast<std::size_t>(ix) * ys.size() + iy;
      const auto* c = counts.lane(lane);
      const auto* a = areas.lane(lane);
      for (int lo = 1; lo <= rays; ++lo) {
        const int hi_end = std::min(rays, lo + width - 1);
        for (int hi = lo; hi <= hi_end; ++hi) {
          const std::uint64_t kappa = lane_ops::interval(c, lo, hi);
          const std::uint64_t nu = lane_ops::interval(a, lo, hi);
          if (kappa > kappa_of[nu]) {
            kappa_of[nu] = kappa;
            best.params_of[nu] = RingParams{xs[static_cast<std::size_t>(ix)], ys[iy], lo - 1, hi - 1};
          }
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Bounded strips: half-line Hough space, theta mono, rho and phi' bip.

BoundedStripFamily::BoundedStripFamily(const ImageGeometry& geometry, FamilyConfig config)
    : PatternFamily(geometry, std::move(config)) {
  const int n_phi = grid_.phi_cells();
  max_sector_ = config_.max_sector > 0 ? std::min(config_.max_sector, n_phi) : std::max(1, n_phi / 2);
  config_.candidates = normalized(std::move(config_.candidates));
  slot_index_.assign(static_cast<std::size_t>(grid_.theta_cells()), -1);
  if (config_.candidates.empty()) {
    for (int k = 0; k < grid_.theta_cells(); ++k) {
      slots_.push_back(k);
    }
  } else {
    for (const auto& c : config_.candidates) {
      const auto& b = expect<BoundedStripParams>(c, "bounded strip");
      if (b.theta < 0 || b.theta >= grid_.theta_cells()) {
        throw DomainError("bounded strip theta outside the grid");
      }
      if (slots_.empty() || slots_.back() != b.theta) {
        slots_.push_back(b.theta);
      }
    }
  }
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    slot_index_[static_cast<std::size_t>(slots_[s])] = static_cast<int>(s);
  }
  for (const auto& c : config_.candidates) {
    validate(c);
  }
}

int BoundedStripFamily::slot_of(int theta) const {
  if (theta < 0 || theta >= grid_.theta_cells() || slot_index_[static_cast<std::size_t>(theta)] < 0) {
    throw DomainError("theta cell is not part of this bounded strip parameter set");
  }
  return slot_index_[static_cast<std::size_t>(theta)];
}

int BoundedStripFamily::sector_length(int phi, int psi) const noexcept {
  const int n = grid_.phi_cells();
  return ((psi - phi) % n + n) % n + 1;
}

std::uint64_t BoundedStripFamily::candidate_count() const {
  if (!config_.candidates.empty()) {
    return config_.candidates.size();
  }
  return static_cast<std::uint64_t>(slots_.size()) * interval_pairs(grid_.rho_cells()) *
         static_cast<std::uint64_t>(grid_.phi_cells()) * static_cast<std::uint64_t>(max_sector_);
}

CumulativeSpace BoundedStripFamily::vote(const BinaryImage& image) const {
  return vote_slots(image, 0, static_cast<int>(slots_.size()));
}

CumulativeSpace BoundedStripFamily::vote_slots(const BinaryImage& image, int first_slot, int last_slot) const {
  check_image(image, geometry());
  if (first_slot < 0 || last_slot > static_cast<int>(slots_.size()) || first_slot >= last_slot) {
    throw DomainError("bad theta slot range");
  }
  const int half = grid_.rho_half();
  const int n_phi = grid_.phi_cells();
  CumulativeSpace space({AxisSpec{AxisKind::Mono, last_slot - first_slot, 1 - first_slot, grid_.theta_step(), false},
                         AxisSpec{AxisKind::Bip, grid_.rho_cells(), half + 1, grid_.rho_step(), false},
                         AxisSpec{AxisKind::Bip, n_phi, 1, grid_.phi_step(), true}});
  const std::size_t row = space.row_stride();
  for (int y = 1; y <= image.rows(); ++y) {
    for (int x = 1; x <= image.cols(); ++x) {
      if (!image.get(x, y)) {
        continue;
      }
      const std::size_t col = static_cast<std::size_t>(grid_.phi_cell(x, y) + 1);
      for (int s = first_slot; s < last_slot; ++s) {
        const int rho = grid_.rho_cell(x, y, slots_[static_cast<std::size_t>(s)]) + half + 1;
        space.lane(static_cast<std::size_t>(s - first_slot))[static_cast<std::size_t>(rho) * row + col] += 1;
      }
    }
  }
  return space;
}

std::uint64_t BoundedStripFamily::count_true(const PatternParams& params, const CumulativeSpace& integrated) const {
  validate(params);
  const auto& b = std::get<BoundedStripParams>(params);
  const int half = grid_.rho_half();
  const std::array<int, 1> mono{slot_of(b.theta) + integrated.axes().front().offset};
  return query_wrapped_rect(integrated, mono, b.rho0 + half + 1, b.rho1 + half + 1, b.phi + 1, b.psi + 1);
}

bool BoundedStripFamily::contains(const PatternParams& params, Pixel p) const {
  const auto& b = std::get<BoundedStripParams>(params);
  const int c = grid_.rho_cell(p.x, p.y, b.theta);
  if (c < b.rho0 || c > b.rho1) {
    return false;
  }
  const int n = grid_.phi_cells();
  const int offset = ((grid_.phi_cell(p.x, p.y) - b.phi) % n + n) % n;
  return offset < sector_length(b.phi, b.psi);
}

void BoundedStripFamily::validate(const PatternParams& params) const {
  const auto& b = expect<BoundedStripParams>(params, "bounded strip");
  const int half = grid_.rho_half();
  const int n = grid_.phi_cells();
  if (b.theta < 0 || b.theta >= grid_.theta_cells() || b.rho0 < -half || b.rho1 > half || b.rho0 > b.rho1 ||
      b.phi < 0 || b.phi >= n || b.psi < 0 || b.psi >= n) {
    throw DomainError("bounded strip parameters outside the grid");
  }
  slot_of(b.theta);
}

int BoundedStripFamily::partition_count() const {
  return config_.candidates.empty() ? static_cast<int>(slots_.size()) : static_cast<int>(config_.candidates.size());
}

void BoundedStripFamily::scan(const CumulativeSpace& counts, const CumulativeSpace& areas, int begin, int end,
                              BestPerCardinality& best) const {
  if (!config_.candidates.empty()) {
    scan_explicit(counts, areas, begin, end, best);
  } else {
    scan_slots(counts, areas, begin, end, best);
  }
}

void BoundedStripFamily::scan_slots(const CumulativeSpace& counts, const CumulativeSpace& areas, int begin, int end,
                                    BestPerCardinality& best) const {
  const int half = grid_.rho_half();
  const int cells = grid_.rho_cells();
  const int n = grid_.phi_cells();
  const int width = config_.max_width > 0 ? config_.max_width : cells;
  const int sector = max_sector_;
  const std::size_t row = counts.row_stride();
  const int offset = counts.axes().front().offset;
  auto* kappa_of = best.kappa_of.data();
  // Column prefix sums of the current rho band along phi': index c holds the
  // band total over phi' cells [1, c]; entry 0 is the virtual zero.
  std::vector<std::uint64_t> band_k(static_cast<std::size_t>(n) + 1);
  std::vector<std::uint64_t> band_a(static_cast<std::size_t>(n) + 1);

  for (int s = begin; s < end; ++s) {
    const int theta = slots_[static_cast<std::size_t>(s)];
    const std::size_t lane = static_cast<std::size_t>(s + offset - 1);
    const auto* c = counts.lane(lane);
    const auto* a = areas.lane(lane);
    for (int lo = 1; lo <= cells; ++lo) {
      const int hi_end = std::min(cells, lo + width - 1);
      for (int hi = lo; hi <= hi_end; ++hi) {
        const auto* ct = c + static_cast<std::size_t>(lo - 1) * row;
        const auto* cb = c + static_cast<std::size_t>(hi) * row;
        const auto* at = a + static_cast<std::size_t>(lo - 1) * row;
        const auto* ab = a + static_cast<std::size_t>(hi) * row;
        if (static_cast<std::uint64_t>(cb[n]) - ct[n] == 0) {
          continue;  // no true pixel anywhere in this band
        }
        for (int col = 0; col <= n; ++col) {
          band_k[static_cast<std::size_t>(col)] = static_cast<std::uint64_t>(cb[col]) - ct[col];
          band_a[static_cast<std::size_t>(col)] = static_cast<std::uint64_t>(ab[col]) - at[col];
        }
        const std::uint64_t total_k = band_k[static_cast<std::size_t>(n)];
        const std::uint64_t total_a = band_a[static_cast<std::size_t>(n)];
        const int rho0 = lo - half - 1;
        const int rho1 = hi - half - 1;
        for (int phi = 0; phi < n; ++phi) {
          const std::uint64_t k_before = band_k[static_cast<std::size_t>(phi)];
          const std::uint64_t a_before = band_a[static_cast<std::size_t>(phi)];
          const int last = phi + sector - 1;  // unwrapped index of the farthest psi
          // Wrapped psi values are numerically smaller, so they come first in lexicographic order.
          for (int psi = 0; psi <= last - n; ++psi) {
            const std::uint64_t kappa = total_k - k_before + band_k[static_cast<std::size_t>(psi) + 1];
            const std::uint64_t nu = total_a - a_before + band_a[static_cast<std::size_t>(psi) + 1];
            if (kappa > kappa_of[nu]) {
              kappa_of[nu] = kappa;
              best.params_of[nu] = BoundedStripParams{theta, rho0, rho1, phi, psi};
            }
          }
          const int psi_end = std::min(n - 1, last);
          for (int psi = phi; psi <= psi_end; ++psi) {
            const std::uint64_t kappa = band_k[static_cast<std::size_t>(psi) + 1] - k_before;
            const std::uint64_t nu = band_a[static_cast<std::size_t>(psi) + 1] - a_before;
            if (kappa > kappa_of[nu]) {
              kappa_of[nu] = kappa;
              best.params_of[nu] = BoundedStripParams{theta, rho0, rho1, phi, psi};
            }
          }
        }
      }
    }
  }
}

BestPerCardinality BoundedStripFamily::best_per_cardinality(const BinaryImage& image, int threads) const {
  const auto max_nu = static_cast<std::size_t>(geometry().pixel_count());
  const std::size_t per_slot = static_cast<std::size_t>(grid_.rho_cells() + 1) * (grid_.phi_cells() + 1);
  const int batch = static_cast<int>(std::max<std::size_t>(1, kBatchCells / per_slot));
  const int n_slots = static_cast<int>(slots_.size());
  const BinaryImage full(geometry().n_cols, geometry().n_rows, true);

  BestPerCardinality best(max_nu);
  for (int first = 0; first < n_slots; first += batch) {
    const int last = std::min(n_slots, first + batch);
    const auto counts = integrate(vote_slots(image, first, last));
    const auto areas = integrate(vote_slots(full, first, last));

    // Candidate range covering this slot batch.
    int begin = first;
    int end = last;
    if (!config_.candidates.empty()) {
      const auto& cands = config_.candidates;
      const int theta_lo = slots_[static_cast<std::size_t>(first)];
      const int theta_hi = slots_[static_cast<std::size_t>(last - 1)];
      auto by_theta = [](const PatternParams& p, int t) { return std::get<BoundedStripParams>(p).theta < t; };
      begin = static_cast<int>(std::lower_bound(cands.begin(), cands.end(), theta_lo, by_theta) - cands.begin());
      end = static_cast<int>(std::lower_bound(cands.begin(), cands.end(), theta_hi + 1, by_theta) - cands.begin());
    }
    const int span = end - begin;
    const int workers = std::max(1, std::min(threads, span));
    if (workers == 1) {
      scan(counts, areas, begin, end, best);
      continue;
    }
    std::vector<BestPerCardinality> partial(static_cast<std::size_t>(workers), BestPerCardinality(max_nu));
    {
      std::vector<std::jthread> pool;
      for (int w = 0; w < workers; ++w) {
        const int b = begin + static_cast<int>(static_cast<long long>(span) * w / workers);
        const int e = begin + static_cast<int>(static_cast<long long>(span) * (w + 1) / workers);
        pool.emplace_back([&, w, b, e] { scan(counts, areas, b, e, partial[static_cast<std::size_t>(w)]); });
      }
    }
    for (auto& p : partial) {
      best.merge(p);
    }
  }
  return best;
}

}  // namespace sigscan
