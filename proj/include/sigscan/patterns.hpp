#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sigscan/accum.hpp"
#include "sigscan/geometry.hpp"
#include "sigscan/image.hpp"

namespace sigscan {

/// Rectangle given by two opposite corners, 1-based pixels, inclusive.
struct TileParams {
  int x_ul = 0;
  int y_ul = 0;
  int x_lr = 0;
  int y_lr = 0;
  auto operator<=>(const TileParams&) const = default;
};

/// Band of parallel lines: normal angle cell `theta` and signed distance cells [rho0, rho1].
struct StripParams {
  int theta = 0;
  int rho0 = 0;
  int rho1 = 0;
  auto operator<=>(const StripParams&) const = default;
};

/// Annulus: center pixel (x0, y0) and radius cells [rho0, rho1].
struct RingParams {
  int x0 = 0;
  int y0 = 0;
  int rho0 = 0;
  int rho1 = 0;
  auto operator<=>(const RingParams&) const = default;
};

/// Strip restricted to the counterclockwise angular sector [phi, psi] (phi' cells about the image center).
struct BoundedStripParams {
  int theta = 0;
  int rho0 = 0;
  int rho1 = 0;
  int phi = 0;
  int psi = 0;
  auto operator<=>(const BoundedStripParams&) const = default;
};

using PatternParams = std::variant<TileParams, StripParams, RingParams, BoundedStripParams>;

enum class Family { Tile, Strip, Ring, BoundedStrip };

std::string_view family_name(Family family);
/// Accepts "tile", "strip", "ring", "bstrip"; throws DomainError otherwise.
Family parse_family(std::string_view name);
Family family_of(const PatternParams& params);

/// Restriction of the discretized parameter set for one family.
struct FamilyConfig {
  Family family = Family::Strip;
  Quantization quantization;
  /// Strips, rings, bounded strips: maximum interval length (rho1 - rho0 + 1) in cells; 0 = unbounded.
  int max_width = 0;
  /// Bounded strips: maximum sector length in phi' cells; 0 = half a turn.
  int max_sector = 0;
  /// When non-empty, the parameter set is exactly this list.
  std::vector<PatternParams> candidates;
};

/// Best true-pixel count per pattern cardinality nu (index 0 unused).
struct BestPerCardinality {
  std::vector<std::uint64_t> kappa_of;
  std::vector<PatternParams> params_of;

  explicit BestPerCardinality(std::size_t max_nu = 0) : kappa_of(max_nu + 1, 0), params_of(max_nu + 1) {}
  std::size_t max_nu() const noexcept { return kappa_of.empty() ? 0 : kappa_of.size() - 1; }
  void reset() noexcept;

  void offer(std::uint64_t nu, std::uint64_t kappa, const PatternParams& params) {
    if (kappa > kappa_of[nu]) {
      kappa_of[nu] = kappa;
      params_of[nu] = params;
    }
  }
  /// Combines private results: larger kappa wins, equal kappa keeps the lexicographically smaller tuple.
  void merge(const BestPerCardinality& other);
};

/// One pattern family bound to an image geometry: discretization, voting,
/// counting, and membership.
class PatternFamily {
 public:
  PatternFamily(const ImageGeometry& geometry, FamilyConfig config);
  virtual ~PatternFamily() = default;

  Family kind() const noexcept { return config_.family; }
  const FamilyConfig& config() const noexcept { return config_; }
  const ParameterGrid& grid() const noexcept { return grid_; }
  const ImageGeometry& geometry() const noexcept { return grid_.geometry(); }

  /// |A|, the number of candidate parameter tuples.
  virtual std::uint64_t candidate_count() const = 0;
  double ln_candidate_count() const;

  /// Vote grid J for an image of this geometry (not integrated).
  virtual CumulativeSpace vote(const BinaryImage& image) const = 0;
  /// Integrated vote grid of the all-true image.
  CumulativeSpace area_space() const;
  /// area_space(), computed once per family object.
  const CumulativeSpace& cached_area_space() const;

  /// Number of true pixels of a pattern read from an integrated vote grid.
  virtual std::uint64_t count_true(const PatternParams& params, const CumulativeSpace& integrated) const = 0;
  /// Number of lattice pixels of a pattern, read from area_space().
  virtual std::uint64_t area(const PatternParams& params, const CumulativeSpace& areas) const;

  virtual bool contains(const PatternParams& params, Pixel pixel) const = 0;
  /// Pixels of the pattern in raster order.
  virtual std::vector<Pixel> pixels(const PatternParams& params) const;

  /// Throws DomainError when params are of another family or outside the grid.
  virtual void validate(const PatternParams& params) const = 0;

  /// Number of slices in which the candidate set is split for parallel scans.
  virtual int partition_count() const = 0;
  /// Scans the candidates of slices [begin, end) in lexicographic order.
  virtual void scan(const CumulativeSpace& counts, const CumulativeSpace& areas, int begin, int end,
                    BestPerCardinality& best) const = 0;

  /// Votes, integrates and scans every candidate; `threads` >= 1 private workers.
  virtual BestPerCardinality best_per_cardinality(const BinaryImage& image, int threads) const;

 protected:
  BestPerCardinality parallel_scan(const CumulativeSpace& counts, const CumulativeSpace& areas, int threads) const;
  void scan_explicit(const CumulativeSpace& counts, const CumulativeSpace& areas, int begin, int end,
                     BestPerCardinality& best) const;
  std::uint64_t interval_pairs(int cells) const;

  FamilyConfig config_;
  ParameterGrid grid_;

 private:
  mutable std::once_flag area_once_;
  mutable CumulativeSpace area_cache_;
};

std::unique_ptr<PatternFamily> make_family(const ImageGeometry& geometry, const FamilyConfig& config);

class TileFamily final : public PatternFamily {
 public:
  TileFamily(const ImageGeometry& geometry, FamilyConfig config);

  std::uint64_t candidate_count() const override;
  CumulativeSpace vote(const BinaryImage& image) const override;
  std::uint64_t count_true(const PatternParams& params, const CumulativeSpace& integrated) const override;
  std::uint64_t area(const PatternParams& params, const CumulativeSpace& areas) const override;
  bool contains(const PatternParams& params, Pixel pixel) const override;
  std::vector<Pixel> pixels(const PatternParams& params) const override;
  void validate(const PatternParams& params) const override;
  int partition_count() const override;
  void scan(const CumulativeSpace& counts, const CumulativeSpace& areas, int begin, int end,
            BestPerCardinality& best) const override;
};

class StripFamily final : public PatternFamily {
 public:
  StripFamily(const ImageGeometry& geometry, FamilyConfig config);

  std::uint64_t candidate_count() const override;
  CumulativeSpace vote(const BinaryImage& image) const override;
  std::uint64_t count_true(const PatternParams& params, const CumulativeSpace& integrated) const override;
  bool contains(const PatternParams& params, Pixel pixel) const override;
  void validate(const PatternParams& params) const override;
  int partition_count() const override;
  void scan(const CumulativeSpace& counts, const CumulativeSpace& areas, int begin, int end,
            BestPerCardinality& best) const override;
};

class RingFamily final : public PatternFamily {
 public:
  RingFamily(const ImageGeometry& geometry, FamilyConfig config);

  std::uint64_t candidate_count() const override;
  CumulativeSpace vote(const BinaryImage& image) const override;
  std::uint64_t count_true(const PatternParams& params, const CumulativeSpace& integrated) const override;
  bool contains(const PatternParams& params, Pixel pixel) const override;
  void validate(const PatternParams& params) const override;
  int partition_count() const override;
  void scan(const CumulativeSpace& counts, const CumulativeSpace& areas, int begin, int end,
            BestPerCardinality& best) const override;

 private:
  int center_slot_x(int x0) const;
  int center_slot_y(int y0) const;
};

/// Bounded strips use a θ axis restricted to the θ cells that occur in the
/// parameter set ("slots"); large spaces are voted and scanned in slot batches.
class BoundedStripFamily final : public PatternFamily {
 public:
  BoundedStripFamily(const ImageGeometry& geometry, FamilyConfig config);

  std::uint64_t candidate_count() const override;
  CumulativeSpace vote(const BinaryImage& image) const override;
  /// Vote grid over the slot range [first_slot, last_slot).
  CumulativeSpace vote_slots(const BinaryImage& image, int first_slot, int last_slot) const;
  std::uint64_t count_true(const PatternParams& params, const CumulativeSpace& integrated) const override;
  bool contains(const PatternParams& params, Pixel pixel) const override;
  void validate(const PatternParams& params) const override;
  int partition_count() const override;
  void scan(const CumulativeSpace& counts, const CumulativeSpace& areas, int begin, int end,
            BestPerCardinality& best) const override;
  BestPerCardinality best_per_cardinality(const BinaryImage& image, int threads) const override;

  const std::vector<int>& theta_slots() const noexcept { return slots_; }
  int max_sector() const noexcept { return max_sector_; }
  /// Sector length in cells of the counterclockwise sector [phi, psi].
  int sector_length(int phi, int psi) const noexcept;
  /// Cell budget for one voting batch.
  static constexpr std::size_t kBatchCells = std::size_t{1} << 24;

 private:
  int slot_of(int theta) const;
  void scan_slots(const CumulativeSpace& counts, const CumulativeSpace& areas, int begin, int end,
                  BestPerCardinality& best) const;

  std::vector<int> slots_;
  std::vector<int> slot_index_;  // theta cell -> slot or -1
  int max_sector_ = 0;
};

}  // namespace sigscan
