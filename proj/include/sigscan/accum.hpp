#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace sigscan {

enum class AxisKind { Mono, Bip };

/// One axis of a cumulative space.
///
/// A mono axis carries a single pattern parameter. A bip axis carries two
/// parameters that are the lower and upper bound of an interval of a simpler
/// pattern's parameter. `offset` maps a signed physical cell number to the
/// 1-based index (index = cell + offset); `step` is the physical size of a cell.
struct AxisSpec {
  AxisKind kind = AxisKind::Mono;
  int size = 1;
  int offset = 1;
  double step = 1.0;
  bool circular = false;

  bool operator==(const AxisSpec&) const = default;
};

/// Counts logical cell lookups made by the query functions.
struct ReadCounter {
  std::uint64_t reads = 0;
};

/// Dense discretized parameter grid holding vote counts (J) and, once
/// integrated, inclusive partial sums along the bip axes.
///
/// Mono axes come first and bip axes last (at most two). Indices in the public
/// contract are 1-based. Every bip axis is stored with one extra leading cell at
/// index 0 that is always zero, so that the partial-sum recurrences and the
/// orthotope queries never need boundary tests. Storage is row-major with the
/// last axis contiguous.
class CumulativeSpace {
 public:
  using Cell = std::uint32_t;

  CumulativeSpace() = default;
  explicit CumulativeSpace(std::vector<AxisSpec> axes);

  const std::vector<AxisSpec>& axes() const noexcept { return axes_; }
  int mono_count() const noexcept { return mono_count_; }
  int bip_count() const noexcept { return static_cast<int>(axes_.size()) - mono_count_; }
  bool integrated() const noexcept { return integrated_; }

  /// Number of lanes: product of the mono axis sizes.
  std::size_t lane_count() const noexcept { return lane_count_; }
  /// Stored cells per lane, including the zero padding of the bip axes.
  std::size_t lane_stride() const noexcept { return lane_stride_; }
  /// Padded length of the last axis (size + 1 when it is a bip axis).
  std::size_t row_stride() const noexcept { return row_stride_; }

  /// Flat lane number for a 1-based mono index tuple.
  std::size_t lane_id(std::span<const int> mono) const;

  const Cell* lane(std::size_t lane_id) const noexcept { return cells_.data() + lane_id * lane_stride_; }
  Cell* lane(std::size_t lane_id) noexcept { return cells_.data() + lane_id * lane_stride_; }

  /// Cell value at a full 1-based index tuple; index 0 on a bip axis reads the virtual zero.
  Cell at(std::span<const int> index) const;
  /// Adds votes at a full 1-based index tuple. Only valid before integration.
  void add(std::span<const int> index, Cell votes = 1);

  std::span<const Cell> raw() const noexcept { return cells_; }

  /// Cell-wise sum; both spaces must have identical axes and integration state.
  CumulativeSpace& operator+=(const CumulativeSpace& other);

  bool operator==(const CumulativeSpace& other) const = default;

 private:
  friend CumulativeSpace integrate_one(CumulativeSpace space);
  friend CumulativeSpace integrate_two(CumulativeSpace space);
  friend CumulativeSpace integrate(CumulativeSpace space);
  friend CumulativeSpace read_csv(std::istream& in, std::vector<AxisSpec> axes, bool integrated);

  std::size_t flat(std::span<const int> index) const;

  std::vector<AxisSpec> axes_;
  std::vector<Cell> cells_;
  int mono_count_ = 0;
  std::size_t lane_count_ = 0;
  std::size_t lane_stride_ = 0;
  std::size_t row_stride_ = 0;
  bool integrated_ = false;
};

/// Inclusive prefix sums along the single bip axis (which must be last).
CumulativeSpace integrate_one(CumulativeSpace space);
/// 2-D inclusive prefix sums over the two trailing bip axes.
CumulativeSpace integrate_two(CumulativeSpace space);
/// Dispatches on the number of bip axes (0 only flips the flag).
CumulativeSpace integrate(CumulativeSpace space);

/// Sum of J over [lo, hi] on the last (bip) axis of a lane: 2 lookups.
std::uint64_t query_interval(const CumulativeSpace& space, std::span<const int> mono, int lo, int hi,
                             ReadCounter* counter = nullptr);

/// Sum of J over [lo1, hi1] x [lo2, hi2] on the two bip axes of a lane: 4 lookups.
std::uint64_t query_rect(const CumulativeSpace& space, std::span<const int> mono, int lo1, int hi1, int lo2,
                         int hi2, ReadCounter* counter = nullptr);

/// query_interval on a circular last axis; lo > hi wraps across the seam.
std::uint64_t query_wrapped_interval(const CumulativeSpace& space, std::span<const int> mono, int lo, int hi,
                                     ReadCounter* counter = nullptr);

/// query_rect whose second bip axis is circular; lo2 > hi2 wraps across the seam.
std::uint64_t query_wrapped_rect(const CumulativeSpace& space, std::span<const int> mono, int lo1, int hi1,
                                 int lo2, int hi2, ReadCounter* counter = nullptr);

namespace lane_ops {

// Branch-free kernels over a padded lane; callers guarantee 1 <= lo <= hi <= size.

inline std::uint64_t interval(const CumulativeSpace::Cell* lane, int lo, int hi) noexcept {
  return static_cast<std::uint64_t>(lane[hi]) - lane[lo - 1];
}

inline std::uint64_t rect(const CumulativeSpace::Cell* lane, std::size_t row, int lo1, int hi1, int lo2,
                          int hi2) noexcept {
  const auto* top = lane + static_cast<std::size_t>(lo1 - 1) * row;
  const auto* bottom = lane + static_cast<std::size_t>(hi1) * row;
  return static_cast<std::uint64_t>(bottom[hi2]) + top[lo2 - 1] - top[hi2] - bottom[lo2 - 1];
}

inline std::uint64_t wrapped_rect(const CumulativeSpace::Cell* lane, std::size_t row, int size2, int lo1, int hi1,
                                  int lo2, int hi2) noexcept {
  if (lo2 <= hi2) {
    return rect(lane, row, lo1, hi1, lo2, hi2);
  }
  return rect(lane, row, lo1, hi1, lo2, size2) + rect(lane, row, lo1, hi1, 1, hi2);
}

}  // namespace lane_ops

/// Debug dump: one header line of axis sizes, then one line per last-axis row.
void write_csv(std::ostream& out, const CumulativeSpace& space);
/// Reads a dump written by write_csv; `axes` supplies kinds and sizes, which must match the header.
CumulativeSpace read_csv(std::istream& in, std::vector<AxisSpec> axes, bool integrated);

}  // namespace sigscan
