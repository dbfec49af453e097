#include "sigscan/accum.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "sigscan/errors.hpp"

namespace sigscan {

namespace {

std::size_t padded(const AxisSpec& axis) {
  return static_cast<std::size_t>(axis.size) + (axis.kind == AxisKind::Bip ? 1 : 0);
}

}  // namespace

CumulativeSpace::CumulativeSpace(std::vector<AxisSpec> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) {
    throw DomainError("cumulative space needs at least one axis");
  }
  bool seen_bip = false;
  for (const auto& axis : axes_) {
    if (axis.size < 1 || !(axis.step > 0.0)) {
      throw DomainError("axis size must be >= 1 and step > 0");
    }
    if (axis.kind == AxisKind::Bip) {
      seen_bip = true;
    } else if (seen_bip) {
      throw DomainError("mono axes must precede bip axes");
    } else {
      ++mono_count_;
    }
  }
  if (bip_count() > 2) {
    throw DomainError("at most two bip axes are supported");
  }
  lane_count_ = 1;
  for (int i = 0; i < mono_count_; ++i) {
    lane_count_ *= static_cast<std::size_t>(axes_[i].size);
  }
  lane_stride_ = 1;
  for (std::size_t i = mono_count_; i < axes_.size(); ++i) {
    lane_stride_ *= padded(axes_[i]);
  }
  row_stride_ = padded(axes_.back());
  if (bip_count() == 0) {
    row_stride_ = 1;
  }
  cells_.assign(lane_count_ * lane_stride_, 0);
}

std::size_t CumulativeSpace::lane_id(std::span<const int> mono) const {
  if (mono.size() != static_cast<std::size_t>(mono_count_)) {
    throw DomainError("mono index arity mismatch");
  }
  std::size_t id = 0;
  for (int i = 0; i < mono_count_; ++i) {
    const int v = mono[i];
    if (v < 1 || v > axes_[i].size) {
      throw DomainError("mono index out of range");
    }
    id = id * static_cast<std::size_t>(axes_[i].size) + static_cast<std::size_t>(v - 1);
  }
  return id;
}

std::size_t CumulativeSpace::flat(std::span<const int> index) const {
  if (index.size() != axes_.size()) {
    throw DomainError("index arity mismatch");
  }
  std::size_t id = lane_id(index.first(mono_count_));
  std::size_t within = 0;
  for (std::size_t i = mono_count_; i < axes_.size(); ++i) {
    const int v = index[i];
    if (v < 0 || v > axes_[i].size) {
      throw DomainError("bip index out of range");
    }
    within = within * padded(axes_[i]) + static_cast<std::size_t>(v);
  }
  return id * lane_stride_ + within;
}

CumulativeSpace::Cell CumulativeSpace::at(std::span<const int> index) const { return cells_[flat(index)]; }

void CumulativeSpace::add(std::span<const int> index, Cell votes) {
  if (integrated_) {
    throw PreconditionError("cannot vote into an integrated space");
  }
  for (std::size_t i = mono_count_; i < axes_.size(); ++i) {
    if (index[i] == 0) {
      throw DomainError("index 0 is the virtual zero and cannot hold votes");
    }
  }
  cells_[flat(index)] += votes;
}

CumulativeSpace& CumulativeSpace::operator+=(const CumulativeSpace& other) {
  if (axes_ != other.axes_ || integrated_ != other.integrated_) {
    throw DomainError("cannot add spaces of different shape or state");
  }
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    cells_[i] += other.cells_[i];
  }
  return *this;
}

CumulativeSpace integrate_one(CumulativeSpace space) {
  if (space.bip_count() != 1) {
    throw PreconditionError("integrate_one needs exactly one bip axis");
  }
  if (space.integrated_) {
    throw PreconditionError("space is already integrated");
  }
  const std::size_t stride = space.lane_stride_;
  for (std::size_t lane = 0; lane < space.lane_count_; ++lane) {
    auto* cell = space.lane(lane);
    for (std::size_t a = 1; a < stride; ++a) {
      cell[a] += cell[a - 1];
    }
  }
  space.integrated_ = true;
  return space;
}

CumulativeSpace integrate_two(CumulativeSpace space) {
  if (space.bip_count() != 2) {
    throw PreconditionError("integrate_two needs exactly two bip axes");
  }
  if (space.integrated_) {
    throw PreconditionError("space is already integrated");
  }
  const std::size_t row = space.row_stride_;
  const std::size_t rows = space.lane_stride_ / row;
  for (std::size_t lane = 0; lane < space.lane_count_; ++lane) {
    auto* cell = space.lane(lane);
    for (std::size_t a = 1; a < rows; ++a) {
      auto* cur = cell + a * row;
      const auto* prev = cur - row;
      for (std::size_t b = 1; b < row; ++b) {
        cur[b] += prev[b] + cur[b - 1] - prev[b - 1];
      }
    }
  }
  space.integrated_ = true;
  return space;
}

CumulativeSpace integrate(CumulativeSpace space) {
  switch (space.bip_count()) {
    case 1:
      return integrate_one(std::move(space));
    case 2:
      return integrate_two(std::move(space));
    default:
      if (space.integrated_) {
        throw PreconditionError("space is already integrated");
      }
      space.integrated_ = true;
      return space;
  }
}

namespace {

void require_integrated(const CumulativeSpace& space, int bips) {
  if (!space.integrated()) {
    throw PreconditionError("query on a space that has not been integrated");
  }
  if (space.bip_count() != bips) {
    throw PreconditionError("query arity does not match the number of bip axes");
  }
}

void check_range(const AxisSpec& axis, int lo, int hi, bool allow_wrap) {
  if (lo < 1 || hi < 1 || lo > axis.size || hi > axis.size || (!allow_wrap && lo > hi)) {
    throw DomainError("query bounds out of range: [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
  }
}

}  // namespace

std::uint64_t query_interval(const CumulativeSpace& space, std::span<const int> mono, int lo, int hi,
                             ReadCounter* counter) {
  require_integrated(space, 1);
  check_range(space.axes().back(), lo, hi, false);
  const auto* lane = space.lane(space.lane_id(mono));
  if (counter) {
    counter->reads += 2;
  }
  return lane_ops::interval(lane, lo, hi);
}

std::uint64_t query_rect(const CumulativeSpace& space, std::span<const int> mono, int lo1, int hi1, int lo2,
                         int hi2, ReadCounter* counter) {
  require_integrated(space, 2);
  const auto& axes = space.axes();
  check_range(axes[axes.size() - 2], lo1, hi1, false);
  check_range(axes.back(), lo2, hi2, false);
  const auto* lane = space.lane(space.lane_id(mono));
  if (counter) {
    counter->reads += 4;
  }
  return lane_ops::rect(lane, space.row_stride(), lo1, hi1, lo2, hi2);
}

std::uint64_t query_wrapped_interval(const CumulativeSpace& space, std::span<const int> mono, int lo, int hi,
                                     ReadCounter* counter) {
  require_integrated(space, 1);
  const auto& axis = space.axes().back();
  if (!axis.circular) {
    throw PreconditionError("wrapped query on a non-circular axis");
  }
  check_range(axis, lo, hi, true);
  if (lo <= hi) {
    return query_interval(space, mono, lo, hi, counter);
  }
  return query_interval(space, mono, lo, axis.size, counter) + query_interval(space, mono, 1, hi, counter);
}

std::uint64_t query_wrapped_rect(const CumulativeSpace& space, std::span<const int> mono, int lo1, int hi1,
                                 int lo2, int hi2, ReadCounter* counter) {
  require_integrated(space, 2);
  const auto& axis = space.axes().back();
  if (!axis.circular) {
    throw PreconditionError("wrapped query on a non-circular axis");
  }
  check_range(axis, lo2, hi2, true);
  if (lo2 <= hi2) {
    return query_rect(space, mono, lo1, hi1, lo2, hi2, counter);
  }
  return query_rect(space, mono, lo1, hi1, lo2, axis.size, counter) +
         query_rect(space, mono, lo1, hi1, 1, hi2, counter);
}

void write_csv(std::ostream& out, const CumulativeSpace& space) {
  const auto& axes = space.axes();
  for (std::size_t i = 0; i < axes.size(); ++i) {
    out << (i ? "," : "") << axes[i].size;
  }
  out << '\n';
  const int last = axes.back().size;
  std::vector<int> index(axes.size(), 1);
  // Walk every row of the last axis in row-major order, skipping the padding.
  while (true) {
    for (int v = 1; v <= last; ++v) {
      index.back() = v;
      out << (v > 1 ? "," : "") << space.at(index);
    }
    out << '\n';
    int i = static_cast<int>(axes.size()) - 2;
    for (; i >= 0; --i) {
      if (++index[i] <= axes[i].size) {
        break;
      }
      index[i] = 1;
    }
    if (i < 0) {
      break;
    }
  }
}

CumulativeSpace read_csv(std::istream& in, std::vector<AxisSpec> axes, bool integrated) {
  CumulativeSpace space(std::move(axes));
  std::string line;
  if (!std::getline(in, line)) {
    throw FormatError("empty accumulator dump");
  }
  {
    std::istringstream header(line);
    std::string field;
    std::size_t i = 0;
    while (std::getline(header, field, ',')) {
      if (i >= space.axes_.size() || std::stoi(field) != space.axes_[i].size) {
        throw FormatError("accumulator dump header does not match the expected axes");
      }
      ++i;
    }
    if (i != space.axes_.size()) {
      throw FormatError("accumulator dump header does not match the expected axes");
    }
  }
  const auto& ax = space.axes_;
  std::vector<int> index(ax.size(), 1);
  bool done = false;
  while (!done) {
    if (!std::getline(in, line)) {
      throw FormatError("accumulator dump truncated");
    }
    std::istringstream row(line);
    std::string field;
    for (int v = 1; v <= ax.back().size; ++v) {
      if (!std::getline(row, field, ',')) {
        throw FormatError("accumulator dump row too short");
      }
      index.back() = v;
      space.cells_[space.flat(index)] = static_cast<CumulativeSpace::Cell>(std::stoul(field));
    }
    int i = static_cast<int>(ax.size()) - 2;
    for (; i >= 0; --i) {
      if (++index[i] <= ax[i].size) {
        break;
      }
      index[i] = 1;
    }
    done = i < 0;
  }
  space.integrated_ = integrated;
  return space;
}

}  // namespace sigscan
