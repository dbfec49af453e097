#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sigscan/image.hpp"
#include "sigscan/nfa.hpp"
#include "sigscan/patterns.hpp"
#include "sigscan/random.hpp"

namespace sigscan {

struct Detection {
  PatternParams params;
  std::uint64_t kappa = 0;
  std::uint64_t nu = 0;
  double s = 0.0;
  int iteration = 0;
};

/// One point of the per-iteration "best significance versus cardinality" curve.
struct CurvePoint {
  int iteration = 0;
  std::uint64_t nu = 0;
  std::uint64_t kappa = 0;
  double s = 0.0;
};

/// Significance of a set of patterns from the counts over the union of their
/// supports and the number of members.
using SetSignificanceFn =
    std::function<double(std::uint64_t union_kappa, std::uint64_t union_nu, std::size_t members, const NaiveModel&)>;

/// Default policy: Hoeffding significance of the union with one ln eta2 test budget per member.
double union_significance(std::uint64_t union_kappa, std::uint64_t union_nu, std::size_t members,
                          const NaiveModel& model);

struct DetectionSet {
  std::vector<Detection> detections;
  double set_significance = 0.0;
  NaiveModel model;
  std::uint64_t candidate_count = 0;
  /// Union of the pixels of all accepted patterns.
  BinaryImage support;
  /// Image left after removing the exceeding pixels of every accepted pattern.
  BinaryImage residual;
  std::vector<CurvePoint> curve;
};

struct DetectOptions {
  /// Replaces the model estimated from the image (p and ln eta2).
  std::optional<NaiveModel> model;
  /// Replaces only ln eta2 (still estimating p from the image).
  std::optional<double> ln_eta2;
  std::uint64_t seed = 1;
  int threads = 1;
  /// 0 = run until the stopping rule fires.
  int max_iterations = 0;
  SetSignificanceFn set_policy = union_significance;
};

/// Scans every candidate of an already voted and integrated pair of spaces.
BestPerCardinality scan_candidates(const PatternFamily& family, const CumulativeSpace& counts,
                                   const CumulativeSpace& areas);

/// Most significant entry among cardinalities whose density exceeds p, or
/// nothing when no entry has positive significance. Ties go to the smaller nu.
std::optional<Detection> pick_most_significant(const BestPerCardinality& best, const NaiveModel& model);

/// Significance of set ∪ {candidate}, counted on the original image.
double set_significance(const DetectionSet& set, const Detection& candidate, const BinaryImage& original,
                        const PatternFamily& family, const SetSignificanceFn& policy = union_significance);

/// Clears max(kappa - floor(p nu), 0) of the true pixels inside the pattern,
/// chosen by a seeded shuffle. Returns the number of cleared pixels.
std::uint64_t remove_pattern(BinaryImage& image, const Detection& detection, const NaiveModel& model,
                             const PatternFamily& family, Rng& rng);

/// Greedy extraction of the most significant patterns.
DetectionSet detect_all(const BinaryImage& image, const FamilyConfig& config, const DetectOptions& options = {});
/// Same, with a prebuilt family (its geometry must match the image).
DetectionSet detect_all(const BinaryImage& image, const PatternFamily& family, const DetectOptions& options = {});

}  // namespace sigscan
