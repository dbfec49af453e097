#include "sigscan/detect.hpp"

#include <cmath>

#include "sigscan/errors.hpp"

namespace sigscan {

double union_significance(std::uint64_t union_kappa, std::uint64_t union_nu, std::size_t members,
                          const NaiveModel& model) {
  return kl_mass(union_kappa, union_nu, model.p) - static_cast<double>(members) * model.ln_eta2;
}

BestPerCardinality scan_candidates(const PatternFamily& family, const CumulativeSpace& counts,
                                   const CumulativeSpace& areas) {
  if (!counts.integrated() || !areas.integrated()) {
    throw PreconditionError("scan_candidates needs integrated spaces");
  }
  BestPerCardinality best(static_cast<std::size_t>(family.geometry().pixel_count()));
  family.scan(counts, areas, 0, family.partition_count(), best);
  return best;
}

std::optional<Detection> pick_most_significant(const BestPerCardinality& best, const NaiveModel& model) {
  std::optional<Detection> out;
  double s_max = 0.0;
  for (std::size_t nu = 1; nu < best.kappa_of.size(); ++nu) {
    const auto kappa = best.kappa_of[nu];
    if (kappa == 0 || !(static_cast<double>(kappa) > model.p * static_cast<double>(nu))) {
      continue;
    }
    const double s = kl_mass(kappa, nu, model.p) - model.ln_eta2;
    if (s > s_max) {
      s_max = s;
      out = Detection{best.params_of[nu], kappa, nu, s, 0};
    }
  }
  return out;
}

namespace {

struct UnionCounts {
  std::uint64_t kappa = 0;
  std::uint64_t nu = 0;
};

UnionCounts union_counts(const BinaryImage& support, const std::vector<Pixel>& extra, const BinaryImage& original) {
  UnionCounts u;
  const auto s = support.data();
  const auto o = original.data();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i]) {
      ++u.nu;
      u.kappa += o[i];
    }
  }
  for (const auto& p : extra) {
    if (!support.get(p)) {
      ++u.nu;
      u.kappa += original.get(p) ? 1 : 0;
    }
  }
  return u;
}

}  // namespace

double set_significance(const DetectionSet& set, const Detection& candidate, const BinaryImage& original,
                        const PatternFamily& family, const SetSignificanceFn& policy) {
  BinaryImage support = set.support;
  if (support.empty()) {
    support = BinaryImage(original.cols(), original.rows());
  }
  const auto u = union_counts(support, family.pixels(candidate.params), original);
  return policy(u.kappa, u.nu, set.detections.size() + 1, set.model);
}

std::uint64_t remove_pattern(BinaryImage& image, const Detection& detection, const NaiveModel& model,
                             const PatternFamily& family, Rng& rng) {
  std::vector<Pixel> on;
  for (const auto& p : family.pixels(detection.params)) {
    if (image.get(p)) {
      on.push_back(p);
    }
  }
  const auto nu = static_cast<double>(detection.nu);
  const auto keep = static_cast<std::uint64_t>(std::floor(model.p * nu));
  if (on.size() <= keep) {
    return 0;
  }
  shuffle(std::span<Pixel>(on), rng);
  const std::uint64_t clear = on.size() - keep;
  for (std::uint64_t i = 0; i < clear; ++i) {
    image.set(on[static_cast<std::size_t>(i)], false);
  }
  return clear;
}

DetectionSet detect_all(const BinaryImage& image, const FamilyConfig& config, const DetectOptions& options) {
  if (image.empty()) {
    throw DomainError("detection needs a nonempty image");
  }
  const auto family = make_family(ImageGeometry::of(image.cols(), image.rows()), config);
  return detect_all(image, *family, options);
}

DetectionSet detect_all(const BinaryImage& image, const PatternFamily& family, const DetectOptions& options) {
  if (image.empty()) {
    throw DomainError("detection needs a nonempty image");
  }
  if (image.cols() != family.geometry().n_cols || image.rows() != family.geometry().n_rows) {
    throw DomainError("image does not match the family geometry");
  }
  DetectionSet set;
  set.candidate_count = family.candidate_count();
  set.support = BinaryImage(image.cols(), image.rows());
  set.residual = image;

  const auto n = static_cast<double>(image.pixel_count());
  if (options.model) {
    set.model = *options.model;
  } else {
    set.model.p = static_cast<double>(image.count_true()) / n;
    set.model.ln_eta2 = options.ln_eta2 ? *options.ln_eta2 : family.ln_candidate_count();
  }
  set.model.validate();
  if (set.model.p <= 0.0 || set.model.p >= 1.0) {
    return set;
  }

  Rng rng(options.seed);
  BinaryImage& current = set.residual;
  for (int iteration = 1;; ++iteration) {
    if (options.max_iterations > 0 && iteration > options.max_iterations) {
      break;
    }
    const auto best = family.best_per_cardinality(current, options.threads);
    for (std::size_t nu = 1; nu < best.kappa_of.size(); ++nu) {
      const auto kappa = best.kappa_of[nu];
      if (kappa > 0) {
        set.curve.push_back({iteration, nu, kappa, kl_mass(kappa, nu, set.model.p) - set.model.ln_eta2});
      }
    }
    auto candidate = pick_most_significant(best, set.model);
    if (!candidate) {
      break;
    }
    const double s_union = set_significance(set, *candidate, image, family, options.set_policy);
    if (!(s_union > set.set_significance)) {
      break;
    }
    candidate->iteration = iteration;
    set.set_significance = s_union;
    for (const auto& p : family.pixels(candidate->params)) {
      set.support.set(p, true);
    }
    remove_pattern(current, *candidate, set.model, family, rng);
    set.detections.push_back(std::move(*candidate));
  }
  return set;
}

}  // namespace sigscan
