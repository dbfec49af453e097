#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sigscan/image.hpp"

namespace sigscan::eval {

/// Euclidean disk dilation: a pixel is set iff some true pixel lies within `radius`.
BinaryImage dilate(const BinaryImage& mask, double radius);

struct PRScore {
  double precision = 1.0;
  double recall = 1.0;
  double radius = 0.0;
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
};

/// Precision against the dilated ground truth, recall against the dilated
/// detection. An empty denominator scores 1.
PRScore precision_recall(const BinaryImage& detected, const BinaryImage& ground_truth, double radius);

struct Summary {
  double mean = 0.0;
  double median = 0.0;
  double p25 = 0.0;
  double p75 = 0.0;
};

/// Percentiles use linear interpolation between order statistics.
Summary summarize(std::vector<double> values);

struct ImageScore {
  std::string name;
  PRScore score;
};

struct BatchResult {
  std::vector<double> radii;
  std::vector<ImageScore> images;  // grouped by radius, names sorted within each group
  std::vector<Summary> precision;  // one per radius
  std::vector<Summary> recall;
};

/// Scores pairs of masks sharing a file name; `det` and `gt` are both files or both directories.
BatchResult evaluate(const std::filesystem::path& det, const std::filesystem::path& gt,
                     const std::vector<double>& radii);
BatchResult evaluate(const std::vector<std::pair<std::string, std::pair<BinaryImage, BinaryImage>>>& pairs,
                     const std::vector<double>& radii);

/// Header "kind,name,radius,precision,recall,tp,fp,fn"; kind is image, mean,
/// median, p25 or p75 (statistic rows leave name and counts empty).
void write_csv(std::ostream& out, const BatchResult& result);

}  // namespace sigscan::eval
