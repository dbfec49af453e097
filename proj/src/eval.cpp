#include "sigscan/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>

#include "sigscan/errors.hpp"
#include "sigscan/pnm.hpp"
#include "sigscan/report.hpp"

namespace sigscan::eval {

namespace fs = std::filesystem;

BinaryImage dilate(const BinaryImage& mask, double radius) {
  if (!(radius >= 0.0)) {
    throw DomainError("dilation radius must be >= 0");
  }
  const int r = static_cast<int>(std::floor(radius + 1e-9));
  std::vector<Pixel> disk;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      if (dx * dx + dy * dy <= radius * radius + 1e-9) {
        disk.push_back({dx, dy});
      }
    }
  }
  BinaryImage out(mask.cols(), mask.rows());
  for (int y = 1; y <= mask.rows(); ++y) {
    for (int x = 1; x <= mask.cols(); ++x) {
      if (!mask.get(x, y)) {
        continue;
      }
      for (const auto& d : disk) {
        if (mask.contains(x + d.x, y + d.y)) {
          out.set(x + d.x, y + d.y, true);
        }
      }
    }
  }
  return out;
}

PRScore precision_recall(const BinaryImage& detected, const BinaryImage& ground_truth, double radius) {
  if (detected.cols() != ground_truth.cols() || detected.rows() != ground_truth.rows()) {
    throw DomainError("detection and ground-truth masks have different sizes");
  }
  PRScore s;
  s.radius = radius;
  const std::uint64_t n_det = detected.count_true();
  const std::uint64_t n_gt = ground_truth.count_true();
  s.tp = (detected & dilate(ground_truth, radius)).count_true();
  s.fp = n_det - s.tp;
  const auto reached = dilate(detected, radius);
  const auto gt = ground_truth.data();
  const auto re = reached.data();
  for (std::size_t i = 0; i < gt.size(); ++i) {
    s.fn += gt[i] && !re[i] ? 1 : 0;
  }
  s.precision = n_det == 0 ? 1.0 : static_cast<double>(s.tp) / static_cast<double>(n_det);
  s.recall = n_gt == 0 ? 1.0 : static_cast<double>(n_gt - s.fn) / static_cast<double>(n_gt);
  return s;
}

Summary summarize(std::vector<double> values) {
  if (values.empty()) {
    throw DomainError("no values to summarize");
  }
  std::sort(values.begin(), values.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  Summary s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  s.median = quantile(0.5);
  s.p25 = quantile(0.25);
  s.p75 = quantile(0.75);
  return s;
}

BatchResult evaluate(const std::vector<std::pair<std::string, std::pair<BinaryImage, BinaryImage>>>& pairs,
                     const std::vector<double>& radii) {
  if (pairs.empty()) {
    throw DomainError("no mask pairs to evaluate");
  }
  if (radii.empty()) {
    throw DomainError("at least one dilation radius is required");
  }
  BatchResult out;
  out.radii = radii;
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return pairs[a].first < pairs[b].first; });
  for (const double r : radii) {
    std::vector<double> prec;
    std::vector<double> rec;
    for (const auto i : order) {
      const auto& [name, masks] = pairs[i];
      const auto s = precision_recall(masks.first, masks.second, r);
      out.images.push_back({name, s});
      prec.push_back(s.precision);
      rec.push_back(s.recall);
    }
    out.precision.push_back(summarize(prec));
    out.recall.push_back(summarize(rec));
  }
  return out;
}

BatchResult evaluate(const fs::path& det, const fs::path& gt, const std::vector<double>& radii) {
  std::vector<std::pair<std::string, std::pair<BinaryImage, BinaryImage>>> pairs;
  const bool det_dir = fs::is_directory(det);
  if (det_dir != fs::is_directory(gt)) {
    throw DomainError("detection and ground truth must both be files or both be directories");
  }
  if (!det_dir) {
    pairs.push_back({det.filename().string(), {read_pnm(det), read_pnm(gt)}});
    return evaluate(pairs, radii);
  }
  std::map<std::string, fs::path> det_files;
  for (const auto& e : fs::directory_iterator(det)) {
    if (e.is_regular_file()) {
      det_files[e.path().filename().string()] = e.path();
    }
  }
  for (const auto& [name, path] : det_files) {
    const auto other = gt / name;
    if (!fs::is_regular_file(other)) {
      throw DomainError("no ground truth for " + name);
    }
    pairs.push_back({name, {read_pnm(path), read_pnm(other)}});
  }
  return evaluate(pairs, radii);
}

void write_csv(std::ostream& out, const BatchResult& result) {
  out << "kind,name,radius,precision,recall,tp,fp,fn\n";
  for (const auto& im : result.images) {
    const auto& s = im.score;
    out << "image," << im.name << ',' << format_number(s.radius) << ',' << format_number(s.precision) << ','
        << format_number(s.recall) << ',' << s.tp << ',' << s.fp << ',' << s.fn << '\n';
  }
  for (std::size_t i = 0; i < result.radii.size(); ++i) {
    const auto& p = result.precision[i];
    const auto& r = result.recall[i];
    const std::string radius = format_number(result.radii[i]);
    const std::pair<const char*, std::pair<double, double>> rows[] = {
        {"mean", {p.mean, r.mean}}, {"median", {p.median, r.median}}, {"p25", {p.p25, r.p25}}, {"p75", {p.p75, r.p75}}};
    for (const auto& [kind, v] : rows) {
      out << kind << ",," << radius << ',' << format_number(v.first) << ',' << format_number(v.second) << ",,,\n";
    }
  }
}

}  // namespace sigscan::eval
