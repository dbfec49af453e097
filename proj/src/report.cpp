#include "sigscan/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

namespace sigscan {

namespace {

using nlohmann::ordered_json;

double rounded(double v) {
  if (!std::isfinite(v)) {
    return v;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::stod(buf);
}

ordered_json params_json(const PatternParams& params, const ParameterGrid& grid) {
  ordered_json j;
  const double dr = grid.rho_step();
  if (const auto* t = std::get_if<TileParams>(&params)) {
    j["x_ul"] = t->x_ul;
    j["y_ul"] = t->y_ul;
    j["x_lr"] = t->x_lr;
    j["y_lr"] = t->y_lr;
  } else if (const auto* s = std::get_if<StripParams>(&params)) {
    j["theta"] = rounded(grid.theta(s->theta));
    j["rho0"] = rounded(s->rho0 * dr);
    j["rho1"] = rounded(s->rho1 * dr);
    j["theta_cell"] = s->theta;
    j["rho0_cell"] = s->rho0;
    j["rho1_cell"] = s->rho1;
  } else if (const auto* r = std::get_if<RingParams>(&params)) {
    j["x0"] = r->x0;
    j["y0"] = r->y0;
    j["rho0"] = rounded(r->rho0 * dr);
    j["rho1"] = rounded(r->rho1 * dr);
    j["rho0_cell"] = r->rho0;
    j["rho1_cell"] = r->rho1;
  } else {
    const auto& b = std::get<BoundedStripParams>(params);
    j["theta"] = rounded(grid.theta(b.theta));
    j["rho0"] = rounded(b.rho0 * dr);
    j["rho1"] = rounded(b.rho1 * dr);
    // Angular cells are reported by their lower edge.
    j["phi"] = rounded(b.phi * grid.phi_step());
    j["psi"] = rounded(b.psi * grid.phi_step());
    j["theta_cell"] = b.theta;
    j["rho0_cell"] = b.rho0;
    j["rho1_cell"] = b.rho1;
    j["phi_cell"] = b.phi;
    j["psi_cell"] = b.psi;
  }
  return j;
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string params_text(const PatternParams& params) {
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        auto kv = [](const char* k, int v) { return std::string(k) + "=" + std::to_string(v); };
        if constexpr (std::is_same_v<T, TileParams>) {
          return kv("x_ul", p.x_ul) + " " + kv("y_ul", p.y_ul) + " " + kv("x_lr", p.x_lr) + " " + kv("y_lr", p.y_lr);
        } else if constexpr (std::is_same_v<T, StripParams>) {
          return kv("theta", p.theta) + " " + kv("rho0", p.rho0) + " " + kv("rho1", p.rho1);
        } else if constexpr (std::is_same_v<T, RingParams>) {
          return kv("x0", p.x0) + " " + kv("y0", p.y0) + " " + kv("rho0", p.rho0) + " " + kv("rho1", p.rho1);
        } else {
          return kv("theta", p.theta) + " " + kv("rho0", p.rho0) + " " + kv("rho1", p.rho1) + " " + kv("phi", p.phi) +
                 " " + kv("psi", p.psi);
        }
      },
      params);
}

namespace {

ordered_json set_json(const DetectionSet& set, const PatternFamily& family, std::string_view image_name) {
  ordered_json doc;
  doc["family"] = std::string(family_name(family.kind()));
  doc["image"] = std::string(image_name);
  doc["p"] = rounded(set.model.p);
  doc["ln_eta2"] = rounded(set.model.ln_eta2);
  doc["set_significance"] = rounded(set.set_significance);
  doc["detections"] = ordered_json::array();
  for (const auto& d : set.detections) {
    ordered_json e;
    e["params"] = params_json(d.params, family.grid());
    e["kappa"] = d.kappa;
    e["nu"] = d.nu;
    e["significance"] = rounded(d.s);
    e["iteration"] = d.iteration;
    doc["detections"].push_back(std::move(e));
  }
  return doc;
}

}  // namespace

std::string detection_json(const DetectionSet& set, const PatternFamily& family, std::string_view image_name) {
  return set_json(set, family, image_name).dump(2) + "\n";
}

std::string crack_json(const CrackResult& result, const CrackOptions& options, std::string_view image_name) {
  const BinaryImage& mask = result.mask;
  const auto geometry = ImageGeometry::of(mask.cols(), mask.rows());
  const BoundedStripFamily family(geometry, result.chain.config);
  auto doc = set_json(result.chain.set, family, image_name);
  doc["candidate_count"] = result.chain.config.candidates.size();
  doc["window"] = {{"width", options.window_width}, {"height", options.window_height}};
  doc["mask_pixels"] = mask.count_true();
  const WindowGrid grid(mask.cols(), mask.rows(), options.window_width, options.window_height);
  ordered_json strips = ordered_json::array();
  for (const auto& s : result.elementary.strips) {
    const auto& w = grid.windows()[static_cast<std::size_t>(s.window)];
    const ParameterGrid local(ImageGeometry::of(w.width, w.height), options.window_quantization);
    ordered_json e;
    e["window"] = s.window;
    e["params"] = params_json(s.detection.params, local);
    e["kappa"] = s.detection.kappa;
    e["nu"] = s.detection.nu;
    e["significance"] = rounded(s.detection.s);
    e["iteration"] = s.detection.iteration;
    e["extremities"] = {{s.end_a.x, s.end_a.y}, {s.end_b.x, s.end_b.y}};
    strips.push_back(std::move(e));
  }
  doc["elementary_strips"] = std::move(strips);
  return doc.dump(2) + "\n";
}

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve) {
  out << "iteration,nu,kappa,significance\n";
  for (const auto& c : curve) {
    out << c.iteration << ',' << c.nu << ',' << c.kappa << ',' << format_number(c.s) << '\n';
  }
}

RgbImage render_overlay(const BinaryImage& image, const DetectionSet& set, const PatternFamily& family) {
  RgbImage out(image.cols(), image.rows());
  for (int y = 1; y <= image.rows(); ++y) {
    for (int x = 1; x <= image.cols(); ++x) {
      if (image.get(x, y)) {
        out.set(x, y, 48, 48, 48);
      }
    }
  }
  for (const auto& d : set.detections) {
    BinaryImage mask(image.cols(), image.rows());
    const auto pixels = family.pixels(d.params);
    for (const auto& p : pixels) {
      mask.set(p, true);
    }
    for (const auto& p : pixels) {
      const bool edge = p.x == 1 || p.y == 1 || p.x == image.cols() || p.y == image.rows() ||
                        !mask.get(p.x - 1, p.y) || !mask.get(p.x + 1, p.y) || !mask.get(p.x, p.y - 1) ||
                        !mask.get(p.x, p.y + 1);
      if (edge) {
        out.set(p.x, p.y, 255, 0, 0);
      }
    }
  }
  return out;
}

}  // namespace sigscan
