#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <optional>
#include <string>

#include "sigscan/crack.hpp"
#include "sigscan/detect.hpp"
#include "sigscan/errors.hpp"
#include "sigscan/eval.hpp"
#include "sigscan/nfa.hpp"
#include "sigscan/pnm.hpp"
#include "sigscan/synth.hpp"

namespace py = pybind11;
using namespace sigscan;

namespace {

using BoolArray = py::array_t<bool, py::array::c_style | py::array::forcecast>;

// Arrays are (rows, cols); element [0, 0] is pixel (1, 1).
BinaryImage to_image(const BoolArray& a) {
  if (a.ndim() != 2) {
    throw DomainError("expected a 2-d array");
  }
  const auto rows = static_cast<int>(a.shape(0));
  const auto cols = static_cast<int>(a.shape(1));
  BinaryImage img(cols, rows);
  const bool* src = a.data();
  auto dst = img.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = src[i] ? 1 : 0;
  }
  return img;
}

BoolArray to_array(const BinaryImage& img) {
  BoolArray a({img.rows(), img.cols()});
  bool* dst = a.mutable_data();
  const auto src = img.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = src[i] != 0;
  }
  return a;
}

py::dict params_dict(const PatternParams& params) {
  py::dict d;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, TileParams>) {
          d["x_ul"] = p.x_ul;
          d["y_ul"] = p.y_ul;
          d["x_lr"] = p.x_lr;
          d["y_lr"] = p.y_lr;
        } else if constexpr (std::is_same_v<T, StripParams>) {
          d["theta"] = p.theta;
          d["rho0"] = p.rho0;
          d["rho1"] = p.rho1;
        } else if constexpr (std::is_same_v<T, RingParams>) {
          d["x0"] = p.x0;
          d["y0"] = p.y0;
          d["rho0"] = p.rho0;
          d["rho1"] = p.rho1;
        } else {
          d["theta"] = p.theta;
          d["rho0"] = p.rho0;
          d["rho1"] = p.rho1;
          d["phi"] = p.phi;
          d["psi"] = p.psi;
        }
      },
      params);
  return d;
}

py::dict detection_dict(const Detection& det) {
  py::dict d;
  d["params"] = params_dict(det.params);
  d["kappa"] = det.kappa;
  d["nu"] = det.nu;
  d["significance"] = det.s;
  d["iteration"] = det.iteration;
  return d;
}

py::dict set_dict(const DetectionSet& set) {
  py::dict d;
  d["p"] = set.model.p;
  d["ln_eta2"] = set.model.ln_eta2;
  d["set_significance"] = set.set_significance;
  d["candidate_count"] = set.candidate_count;
  py::list dets;
  for (const auto& det : set.detections) {
    dets.append(detection_dict(det));
  }
  d["detections"] = dets;
  py::list curve;
  for (const auto& c : set.curve) {
    curve.append(py::make_tuple(c.iteration, c.nu, c.kappa, c.s));
  }
  d["curve"] = curve;
  d["support"] = to_array(set.support);
  return d;
}

Quantization quantization(double theta_step, double rho_step, double phi_step, int center_stride) {
  Quantization q;
  q.theta_step = theta_step;
  q.rho_step = rho_step;
  q.phi_step = phi_step;
  q.center_stride = center_stride;
  return q;
}

}  // namespace

PYBIND11_MODULE(_sigscan, m) {
  m.doc() = "Significance-based detection of parametric patterns in binary images.";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_IOError);

  m.def(
      "significance_exact",
      [](std::uint64_t kappa, std::uint64_t nu, double p, double ln_eta2) {
        return significance_exact(kappa, nu, {p, ln_eta2}).s;
      },
      py::arg("kappa"), py::arg("nu"), py::arg("p"), py::arg("ln_eta2") = 0.0);
  m.def(
      "significance_hoeffding",
      [](std::uint64_t kappa, std::uint64_t nu, double p, double ln_eta2) {
        return significance_hoeffding(kappa, nu, {p, ln_eta2}).s;
      },
      py::arg("kappa"), py::arg("nu"), py::arg("p"), py::arg("ln_eta2") = 0.0);

  m.def(
      "detect",
      [](const BoolArray& image, const std::string& family, std::optional<double> eta2, std::uint64_t seed,
         int threads, int max_width, int max_sector, double theta_step, double rho_step, double phi_step,
         int center_stride) {
        FamilyConfig config;
        config.family = parse_family(family);
        config.quantization = quantization(theta_step, rho_step, phi_step, center_stride);
        config.max_width = max_width;
        config.max_sector = max_sector;
        DetectOptions options;
        options.seed = seed;
        options.threads = threads;
        if (eta2) {
          if (!(*eta2 >= 1.0)) {
            throw DomainError("eta2 must be at least 1");
          }
          options.ln_eta2 = std::log(*eta2);
        }
        const auto img = to_image(image);
        DetectionSet set;
        {
          py::gil_scoped_release release;
          set = detect_all(img, config, options);
        }
        return set_dict(set);
      },
      py::arg("image"), py::arg("family"), py::kw_only(), py::arg("eta2") = std::nullopt, py::arg("seed") = 1,
      py::arg("threads") = 1, py::arg("max_width") = 0, py::arg("max_sector") = 0, py::arg("theta_step") = 0.0,
      py::arg("rho_step") = 1.0, py::arg("phi_step") = 0.0, py::arg("center_stride") = 2);

  m.def(
      "crack",
      [](const BoolArray& image, int window_width, int window_height, int max_width, std::uint64_t seed,
         int threads) {
        CrackOptions options;
        options.window_width = window_width;
        options.window_height = window_height;
        options.max_width = max_width;
        options.seed = seed;
        options.threads = threads;
        const auto img = to_image(image);
        CrackResult r;
        {
          py::gil_scoped_release release;
          r = crack_detect(img, options);
        }
        py::dict d = set_dict(r.chain.set);
        d["mask"] = to_array(r.mask);
        d["filtered"] = to_array(r.elementary.filtered);
        py::list strips;
        for (const auto& s : r.elementary.strips) {
          py::dict e = detection_dict(s.detection);
          e["window"] = s.window;
          e["extremities"] = py::make_tuple(py::make_tuple(s.end_a.x, s.end_a.y), py::make_tuple(s.end_b.x, s.end_b.y));
          strips.append(e);
        }
        d["elementary_strips"] = strips;
        return d;
      },
      py::arg("image"), py::kw_only(), py::arg("window_width") = 64, py::arg("window_height") = 64,
      py::arg("max_width") = 5, py::arg("seed") = 1, py::arg("threads") = 1);

  m.def(
      "precision_recall",
      [](const BoolArray& detected, const BoolArray& truth, double radius) {
        const auto s = eval::precision_recall(to_image(detected), to_image(truth), radius);
        py::dict d;
        d["precision"] = s.precision;
        d["recall"] = s.recall;
        d["tp"] = s.tp;
        d["fp"] = s.fp;
        d["fn"] = s.fn;
        return d;
      },
      py::arg("detected"), py::arg("truth"), py::arg("radius"));
  m.def("summarize", [](std::vector<double> values) {
    const auto s = eval::summarize(std::move(values));
    py::dict d;
    d["mean"] = s.mean;
    d["median"] = s.median;
    d["p25"] = s.p25;
    d["p75"] = s.p75;
    return d;
  });

  m.def(
      "gen_bernoulli", [](int cols, int rows, double p, std::uint64_t seed) {
        return to_array(synth::gen_bernoulli(cols, rows, p, seed));
      },
      py::arg("cols"), py::arg("rows"), py::arg("p"), py::arg("seed"));
  m.def(
      "read_pnm",
      [](const std::string& path, std::optional<int> threshold) { return to_array(read_pnm(path, threshold)); },
      py::arg("path"), py::arg("threshold") = std::nullopt);
  m.def(
      "write_pbm",
      [](const std::string& path, const BoolArray& image, bool plain) {
        write_pbm(std::filesystem::path(path), to_image(image), plain ? PbmEncoding::Plain : PbmEncoding::Raw);
      },
      py::arg("path"), py::arg("image"), py::arg("plain") = false);
}
