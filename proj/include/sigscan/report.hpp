#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sigscan/crack.hpp"
#include "sigscan/detect.hpp"
#include "sigscan/image.hpp"
#include "sigscan/patterns.hpp"

namespace sigscan {

/// Shortest decimal text of a value rounded to 9 significant digits.
std::string format_number(double v);

/// "name=value" pairs of the parameter cells, e.g. "theta=3 rho0=-2 rho1=0".
std::string params_text(const PatternParams& params);

/// Detection result as a JSON document (family, image, p, ln_eta2, detections).
std::string detection_json(const DetectionSet& set, const PatternFamily& family, std::string_view image_name);

/// Crack result: the image-scale detections in the detection schema, plus the
/// window size and the elementary strips with their extremities.
std::string crack_json(const CrackResult& result, const CrackOptions& options, std::string_view image_name);

/// Header "iteration,nu,kappa,significance", one row per curve point.
void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve);

/// Input true pixels dark gray, pattern frontier pixels saturated red.
RgbImage render_overlay(const BinaryImage& image, const DetectionSet& set, const PatternFamily& family);

}  // namespace sigscan
