#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "sigscan/crack.hpp"
#include "sigscan/detect.hpp"
#include "sigscan/errors.hpp"
#include "sigscan/eval.hpp"
#include "sigscan/pnm.hpp"
#include "sigscan/report.hpp"
#include "sigscan/synth.hpp"

namespace sigscan::cli {

namespace {

struct Size {
  int width = 0;
  int height = 0;
};

Size parse_size(const std::string& text) {
  Size s;
  char x = 0;
  std::istringstream in(text);
  if (!(in >> s.width >> x >> s.height) || (x != 'x' && x != 'X') || !in.eof() || s.width < 1 || s.height < 1) {
    throw DomainError("expected a size like 64x64, got '" + text + "'");
  }
  return s;
}

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw DomainError("expected a comma-separated list of numbers, got '" + text + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) {
    throw DomainError("empty number list");
  }
  return out;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  for (const double v : parse_numbers(text)) {
    if (v != std::floor(v)) {
      throw DomainError("expected integers, got '" + text + "'");
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

PatternParams parse_params(Family family, const std::string& text) {
  const auto v = parse_ints(text);
  const std::size_t want = family == Family::Strip ? 3 : family == Family::BoundedStrip ? 5 : 4;
  if (v.size() != want) {
    throw DomainError("'" + text + "' needs " + std::to_string(want) + " values for the " +
                      std::string(family_name(family)) + " family");
  }
  switch (family) {
    case Family::Tile:
      return TileParams{v[0], v[1], v[2], v[3]};
    case Family::Strip:
      return StripParams{v[0], v[1], v[2]};
    case Family::Ring:
      return RingParams{v[0], v[1], v[2], v[3]};
    case Family::BoundedStrip:
      break;
  }
  return BoundedStripParams{v[0], v[1], v[2], v[3], v[4]};
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SIGSCAN_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw DomainError("SIGSCAN_SEED is not an unsigned integer");
    }
  }
  return 1;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw std::runtime_error("cannot write " + path);
  }
  f << text;
}

struct QuantFlags {
  double theta_step = 0.0;
  double rho_step = 1.0;
  double phi_step = 0.0;
  int center_stride = 2;

  void add(CLI::App* app) {
    app->add_option("--theta-step", theta_step, "Theta step in radians (default 1/half-diagonal)");
    app->add_option("--rho-step", rho_step, "Rho step in pixels")->check(CLI::PositiveNumber);
    app->add_option("--phi-step", phi_step, "Angular-position step in radians (default 1/half-diagonal)");
    app->add_option("--center-stride", center_stride, "Ring center grid stride in pixels")->check(CLI::PositiveNumber);
  }
  Quantization get() const { return {theta_step, rho_step, phi_step, center_stride}; }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Significance-based detection of parametric patterns in binary images"};
  app.name(args.empty() ? "sigscan" : args.front());
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::optional<int> threshold;
  int threads = 1;

  // detect
  auto* detect = app.add_subcommand("detect", "Detect the most significant patterns of one family");
  std::string family_text;
  std::string in_path;
  std::string out_path;
  std::string curve_path;
  std::string overlay_path;
  std::optional<double> eta2;
  int max_width = 0;
  int max_sector = 0;
  QuantFlags quant;
  detect->add_option("--family", family_text, "tile, strip, ring or bstrip")
      ->required()
      ->check(CLI::IsMember({"tile", "strip", "ring", "bstrip"}));
  detect->add_option("--in", in_path, "Input bitmap")->required();
  detect->add_option("--out", out_path, "Detection JSON")->required();
  detect->add_option("--curve", curve_path, "Significance-versus-cardinality CSV");
  detect->add_option("--overlay", overlay_path, "Overlay color map (P6)");
  detect->add_option("--eta2", eta2, "Number-of-tests coefficient (default: number of candidates)");
  detect->add_option("--max-width", max_width, "Maximum interval width in cells (0 = unbounded)");
  detect->add_option("--max-sector", max_sector, "Bounded strips: maximum sector length in cells (0 = half turn)");
  quant.add(detect);

  // crack
  auto* crack = app.add_subcommand("crack", "Two-scale crack detection");
  std::string window_text = "64x64";
  std::string mask_path;
  CrackOptions crack_opts;
  QuantFlags crack_quant;
  crack->add_option("--in", in_path, "Seed bitmap")->required();
  crack->add_option("--window", window_text, "Window size WxH")->capture_default_str();
  crack->add_option("--out-mask", mask_path, "Crack mask bitmap")->required();
  crack->add_option("--out", out_path, "Detection JSON")->required();
  crack->add_option("--chain-width", crack_opts.max_width, "Largest chaining strip width in pixels")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  crack->add_option("--min-distance", crack_opts.min_distance,
                    "Minimum extremity distance for chaining (default: smaller window side)");
  crack_quant.add(crack);

  // eval
  auto* evaluate = app.add_subcommand("eval", "Precision and recall with dilation tolerance");
  std::string det_path;
  std::string gt_path;
  std::string radius_text;
  evaluate->add_option("--det", det_path, "Detection mask or directory")->required();
  evaluate->add_option("--gt", gt_path, "Ground-truth mask or directory")->required();
  evaluate->add_option("--radius", radius_text, "Comma-separated dilation radii")->required();
  evaluate->add_option("--out", out_path, "Output CSV")->required();

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic scene");
  std::string size_text;
  double background = 0.05;
  double density = 0.9;
  std::string manifest_path;
  std::string gt_out;
  std::vector<std::string> plants;
  std::string polyline_text;
  double line_width = 3.0;
  double gap = 0.0;
  bool plain = false;
  QuantFlags synth_quant;
  synth->add_option("--size", size_text, "Image size WxH")->required();
  synth->add_option("--p", background, "Background density")->capture_default_str();
  synth->add_option("--out", out_path, "Output bitmap")->required();
  synth->add_option("--manifest", manifest_path, "Ground-truth manifest");
  synth->add_option("--family", family_text, "Family of the --plant tuples")
      ->check(CLI::IsMember({"tile", "strip", "ring", "bstrip"}));
  synth->add_option("--plant", plants, "Comma-separated parameter cells of one planted pattern (repeatable)");
  synth->add_option("--density", density, "Density inside planted patterns")->capture_default_str();
  synth->add_option("--polyline", polyline_text, "Polyline vertices x1,y1,x2,y2,... (dashed crack)");
  synth->add_option("--width", line_width, "Polyline width in pixels")->capture_default_str();
  synth->add_option("--gap", gap, "Gap between polyline dashes in pixels")->capture_default_str();
  synth->add_option("--gt", gt_out, "Ground-truth mask of the polyline");
  synth->add_flag("--plain", plain, "Write plain (P1) bitmaps");
  synth_quant.add(synth);

  for (auto* sub : {detect, crack, synth}) {
    sub->add_option("--seed", seed, "Random seed (default: SIGSCAN_SEED or 1)");
  }
  for (auto* sub : {detect, crack}) {
    sub->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--threshold", threshold, "Gray inputs: values >= threshold are true");
  }

  std::vector<std::string> argv_tail(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(argv_tail.begin(), argv_tail.end());
  try {
    app.parse(argv_tail);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code != 0) {
      err << app.help();
      return 1;
    }
    return 0;
  }

  try {
    std::optional<std::uint64_t> seed_flag;
    for (auto* sub : {detect, crack, synth}) {
      if (sub->parsed() && sub->count("--seed") > 0) {
        seed_flag = seed;
      }
    }
    const std::uint64_t run_seed = seed_flag ? *seed_flag : default_seed();

    if (detect->parsed()) {
      const auto image = read_pnm(in_path, threshold);
      FamilyConfig config;
      config.family = parse_family(family_text);
      config.quantization = quant.get();
      config.max_width = max_width;
      config.max_sector = max_sector;
      const auto family = make_family(ImageGeometry::of(image.cols(), image.rows()), config);
      DetectOptions options;
      options.seed = run_seed;
      options.threads = threads;
      if (eta2) {
        if (!(*eta2 >= 1.0)) {
          throw DomainError("--eta2 must be >= 1");
        }
        options.ln_eta2 = std::log(*eta2);
      }
      const auto set = detect_all(image, *family, options);
      write_text(out_path, detection_json(set, *family, std::filesystem::path(in_path).filename().string()));
      if (!curve_path.empty()) {
        std::ostringstream csv;
        write_curve_csv(csv, set.curve);
        write_text(curve_path, csv.str());
      }
      if (!overlay_path.empty()) {
        write_ppm(std::filesystem::path(overlay_path), render_overlay(image, set, *family));
      }
      return 0;
    }

    if (crack->parsed()) {
      const auto image = read_pnm(in_path, threshold);
      const auto window = parse_size(window_text);
      crack_opts.window_width = window.width;
      crack_opts.window_height = window.height;
      crack_opts.quantization = crack_quant.get();
      crack_opts.seed = run_seed;
      crack_opts.threads = threads;
      const auto result = crack_detect(image, crack_opts);
      write_pbm(std::filesystem::path(mask_path), result.mask);
      write_text(out_path, crack_json(result, crack_opts, std::filesystem::path(in_path).filename().string()));
      return 0;
    }

    if (evaluate->parsed()) {
      const auto radii = parse_numbers(radius_text);
      for (const double r : radii) {
        if (!(r >= 0.0)) {
          throw DomainError("radii must be >= 0");
        }
      }
      const auto result = eval::evaluate(det_path, gt_path, radii);
      std::ostringstream csv;
      eval::write_csv(csv, result);
      write_text(out_path, csv.str());
      return 0;
    }

    // synth
    const auto size = parse_size(size_text);
    auto image = synth::gen_bernoulli(size.width, size.height, background, run_seed);
    synth::Manifest manifest;
    manifest.add("generator mt19937_64");
    manifest.add("size " + std::to_string(size.width) + " " + std::to_string(size.height));
    manifest.add("background " + format_number(background) + " seed " + std::to_string(run_seed));
    if (!plants.empty()) {
      if (family_text.empty()) {
        throw DomainError("--plant needs --family");
      }
      FamilyConfig config;
      config.family = parse_family(family_text);
      config.quantization = synth_quant.get();
      const auto family = make_family(ImageGeometry::of(size.width, size.height), config);
      for (std::size_t i = 0; i < plants.size(); ++i) {
        const auto params = parse_params(config.family, plants[i]);
        const std::uint64_t s = run_seed + 1 + i;
        synth::plant_pattern(image, *family, params, density, s);
        manifest.add_pattern(params, density, s);
      }
    }
    if (!polyline_text.empty()) {
      const auto v = parse_numbers(polyline_text);
      if (v.size() < 4 || v.size() % 2 != 0) {
        throw DomainError("--polyline needs an even number (>= 4) of coordinates");
      }
      std::vector<synth::Point> vertices;
      for (std::size_t i = 0; i < v.size(); i += 2) {
        vertices.push_back({v[i], v[i + 1]});
      }
      const auto segments = synth::dashed_polyline(vertices, gap);
      const auto mask = synth::segment_mask(size.width, size.height, segments, line_width);
      const std::uint64_t s = run_seed + 1 + plants.size();
      synth::plant_mask(image, mask, density, s);
      for (const auto& seg : segments) {
        manifest.add_segment(seg, line_width, density, s);
      }
      if (!gt_out.empty()) {
        write_pbm(std::filesystem::path(gt_out), mask, plain ? PbmEncoding::Plain : PbmEncoding::Raw,
                  {"sigscan synth: polyline ground truth"});
      }
    }
    write_pbm(std::filesystem::path(out_path), image, plain ? PbmEncoding::Plain : PbmEncoding::Raw,
              synth::generator_comments(run_seed, background));
    if (!manifest_path.empty()) {
      std::ostringstream m;
      manifest.write(m);
      write_text(manifest_path, m.str());
    }
    return 0;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace sigscan::cli
