#include "eqaff/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "eqaff/diffops.hpp"
#include "eqaff/error.hpp"
#include "eqaff/invariants.hpp"
#include "eqaff/io.hpp"
#include "eqaff/register.hpp"
#include "eqaff/warp.hpp"

namespace eqaff::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

// Every knob any subcommand accepts. Unused fields keep their defaults.
struct Options {
  std::vector<std::string> inputs;
  std::string output_dir;
  std::string transform;
  std::string mask_a;
  std::string mask_b;
  std::string reference;
  std::string manifest;
  std::string dim = "auto";
  double sigma = 1.0;
  double dt = 0.1;
  double t_max = 14.0;
  int levels = 8;
  std::string mode = "affine";
  double threshold = 0.05;
  double corner_ratio = 0.02;
  double ratio = 0.8;
  int iters = 1000;
  double tol = 3.0;
  std::optional<std::uint64_t> seed;
  double threshold_preview = 0.05;
  double anisotropy = 2.0;
  double rotation = 0.15;
  double translation = 8.0;
  bool unimodular = false;
  int width = 0;
  int height = 0;
};

void write_json(const fs::path& path, const Json& j) { io::write_text(path, j.dump(2) + "\n"); }

Json read_json(const fs::path& path) {
  try {
    return Json::parse(io::read_text(path));
  } catch (const Json::exception& e) {
    throw IoError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

fs::path out_dir(const Options& o) {
  if (o.output_dir.empty()) throw ConfigError("--output-dir is required");
  fs::create_directories(o.output_dir);
  return o.output_dir;
}

const std::string& single_input(const Options& o) {
  if (o.inputs.size() != 1) throw ConfigError("exactly one --input is required");
  return o.inputs.front();
}

std::uint64_t require_seed(const Options& o, const char* command) {
  if (!o.seed) throw ConfigError(std::string(command) + ": --seed is required");
  return *o.seed;
}

PipelineConfig pipeline_config(const Options& o) {
  PipelineConfig c;
  c.presmooth_sigma = o.sigma;
  c.scale.dt = o.dt;
  c.scale.t_max = o.t_max;
  c.scale.n_levels = o.levels;
  c.scale.mode = parse_flow_mode(o.mode);
  c.detect.threshold_rel = o.threshold;
  c.detect.min_corner_ratio = o.corner_ratio;
  c.ratio = o.ratio;
  c.ransac.n_iter = o.iters;
  c.ransac.inlier_tol = o.tol;
  c.ransac.seed = o.seed.value_or(0);
  c.project_unimodular = o.unimodular;
  return c;
}

Json scale_json(const ScaleSpaceParams& s) {
  return {{"mode", to_string(s.mode)}, {"t_max", s.t_max}, {"levels", s.n_levels}, {"dt", s.dt}};
}

Json detect_json(const PipelineConfig& c) {
  return {{"sigma", c.presmooth_sigma},
          {"scale", scale_json(c.scale)},
          {"threshold", c.detect.threshold_rel},
          {"corner_ratio", c.detect.min_corner_ratio},
          {"window_sigma", c.detect.window_sigma},
          {"mask_margin", c.mask_margin}};
}

Json pipeline_json(const PipelineConfig& c) {
  Json j = detect_json(c);
  j["region"] = {{"patch_radius", c.region.patch_radius},
                 {"window_sigma", c.region.window_sigma},
                 {"adaptation_iterations", c.region.adaptation_iterations},
                 {"convergence_ratio", c.region.convergence_ratio},
                 {"max_condition", c.region.max_condition}};
  j["ratio"] = c.ratio;
  j["ransac"] = {{"iters", c.ransac.n_iter}, {"tol", c.ransac.inlier_tol}, {"seed", c.ransac.seed}};
  j["unimodular"] = c.project_unimodular;
  return j;
}

Json features_json(const std::vector<FeaturePoint>& points) {
  Json arr = Json::array();
  for (const auto& p : points)
    arr.push_back({{"x", p.x}, {"y", p.y}, {"level", p.level}, {"t", p.t}, {"response", p.response}});
  return arr;
}

Json keypoints_json(const std::vector<Keypoint>& kps) {
  std::vector<FeaturePoint> pts;
  pts.reserve(kps.size());
  for (const auto& k : kps) pts.push_back(k.point);
  return features_json(pts);
}

Json matches_json(const std::vector<Match>& matches) {
  Json arr = Json::array();
  for (const auto& m : matches) arr.push_back({{"a", m.index_a}, {"b", m.index_b}, {"dist", m.distance}});
  return arr;
}

Json metrics_json(const RegistrationMetrics& m) {
  return {{"mean_endpoint_error", m.mean_endpoint_error},
          {"max_endpoint_error", m.max_endpoint_error},
          {"det_deviation", m.det_deviation}};
}

std::optional<Mask2D> optional_mask(const std::string& path, const Image2D& img) {
  if (path.empty()) return std::nullopt;
  Mask2D m = io::read_mask(path);
  if (!m.same_shape(img)) throw ConfigError("mask " + path + " does not match the image size");
  return m;
}

// Binary preview: 1 where the field is valid and |value| >= frac * max|value|.
Grid2<double> threshold_preview(const Field2D& f, double frac) {
  double peak = 0.0;
  for (int y = 0; y < f.value.height(); ++y)
    for (int x = 0; x < f.value.width(); ++x)
      if (f.valid(x, y)) peak = std::max(peak, std::abs(f.value(x, y)));
  Grid2<double> out(f.value.width(), f.value.height(), 0.0);
  if (peak == 0.0) return out;
  for (int y = 0; y < out.height(); ++y)
    for (int x = 0; x < out.width(); ++x)
      if (f.valid(x, y) && std::abs(f.value(x, y)) >= frac * peak) out(x, y) = 1.0;
  return out;
}

void write_field_raw(const fs::path& path, std::span<const double> values, Json dims) {
  io::write_raw_f32(path, values);
  write_json(io::sidecar_path(path), dims);
}

Json run_invariants_2d(const Options& o, const fs::path& in, const fs::path& dir) {
  const Image2D img = gaussian_smooth(io::read_image(in), o.sigma);
  const Json dims = {{"width", img.width()}, {"height", img.height()}};
  const struct {
    const char* name;
    InvariantField field;
  } fields[] = {{"h", field_H(img)}, {"j", field_J(img)}, {"detector", detector_field(img)}};
  for (const auto& f : fields) {
    write_field_raw(dir / (std::string(f.name) + ".raw"), f.field.value.data(), dims);
    io::write_pgm(dir / (std::string(f.name) + "_preview.pgm"), threshold_preview(f.field, o.threshold_preview), 8);
  }
  return {{"dim", "2d"}};
}

// One z-slice of a 3D field as a 2D field.
Field2D slice(const Grid3<double>& v, const Mask3D& valid, int z) {
  Field2D f{Grid2<double>(v.nx(), v.ny(), 0.0), Mask2D(v.nx(), v.ny(), 0)};
  for (int y = 0; y < v.ny(); ++y)
    for (int x = 0; x < v.nx(); ++x) {
      f.value(x, y) = v(x, y, z);
      f.valid(x, y) = valid(x, y, z);
    }
  return f;
}

Json run_invariants_3d(const Options& o, const fs::path& in, const fs::path& dir) {
  const Image3D vol = gaussian_smooth(io::read_volume(in), o.sigma);
  const InvariantField3 h3 = field_H3(vol);
  const J3Fields j3 = field_J3(vol);
  const Json dims = {{"nx", vol.nx()}, {"ny", vol.ny()}, {"nz", vol.nz()}};
  write_field_raw(dir / "h3.raw", h3.value.data(), dims);
  write_field_raw(dir / "j3_numerator.raw", j3.numerator.value.data(), dims);
  write_field_raw(dir / "j3_ratio.raw", j3.ratio.value.data(), dims);
  std::vector<double> valid(j3.ratio.valid.data().begin(), j3.ratio.valid.data().end());
  write_field_raw(dir / "j3_ratio_valid.raw", valid, dims);

  // Montage: image slices (top), H (middle), J (bottom) at evenly spaced z.
  constexpr int kSlices = 5;
  constexpr int kGap = 2;
  const int nx = vol.nx();
  const int ny = vol.ny();
  Grid2<double> montage(kSlices * nx + (kSlices - 1) * kGap, 3 * ny + 2 * kGap, 0.0);
  const auto [lo, hi] = min_max(vol.data());
  const Mask3D all(nx, ny, vol.nz(), 1);
  Json zs = Json::array();
  for (int k = 0; k < kSlices; ++k) {
    const int z = std::clamp(static_cast<int>(std::lround((k + 1) * vol.nz() / (kSlices + 1.0))), 1, vol.nz() - 2);
    zs.push_back(z);
    Field2D image = slice(vol, all, z);
    for (auto& v : image.value.data()) v = hi > lo ? (v - lo) / (hi - lo) : 0.0;
    const Grid2<double> rows[3] = {image.value, threshold_preview(slice(h3.value, h3.valid, z), o.threshold_preview),
                                   threshold_preview(slice(j3.ratio.value, j3.ratio.valid, z), o.threshold_preview)};
    for (int r = 0; r < 3; ++r)
      for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x) montage(k * (nx + kGap) + x, r * (ny + kGap) + y) = rows[r](x, y);
  }
  io::write_pgm(dir / "slices.pgm", montage, 8);
  return {{"dim", "3d"}, {"slices", zs}};
}

Json cmd_invariants(const Options& o) {
  const fs::path in = single_input(o);
  const fs::path dir = out_dir(o);
  if (!(o.threshold_preview > 0.0 && o.threshold_preview < 1.0))
    throw ConfigError("--threshold-preview must be in (0, 1)");
  bool volume = false;
  if (o.dim == "3d")
    volume = true;
  else if (o.dim == "auto")
    volume = in.extension() == ".raw";
  else if (o.dim != "2d")
    throw ConfigError("--dim must be auto, 2d or 3d");
  Json cfg = volume ? run_invariants_3d(o, in, dir) : run_invariants_2d(o, in, dir);
  cfg["sigma"] = o.sigma;
  cfg["threshold_preview"] = o.threshold_preview;
  return cfg;
}

Json cmd_scalespace(const Options& o) {
  const Image2D img = io::read_image(single_input(o));
  const fs::path dir = out_dir(o);
  const PipelineConfig c = pipeline_config(o);
  const ScaleSpace2D ss = build_scale_space(img, c.scale);
  Json times = Json::array();
  for (std::size_t k = 0; k < ss.levels.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "level_%02zu.pgm", k);
    io::write_pgm(dir / name, ss.levels[k].image, 16);
    times.push_back(ss.levels[k].t);
  }
  write_json(dir / "scalespace.json", {{"mode", to_string(ss.mode)}, {"times", times}});
  return scale_json(c.scale);
}

Json cmd_detect(const Options& o) {
  const Image2D img = io::read_image(single_input(o));
  const fs::path dir = out_dir(o);
  const PipelineConfig c = pipeline_config(o);
  const auto mask = optional_mask(o.mask_a, img);
  const DetectorStack stack = build_detector_stack(build_scale_space(img, c.scale), c.presmooth_sigma);
  std::vector<FeaturePoint> points;
  if (mask) {
    const Mask2D support = erode_mask(*mask, c.mask_margin);
    points = detect(stack, c.detect, &support);
  } else {
    points = detect(stack, c.detect);
  }
  write_json(dir / "features.json", features_json(points));
  return detect_json(c);
}

void require_pair(const Options& o) {
  if (o.inputs.size() != 2) throw ConfigError("exactly two --input images are required");
}

Json cmd_match(const Options& o) {
  require_pair(o);
  const Image2D a = io::read_image(o.inputs[0]);
  const Image2D b = io::read_image(o.inputs[1]);
  const fs::path dir = out_dir(o);
  const PipelineConfig c = pipeline_config(o);
  const auto ma = optional_mask(o.mask_a, a);
  const auto mb = optional_mask(o.mask_b, b);
  const ImageFeatures fa = extract_features(a, c, ma ? &*ma : nullptr);
  const ImageFeatures fb = extract_features(b, c, mb ? &*mb : nullptr);
  std::vector<Descriptor> da, db;
  for (const auto& k : fa.keypoints) da.push_back(k.descriptor);
  for (const auto& k : fb.keypoints) db.push_back(k.descriptor);
  write_json(dir / "features_a.json", keypoints_json(fa.keypoints));
  write_json(dir / "features_b.json", keypoints_json(fb.keypoints));
  write_json(dir / "matches.json", matches_json(match_descriptors(da, db, c.ratio)));
  Json cfg = pipeline_json(c);
  cfg.erase("ransac");
  cfg.erase("unimodular");
  return cfg;
}

Json cmd_register(const Options& o) {
  require_pair(o);
  require_seed(o, "register");
  const Image2D a = io::read_image(o.inputs[0]);
  const Image2D b = io::read_image(o.inputs[1]);
  const fs::path dir = out_dir(o);
  const PipelineConfig c = pipeline_config(o);
  const auto ma = optional_mask(o.mask_a, a);
  const auto mb = optional_mask(o.mask_b, b);
  const PairRegistration reg = register_pair(a, b, c, ma ? &*ma : nullptr, mb ? &*mb : nullptr);

  io::write_affine(dir / "transform.json", reg.result.transform);
  write_json(dir / "features_a.json", keypoints_json(reg.keypoints_a));
  write_json(dir / "features_b.json", keypoints_json(reg.keypoints_b));
  write_json(dir / "matches.json", matches_json(reg.matches));
  Json inliers = Json::array();
  for (int k : reg.result.inlier_indices) {
    const Match& m = reg.matches[static_cast<std::size_t>(k)];
    inliers.push_back({{"match", k}, {"a", m.index_a}, {"b", m.index_b}});
  }
  write_json(dir / "inliers.json", inliers);

  Json metrics = {{"n_features_a", reg.keypoints_a.size()},
                  {"n_features_b", reg.keypoints_b.size()},
                  {"n_matches", reg.matches.size()},
                  {"n_inliers", reg.result.inlier_indices.size()},
                  {"rms_residual", reg.result.rms_residual},
                  {"iterations", reg.result.n_iterations_used},
                  {"det", reg.result.transform.det()}};
  if (!o.transform.empty()) {
    const EquiAffine2 truth = io::read_equiaffine(o.transform);
    metrics.update(metrics_json(eval_registration(reg.result.transform, truth, a.width(), a.height())));
  }
  write_json(dir / "metrics.json", metrics);

  // Overlay in A's frame: A in red and blue, warped B in green.
  Grid2<double> green(a.width(), a.height(), 0.0);
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x)
      if (x < reg.warped_b.width() && y < reg.warped_b.height() && reg.warped_b_mask(x, y))
        green(x, y) = reg.warped_b(x, y);
  io::write_png_rgb(dir / "overlay.png", a, green, a);
  return pipeline_json(c);
}

Json cmd_warp(const Options& o) {
  const Image2D img = io::read_image(single_input(o));
  const fs::path dir = out_dir(o);
  Json cfg;
  if (!o.transform.empty()) {
    cfg["transform"] = o.transform;
  } else if (o.seed) {
    cfg["seed"] = *o.seed;
    cfg["anisotropy"] = o.anisotropy;
    cfg["rotation"] = o.rotation;
    cfg["translation"] = o.translation;
  } else {
    throw ConfigError("warp: either --transform or --seed is required");
  }
  const EquiAffine2 g = !o.transform.empty()
                            ? io::read_equiaffine(o.transform)
                            : random_equiaffine(*o.seed, o.anisotropy, o.rotation, o.translation);
  const EquiAffine2 full = centered(g, 0.5 * (img.width() - 1), 0.5 * (img.height() - 1));
  const WarpResult w = warp_image(img, full);
  io::write_pgm(dir / "warped.pgm", w.image, 16);
  io::write_mask(dir / "mask.pgm", w.mask);
  io::write_affine(dir / "transform.json", full.as_affine());
  cfg["centered"] = true;
  return cfg;
}

Json cmd_eval(const Options& o) {
  const Affine2 estimate = io::read_affine(single_input(o));
  if (o.transform.empty()) throw ConfigError("eval: --transform (ground truth) is required");
  const EquiAffine2 truth = io::read_equiaffine(o.transform);
  int w = o.width;
  int h = o.height;
  if (!o.reference.empty()) {
    const Image2D ref = io::read_image(o.reference);
    w = ref.width();
    h = ref.height();
  }
  if (w < 1 || h < 1) throw ConfigError("eval: frame size needs --width/--height or --reference");
  const fs::path dir = out_dir(o);
  write_json(dir / "metrics.json", metrics_json(eval_registration(estimate, truth, w, h)));
  return {{"width", w}, {"height", h}};
}

struct Parsed {
  std::string command;
  Options options;
};

void add_input(CLI::App* sub, Options& o, const std::string& desc) {
  sub->add_option("-i,--input", o.inputs, desc)->required();
}

void add_output(CLI::App* sub, Options& o) {
  sub->add_option("-o,--output-dir", o.output_dir, "Output directory")
      ->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

void add_scale(CLI::App* sub, Options& o) {
  sub->add_option("--mode", o.mode, "Scale-space flow: affine or linear")->check(CLI::IsMember({"affine", "linear"}));
  sub->add_option("--dt", o.dt, "Time step")->check(CLI::PositiveNumber);
  sub->add_option("--t-max", o.t_max, "Final evolution time")->check(CLI::PositiveNumber);
  sub->add_option("--levels", o.levels, "Number of scale levels")->check(CLI::Range(2, 16));
}

void add_detect(CLI::App* sub, Options& o) {
  add_scale(sub, o);
  sub->add_option("--sigma", o.sigma, "Gaussian pre-smoothing sigma")->check(CLI::NonNegativeNumber);
  sub->add_option("--threshold", o.threshold, "Relative detector threshold")
      ->check(CLI::Range(0.0, 1.0));
  sub->add_option("--corner-ratio", o.corner_ratio, "Minimum second-moment eigenvalue ratio")
      ->check(CLI::Range(0.0, 1.0));
}

void add_match(CLI::App* sub, Options& o) {
  add_detect(sub, o);
  sub->add_option("--ratio", o.ratio, "Lowe ratio-test threshold")->check(CLI::Range(0.0, 1.0));
  sub->add_option("--mask-a", o.mask_a, "Validity mask for the first image");
  sub->add_option("--mask-b", o.mask_b, "Validity mask for the second image");
}

// Parses `args`; nullopt when help or version output was requested.
std::optional<Parsed> parse(const std::vector<std::string>& args) {
  Parsed p;
  Options& o = p.options;
  CLI::App app("Equi-affine invariants, scale-space features and registration", "eqaff");
  app.require_subcommand(1);
  app.set_version_flag("--version", EQAFF_VERSION);

  auto* inv = app.add_subcommand("invariants", "H, J and detector fields (2D) or H3, J3 (3D)");
  add_input(inv, o, "Image (PGM/PNG) or raw float32 volume with JSON sidecar");
  add_output(inv, o);
  inv->add_option("--sigma", o.sigma, "Gaussian pre-smoothing sigma")->check(CLI::NonNegativeNumber);
  inv->add_option("--dim", o.dim, "auto, 2d or 3d")->check(CLI::IsMember({"auto", "2d", "3d"}));
  inv->add_option("--threshold-preview", o.threshold_preview, "Preview threshold as a fraction of max |field|");

  auto* ss = app.add_subcommand("scalespace", "Evolve an image under the affine or linear heat flow");
  add_input(ss, o, "Input image");
  add_output(ss, o);
  add_scale(ss, o);

  auto* det = app.add_subcommand("detect", "Detect space-scale maxima of the affine detector");
  add_input(det, o, "Input image");
  add_output(det, o);
  add_detect(det, o);
  det->add_option("--mask", o.mask_a, "Validity mask");

  auto* mat = app.add_subcommand("match", "Describe and match features between two images");
  add_input(mat, o, "Two input images (A then B)");
  add_output(mat, o);
  add_match(mat, o);

  auto* reg = app.add_subcommand("register", "Estimate the affine map from image A to image B");
  add_input(reg, o, "Two input images (A then B)");
  add_output(reg, o);
  add_match(reg, o);
  reg->add_option("--iters", o.iters, "RANSAC iterations")->check(CLI::PositiveNumber);
  reg->add_option("--tol", o.tol, "RANSAC inlier tolerance in pixels")->check(CLI::PositiveNumber);
  reg->add_option("--seed", o.seed, "RANSAC seed (required)");
  reg->add_option("--transform", o.transform, "Ground-truth transform JSON for metrics");
  reg->add_flag("--unimodular", o.unimodular, "Project the estimate to unit determinant");

  auto* warp = app.add_subcommand("warp", "Apply a centred equi-affine warp");
  add_input(warp, o, "Input image");
  add_output(warp, o);
  warp->add_option("--transform", o.transform, "Transform JSON");
  warp->add_option("--seed", o.seed, "Seed for a random transform");
  warp->add_option("--anisotropy", o.anisotropy, "Maximum anisotropy of a random transform")
      ->check(CLI::Range(1.0, 1e6));
  warp->add_option("--rotation", o.rotation, "Maximum rotation angle (radians) of a random transform")
      ->check(CLI::NonNegativeNumber);
  warp->add_option("--translation", o.translation, "Maximum translation (pixels) of a random transform")
      ->check(CLI::NonNegativeNumber);

  auto* ev = app.add_subcommand("eval", "Compare an estimated transform to the ground truth");
  add_input(ev, o, "Estimated transform JSON");
  add_output(ev, o);
  ev->add_option("--transform", o.transform, "Ground-truth transform JSON")->required();
  ev->add_option("--width", o.width, "Frame width");
  ev->add_option("--height", o.height, "Frame height");
  ev->add_option("--reference", o.reference, "Image providing the frame size");

  auto* rep = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  rep->add_option("--manifest", o.manifest, "manifest.json from an earlier run")->required();
  rep->add_option("-o,--output-dir", o.output_dir, "Override the recorded output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) throw ConfigError(e.what());
    app.exit(e);
    return std::nullopt;
  }
  for (auto* sub : app.get_subcommands()) p.command = sub->get_name();
  return p;
}

Json dispatch(const std::string& command, const Options& o) {
  if (command == "invariants") return cmd_invariants(o);
  if (command == "scalespace") return cmd_scalespace(o);
  if (command == "detect") return cmd_detect(o);
  if (command == "match") return cmd_match(o);
  if (command == "register") return cmd_register(o);
  if (command == "warp") return cmd_warp(o);
  if (command == "eval") return cmd_eval(o);
  throw ConfigError("unknown command " + command);
}

void report(const char* kind, const std::string& message) {
  std::cerr << Json{{"error", kind}, {"message", message}}.dump() << "\n";
}

int execute(const std::vector<std::string>& args, int depth) {
  const std::optional<Parsed> parsed = parse(args);
  if (!parsed) return 0;
  const Parsed& p = *parsed;
  if (p.command == "replay") {
    if (depth > 0) throw ConfigError("a manifest cannot replay another replay");
    const Json m = read_json(p.options.manifest);
    if (!m.contains("args") || !m["args"].is_array()) throw IoError("manifest has no args array");
    auto recorded = m["args"].get<std::vector<std::string>>();
    if (!p.options.output_dir.empty()) {
      recorded.push_back("-o");
      recorded.push_back(p.options.output_dir);
    }
    return execute(recorded, depth + 1);
  }
  Json cfg = dispatch(p.command, p.options);
  Json manifest = {{"command", p.command}, {"version", EQAFF_VERSION}, {"args", args}};
  Json inputs = p.options.inputs;
  manifest["inputs"] = inputs;
  manifest["config"] = std::move(cfg);
  write_json(fs::path(p.options.output_dir) / "manifest.json", manifest);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  try {
    return execute(args, 0);
  } catch (const Error& e) {
    report(to_string(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (const fs::filesystem_error& e) {
    report("io", e.what());
    return exit_code(ErrorKind::Io);
  } catch (const std::exception& e) {
    report("internal", e.what());
    return 1;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace eqaff::cli
