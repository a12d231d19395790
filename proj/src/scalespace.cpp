#include "eqaff/scalespace.hpp"

#include <cmath>
#include <sstream>

namespace eqaff {

const char* to_string(FlowMode mode) noexcept { return mode == FlowMode::Affine ? "affine" : "linear"; }

FlowMode parse_flow_mode(const std::string& name) {
  if (name == "affine") return FlowMode::Affine;
  if (name == "linear") return FlowMode::Linear;
  throw ConfigError("unknown scale-space mode '" + name + "' (expected affine|linear)");
}

InvariantField curvature_field(const Grid2<double>& img, double eps_g) {
  if (!(eps_g > 0.0)) throw ConfigError("curvature_field: eps_g must be positive");
  const int w = img.width();
  const int h = img.height();
  InvariantField f{Grid2<double>(w, h, 0.0), interior_mask(w, h)};
  for (int y = 1; y < h - 1; ++y)
    for (int x = 1; x < w - 1; ++x) {
      const Jet2 j = jet_at(img, x, y);
      const double g2 = j.ux * j.ux + j.uy * j.uy + eps_g;
      f.value(x, y) = invariant_J(j) / (g2 * std::sqrt(g2));
    }
  return f;
}

namespace {

void validate(const EvolutionConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw ConfigError("evolution: dt must be positive");
  if (!(cfg.eps_g > 0.0)) throw ConfigError("evolution: eps_g must be positive");
  if (cfg.t_samples.empty() || cfg.t_samples.front() != 0.0)
    throw ConfigError("evolution: t_samples must start at 0");
  for (std::size_t i = 1; i < cfg.t_samples.size(); ++i)
    if (!(cfg.t_samples[i] > cfg.t_samples[i - 1]))
      throw ConfigError("evolution: t_samples must be strictly increasing");
}

// Image copy with a one-pixel replicated border, reused across steps.
class Padded {
 public:
  Padded(int w, int h) : w_(w), h_(h), stride_(w + 2), buf_(static_cast<std::size_t>(w + 2) * (h + 2)) {}

  void load(const Image2D& img) {
    for (int y = -1; y <= h_; ++y) {
      const int sy = std::clamp(y, 0, h_ - 1);
      const auto src = img.row(sy);
      double* dst = &buf_[static_cast<std::size_t>(y + 1) * stride_];
      dst[0] = src[0];
      std::copy(src.begin(), src.end(), dst + 1);
      dst[w_ + 1] = src[w_ - 1];
    }
  }

  // Pointer to pixel (x, y); neighbors reachable at +-1 and +-stride().
  const double* at(int x, int y) const { return &buf_[static_cast<std::size_t>(y + 1) * stride_ + (x + 1)]; }
  std::ptrdiff_t stride() const { return stride_; }

 private:
  int w_, h_;
  std::ptrdiff_t stride_;
  std::vector<double> buf_;
};

// Advances u by one explicit step of length dt. Rate(p, s) returns u_t from
// a padded-buffer pointer p with row stride s. With `limit`, each new value
// is clamped to the range of its 3x3 neighbourhood at the previous step.
template <typename Rate>
void step(Image2D& u, Padded& pad, double dt, bool limit, Rate&& rate) {
  pad.load(u);
  const std::ptrdiff_t s = pad.stride();
  for (int y = 0; y < u.height(); ++y)
    for (int x = 0; x < u.width(); ++x) {
      const double* p = pad.at(x, y);
      double v = p[0] + dt * rate(p, s);
      if (limit) {
        double lo = p[0], hi = p[0];
        for (std::ptrdiff_t o : {-s - 1, -s, -s + 1, std::ptrdiff_t{-1}, std::ptrdiff_t{1}, s - 1, s, s + 1}) {
          lo = std::min(lo, p[o]);
          hi = std::max(hi, p[o]);
        }
        v = std::clamp(v, lo, hi);
      }
      u(x, y) = v;
    }
}

template <typename Rate>
ScaleSpace2D evolve(const Image2D& img, const EvolutionConfig& cfg, FlowMode mode, bool limit, Rate&& rate) {
  ScaleSpace2D ss;
  ss.mode = mode;
  ss.levels.push_back({0.0, img});
  Image2D u = img;
  Padded pad(u.width(), u.height());
  double t = 0.0;
  long step_index = 0;
  for (std::size_t k = 1; k < cfg.t_samples.size(); ++k) {
    const double span = cfg.t_samples[k] - t;
    const long n = std::max(1L, static_cast<long>(std::ceil(span / cfg.dt - 1e-9)));
    const double h = span / static_cast<double>(n);
    for (long i = 0; i < n; ++i, ++step_index) {
      step(u, pad, h, limit, rate);
      for (double v : u.data())
        if (!std::isfinite(v)) {
          std::ostringstream os;
          os << to_string(mode) << " flow became non-finite at step " << step_index << " (dt = " << h << ")";
          throw NumericalError(os.str());
        }
    }
    t = cfg.t_samples[k];
    ss.levels.push_back({t, u});
  }
  return ss;
}

}  // namespace

ScaleSpace2D evolve_affine_heat(const Image2D& img, const EvolutionConfig& cfg) {
  validate(cfg);
  return evolve(img, cfg, FlowMode::Affine, true, [](const double* p, std::ptrdiff_t s) {
    const double c = p[0];
    const double e = p[1];
    const double w = p[-1];
    const double n = p[-s];
    const double so = p[s];
    const double ux = 0.5 * (e - w);
    const double uy = 0.5 * (so - n);
    const double uxx = e - 2.0 * c + w;
    const double uyy = so - 2.0 * c + n;
    const double uxy = 0.25 * (p[s + 1] - p[-s + 1] - p[s - 1] + p[-s - 1]);
    return std::cbrt(uy * uy * uxx - 2.0 * ux * uy * uxy + ux * ux * uyy);
  });
}

ScaleSpace2D evolve_linear_heat(const Image2D& img, const EvolutionConfig& cfg) {
  validate(cfg);
  if (cfg.dt > 0.25) throw ConfigError("linear heat: dt must be <= 0.25 for stability");
  return evolve(img, cfg, FlowMode::Linear, false, [](const double* p, std::ptrdiff_t s) {
    return p[1] + p[-1] + p[s] + p[-s] - 4.0 * p[0];
  });
}

ScaleSpace2D build_scale_space(const Image2D& img, const ScaleSpaceParams& params) {
  if (params.n_levels < 2 || params.n_levels > 16)
    throw ConfigError("build_scale_space: n_levels must be in [2, 16]");
  if (!(params.t_max > 0.0)) throw ConfigError("build_scale_space: t_max must be positive");
  EvolutionConfig cfg;
  cfg.dt = params.dt;
  cfg.t_samples.clear();
  for (int k = 0; k < params.n_levels; ++k)
    cfg.t_samples.push_back(params.t_max * static_cast<double>(k) / static_cast<double>(params.n_levels - 1));
  return params.mode == FlowMode::Affine ? evolve_affine_heat(img, cfg) : evolve_linear_heat(img, cfg);
}

}  // namespace eqaff
