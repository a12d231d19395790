#pragma once

#include <string>
#include <vector>

#include "eqaff/image.hpp"
#include "eqaff/invariants.hpp"

namespace eqaff {

enum class FlowMode { Affine, Linear };

const char* to_string(FlowMode mode) noexcept;
/// "affine" or "linear"; throws ConfigError otherwise.
FlowMode parse_flow_mode(const std::string& name);

struct EvolutionConfig {
  double dt = 0.1;
  /// Output times; must start at 0 and increase strictly.
  std::vector<double> t_samples{0.0};
  /// Gradient floor used by curvature_field.
  double eps_g = 1e-10;
};

struct ScaleLevel {
  double t = 0.0;
  Image2D image;
};

/// Ordered family of images u(., t_k); level 0 is the input at t = 0.
struct ScaleSpace2D {
  FlowMode mode = FlowMode::Affine;
  std::vector<ScaleLevel> levels;

  std::size_t size() const noexcept { return levels.size(); }
  const ScaleLevel& operator[](std::size_t i) const { return levels[i]; }
};

/// Level-set curvature (ux^2 uyy - 2 ux uy uxy + uy^2 uxx) / (|grad u|^2 + eps_g)^(3/2).
InvariantField curvature_field(const Grid2<double>& img, double eps_g = 1e-10);

/// Forward-Euler integration of u_t = cbrt(uy^2 uxx - 2 ux uy uxy + ux^2 uyy)
/// with replicated (Neumann) borders. Steps of at most cfg.dt, shortened so
/// every sample time is hit exactly. Each update is limited to the range of
/// the 3x3 neighbourhood at the previous step, which keeps the discrete
/// solution within the initial range. Throws NumericalError on a non-finite
/// value, ConfigError on an invalid config.
ScaleSpace2D evolve_affine_heat(const Image2D& img, const EvolutionConfig& cfg);

/// Forward-Euler linear diffusion u_t = laplacian(u), 5-point stencil,
/// replicated borders. Requires dt <= 0.25.
ScaleSpace2D evolve_linear_heat(const Image2D& img, const EvolutionConfig& cfg);

struct ScaleSpaceParams {
  int n_levels = 8;
  double t_max = 14.0;
  FlowMode mode = FlowMode::Affine;
  double dt = 0.1;
};

/// n_levels samples uniformly spaced on [0, t_max]; n_levels in [2, 16], t_max > 0.
ScaleSpace2D build_scale_space(const Image2D& img, const ScaleSpaceParams& params = {});

}  // namespace eqaff
