#pragma once

#include <array>
#include <span>
#include <vector>

#include "eqaff/features.hpp"
#include "eqaff/image.hpp"
#include "eqaff/transform.hpp"

namespace eqaff {

inline constexpr int kPatchSize = 20;
inline constexpr int kDescriptorSize = 64;

enum class RegionStatus {
  Ok,
  Flat,         ///< zero gradient energy or zero patch variance
  Singular,     ///< second-moment matrix (near) rank deficient, or adaptation diverged
  OutOfBounds,  ///< sampling footprint leaves the image (or its valid mask)
};

const char* to_string(RegionStatus s) noexcept;

struct RegionParams {
  /// Radius covered by the patch in shape-normalized (unit-determinant) units.
  double patch_radius = 16.0;
  double window_sigma = 2.0;
  /// Shape-adaptation iterations. 0 uses the single-shot M^-1/2 of the
  /// isotropic window; otherwise the window is re-shaped by the current
  /// estimate until the normalized second-moment matrix is isotropic.
  int adaptation_iterations = 16;
  /// Adaptation stops once lambda_min / lambda_max of the normalized matrix exceeds this.
  double convergence_ratio = 0.95;
  /// Features whose normalizing map has condition number above this are skipped.
  double max_condition = 16.0;
};

struct NormalizedRegion {
  RegionStatus status = RegionStatus::Ok;
  /// kPatchSize x kPatchSize, zero mean, unit variance. Empty unless status is Ok.
  Grid2<double> patch;
  /// Symmetric, unit-determinant map from normalized to image offsets.
  Mat2 shape = Mat2::Identity();

  bool ok() const noexcept { return status == RegionStatus::Ok; }
};

/// Symmetric inverse square root by eigendecomposition, eigenvalues floored
/// at 1e-12 * lambda_max.
Mat2 inverse_sqrt_spd(const Mat2& m);

/// Samples img through fp + shape * u * patch_radius, u on a regular
/// kPatchSize^2 grid of cell centres in [-1, 1]^2, with bicubic interpolation.
/// `valid`, when given, must be set at the nearest pixel of every sample.
NormalizedRegion normalize_region(const Grid2<double>& img, const FeaturePoint& fp, const RegionParams& params = {},
                                  const Mask2D* valid = nullptr);

struct Descriptor {
  std::array<double, kDescriptorSize> v{};

  bool is_zero() const noexcept;
  bool operator==(const Descriptor&) const = default;
};

double distance(const Descriptor& a, const Descriptor& b);

/// 4x4 subregions of 5x5 pixels, each contributing (sum gx, sum gy,
/// sum |gx|, sum |gy|) of central-difference gradients, L2-normalized.
/// Returns the all-zero sentinel for a flat patch.
Descriptor compute_descriptor(const Grid2<double>& patch);

struct Match {
  int index_a = 0;
  int index_b = 0;
  double distance = 0.0;

  bool operator==(const Match&) const = default;
};

/// Absolute nearest-neighbour cap used when list_b has fewer than 2 entries.
inline constexpr double kSingleCandidateCap = 0.8;

/// Nearest / second-nearest ratio test (ratio in (0, 1]; 1 disables it),
/// then greedy one-to-one selection in ascending distance. Zero sentinels
/// never match. Output sorted by index_a.
std::vector<Match> match_descriptors(std::span<const Descriptor> list_a, std::span<const Descriptor> list_b,
                                     double ratio = 0.8);

/// A feature together with its descriptor and normalization.
struct Keypoint {
  FeaturePoint point;
  Descriptor descriptor;
  Mat2 shape = Mat2::Identity();
};

/// Normalizes and describes each feature on its level image; skipped features
/// are dropped.
std::vector<Keypoint> describe_features(const DetectorStack& stack, const std::vector<FeaturePoint>& points,
                                        const RegionParams& params = {}, const Mask2D* valid = nullptr);

}  // namespace eqaff
