#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "eqaff/describe.hpp"
#include "eqaff/features.hpp"
#include "eqaff/image.hpp"
#include "eqaff/scalespace.hpp"
#include "eqaff/transform.hpp"

namespace eqaff {

/// Least-squares affine map minimizing sum |A p_i + t - q_i|^2. Exact for
/// three non-collinear pairs. Throws DegenerateError when the source points
/// do not span the plane, ConfigError on fewer than 3 pairs or size mismatch.
Affine2 fit_affine_lsq(std::span<const Vec2> src, std::span<const Vec2> dst);

struct RansacParams {
  int n_iter = 1000;
  double inlier_tol = 3.0;
  std::uint64_t seed = 0;
};

struct RegistrationResult {
  Affine2 transform;
  /// Indices into the match list, ascending.
  std::vector<int> inlier_indices;
  /// RMS residual over the inliers, in pixels.
  double rms_residual = 0.0;
  int n_iterations_used = 0;
};

/// Minimal 3-sample RANSAC with least-squares refit on the best consensus
/// set; the reported inliers are re-validated against the refit transform.
/// Best model: more inliers, then lower inlier RMS, then earlier iteration.
RegistrationResult ransac_affine(std::span<const Match> matches, std::span<const Vec2> pts_a,
                                 std::span<const Vec2> pts_b, const RansacParams& params = {});

/// All knobs of the detection -> description -> matching -> RANSAC chain.
struct PipelineConfig {
  double presmooth_sigma = 1.0;
  ScaleSpaceParams scale;
  DetectParams detect;
  RegionParams region;
  double ratio = 0.8;
  RansacParams ransac;
  /// Rescale the estimated matrix to unit determinant.
  bool project_unimodular = false;
  /// Features closer than this to an invalid mask pixel are dropped.
  int mask_margin = 4;
};

struct PairRegistration {
  RegistrationResult result;
  std::vector<Keypoint> keypoints_a;
  std::vector<Keypoint> keypoints_b;
  std::vector<Match> matches;
  /// img_b pulled back into img_a's frame through the estimated transform.
  Image2D warped_b;
  Mask2D warped_b_mask;
};

struct ImageFeatures {
  DetectorStack stack;
  std::vector<FeaturePoint> points;
  std::vector<Keypoint> keypoints;
};

/// Scale space, detector stack, maxima, and descriptors for one image.
/// `valid`, if given, restricts features to the valid region.
ImageFeatures extract_features(const Image2D& img, const PipelineConfig& config, const Mask2D* valid = nullptr);

/// Full pipeline. The estimated transform maps img_a coordinates to img_b
/// coordinates. Throws DegenerateError when fewer than 3 matches survive.
PairRegistration register_pair(const Image2D& img_a, const Image2D& img_b, const PipelineConfig& config,
                               const Mask2D* mask_a = nullptr, const Mask2D* mask_b = nullptr);

struct RegistrationMetrics {
  double mean_endpoint_error = 0.0;
  double max_endpoint_error = 0.0;
  double det_deviation = 0.0;
};

/// Endpoint errors of `estimate` against `truth` over the four frame corners
/// (0,0), (w-1,0), (0,h-1), (w-1,h-1), and |det(estimate.m) - 1|.
RegistrationMetrics eval_registration(const Affine2& estimate, const EquiAffine2& truth, int width, int height);

}  // namespace eqaff
