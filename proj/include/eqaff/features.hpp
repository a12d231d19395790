#pragma once

#include <vector>

#include "eqaff/image.hpp"
#include "eqaff/invariants.hpp"
#include "eqaff/scalespace.hpp"
#include "eqaff/transform.hpp"

namespace eqaff {

/// Space-scale maximum of the detector stack, at pixel resolution.
struct FeaturePoint {
  int x = 0;
  int y = 0;
  int level = 0;
  double t = 0.0;
  double response = 0.0;

  bool operator==(const FeaturePoint&) const = default;
};

/// Detector field per scale-space level, plus the (pre-smoothed) level images
/// it was computed from.
struct DetectorStack {
  std::vector<InvariantField> levels;
  std::vector<Image2D> images;
  std::vector<double> times;

  std::size_t size() const noexcept { return levels.size(); }
};

/// Applies gaussian_smooth(presmooth_sigma) then detector_field to each level.
DetectorStack build_detector_stack(const ScaleSpace2D& ss, double presmooth_sigma = 1.0);

struct DetectParams {
  double threshold_rel = 0.05;
  double min_corner_ratio = 0.02;
  double window_sigma = 2.0;
};

/// Strict maxima over 8 in-plane neighbours and the 9-pixel blocks of each
/// adjacent level, above threshold_rel * (global stack max), passing the
/// second-moment eigenvalue-ratio test. Sorted by descending response, ties by
/// (level, y, x). Throws ConfigError for out-of-range parameters.
///
/// With `support`, both the stack max and the candidates are restricted to
/// pixels where support != 0, so strong responses on an invalid region (the
/// fill edge of a warped image) do not raise the threshold.
std::vector<FeaturePoint> detect(const DetectorStack& stack, const DetectParams& params = {},
                                 const Mask2D* support = nullptr);

/// Gaussian-weighted (normalized weights, radius ceil(3 sigma)) sum of
/// grad u grad u^T around interior pixel (x, y). Pixels whose central
/// difference is unavailable are skipped.
Mat2 second_moment_matrix(const Grid2<double>& img, int x, int y, double window_sigma);

/// Same, but with the window shaped by `shape`: the weight at pixel p is
/// w(|shape^-1 (p - (x, y))|). Reduces to the isotropic form for identity.
Mat2 second_moment_matrix(const Grid2<double>& img, int x, int y, double window_sigma, const Mat2& shape);

/// lambda_min / lambda_max of a symmetric PSD matrix; 0 for the zero matrix.
double eigen_ratio(const Mat2& m);

/// Pixels whose Chebyshev `margin`-neighbourhood is entirely valid and inside
/// the frame.
Mask2D erode_mask(const Mask2D& mask, int margin);

/// Drops features whose location lies within `margin` pixels (Chebyshev) of
/// an invalid mask pixel or of the frame edge.
std::vector<FeaturePoint> filter_by_mask(const std::vector<FeaturePoint>& points, const Mask2D& mask, int margin);

}  // namespace eqaff
