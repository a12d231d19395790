#include "eqaff/features.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "eqaff/diffops.hpp"

namespace eqaff {

DetectorStack build_detector_stack(const ScaleSpace2D& ss, double presmooth_sigma) {
  DetectorStack stack;
  for (const auto& level : ss.levels) {
    Image2D smoothed = gaussian_smooth(level.image, presmooth_sigma);
    stack.levels.push_back(detector_field(smoothed));
    stack.images.push_back(std::move(smoothed));
    stack.times.push_back(level.t);
  }
  return stack;
}

namespace {

bool strict_max_in_plane(const Grid2<double>& f, int x, int y, double v, bool include_center) {
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx) {
      if (!include_center && dx == 0 && dy == 0) continue;
      if (f(x + dx, y + dy) >= v) return false;
    }
  return true;
}

}  // namespace

std::vector<FeaturePoint> detect(const DetectorStack& stack, const DetectParams& params, const Mask2D* support) {
  if (!(params.threshold_rel > 0.0 && params.threshold_rel < 1.0))
    throw ConfigError("detect: threshold_rel must be in (0, 1)");
  if (!(params.min_corner_ratio >= 0.0 && params.min_corner_ratio < 1.0))
    throw ConfigError("detect: min_corner_ratio must be in [0, 1)");
  if (!(params.window_sigma > 0.0)) throw ConfigError("detect: window_sigma must be positive");

  std::vector<FeaturePoint> out;
  if (stack.levels.empty()) return out;

  if (support != nullptr && !support->same_shape(stack.levels.front().value))
    throw InvariantError("detect: support mask shape mismatch");
  auto allowed = [support](int x, int y) { return support == nullptr || (*support)(x, y) != 0; };

  double global_max = 0.0;
  for (const auto& f : stack.levels)
    for (int y = 0; y < f.height(); ++y)
      for (int x = 0; x < f.width(); ++x)
        if (f.valid(x, y) && allowed(x, y)) global_max = std::max(global_max, f.value(x, y));
  if (!(global_max > 0.0)) return out;
  const double threshold = params.threshold_rel * global_max;

  const int n = static_cast<int>(stack.levels.size());
  for (int l = 0; l < n; ++l) {
    const auto& f = stack.levels[static_cast<std::size_t>(l)];
    const int w = f.width();
    const int h = f.height();
    for (int y = 1; y < h - 1; ++y)
      for (int x = 1; x < w - 1; ++x) {
        if (!allowed(x, y)) continue;
        const double v = f.value(x, y);
        if (v <= 0.0 || v < threshold) continue;
        if (!strict_max_in_plane(f.value, x, y, v, false)) continue;
        if (l > 0 && !strict_max_in_plane(stack.levels[l - 1].value, x, y, v, true)) continue;
        if (l + 1 < n && !strict_max_in_plane(stack.levels[l + 1].value, x, y, v, true)) continue;
        if (params.min_corner_ratio > 0.0) {
          const Mat2 m = second_moment_matrix(stack.images[l], x, y, params.window_sigma);
          if (eigen_ratio(m) < params.min_corner_ratio) continue;
        }
        out.push_back({x, y, l, stack.times[l], v});
      }
  }
  std::sort(out.begin(), out.end(), [](const FeaturePoint& a, const FeaturePoint& b) {
    if (a.response != b.response) return a.response > b.response;
    if (a.level != b.level) return a.level < b.level;
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  });
  return out;
}

Mat2 second_moment_matrix(const Grid2<double>& img, int x, int y, double window_sigma) {
  return second_moment_matrix(img, x, y, window_sigma, Mat2::Identity());
}

Mat2 second_moment_matrix(const Grid2<double>& img, int x, int y, double window_sigma, const Mat2& shape) {
  if (!(window_sigma > 0.0)) throw ConfigError("second_moment_matrix: window_sigma must be positive");
  if (x < 1 || y < 1 || x > img.width() - 2 || y > img.height() - 2)
    throw DomainError("second_moment_matrix: point must be interior");
  const Mat2 inv = shape.inverse();
  const double cutoff = 3.0 * window_sigma;
  // Bounding box of the ellipse |inv d| <= cutoff.
  const double rx = cutoff * shape.row(0).norm();
  const double ry = cutoff * shape.row(1).norm();
  const int x0 = std::max(1, static_cast<int>(std::floor(x - rx)));
  const int x1 = std::min(img.width() - 2, static_cast<int>(std::ceil(x + rx)));
  const int y0 = std::max(1, static_cast<int>(std::floor(y - ry)));
  const int y1 = std::min(img.height() - 2, static_cast<int>(std::ceil(y + ry)));
  const double inv2s2 = 1.0 / (2.0 * window_sigma * window_sigma);

  double sxx = 0.0, sxy = 0.0, syy = 0.0, wsum = 0.0;
  for (int py = y0; py <= y1; ++py)
    for (int px = x0; px <= x1; ++px) {
      const Vec2 d = inv * Vec2(px - x, py - y);
      const double r2 = d.squaredNorm();
      if (r2 > cutoff * cutoff) continue;
      const double wgt = std::exp(-r2 * inv2s2);
      const double gx = 0.5 * (img(px + 1, py) - img(px - 1, py));
      const double gy = 0.5 * (img(px, py + 1) - img(px, py - 1));
      sxx += wgt * gx * gx;
      sxy += wgt * gx * gy;
      syy += wgt * gy * gy;
      wsum += wgt;
    }
  Mat2 m;
  m << sxx, sxy, sxy, syy;
  return wsum > 0.0 ? Mat2(m / wsum) : Mat2(Mat2::Zero());
}

double eigen_ratio(const Mat2& m) {
  const Eigen::SelfAdjointEigenSolver<Mat2> es(m);
  const double lmax = es.eigenvalues()(1);
  if (!(lmax > 0.0)) return 0.0;
  return std::max(0.0, es.eigenvalues()(0)) / lmax;
}

Mask2D erode_mask(const Mask2D& mask, int margin) {
  if (margin < 0) throw ConfigError("erode_mask: margin must be nonnegative");
  const int w = mask.width();
  const int h = mask.height();
  // Separable min filter: rows, then columns.
  Mask2D rows(w, h, 0);
  for (int y = 0; y < h; ++y)
    for (int x = margin; x < w - margin; ++x) {
      bool ok = true;
      for (int d = -margin; d <= margin && ok; ++d) ok = mask(x + d, y) != 0;
      rows(x, y) = ok ? 1 : 0;
    }
  Mask2D out(w, h, 0);
  for (int y = margin; y < h - margin; ++y)
    for (int x = 0; x < w; ++x) {
      bool ok = true;
      for (int d = -margin; d <= margin && ok; ++d) ok = rows(x, y + d) != 0;
      out(x, y) = ok ? 1 : 0;
    }
  return out;
}

std::vector<FeaturePoint> filter_by_mask(const std::vector<FeaturePoint>& points, const Mask2D& mask, int margin) {
  const Mask2D keep = erode_mask(mask, margin);
  std::vector<FeaturePoint> out;
  for (const auto& p : points)
    if (keep(p.x, p.y)) out.push_back(p);
  return out;
}

}  // namespace eqaff
