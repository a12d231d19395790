#include "eqaff/describe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "eqaff/interpolate.hpp"

namespace eqaff {

const char* to_string(RegionStatus s) noexcept {
  switch (s) {
    case RegionStatus::Ok:
      return "ok";
    case RegionStatus::Flat:
      return "flat";
    case RegionStatus::Singular:
      return "singular";
    case RegionStatus::OutOfBounds:
      return "out_of_bounds";
  }
  return "unknown";
}

Mat2 inverse_sqrt_spd(const Mat2& m) {
  const Eigen::SelfAdjointEigenSolver<Mat2> es(m);
  const double floor = 1e-12 * std::max(es.eigenvalues()(1), 0.0);
  Vec2 d;
  for (int i = 0; i < 2; ++i) d(i) = 1.0 / std::sqrt(std::max(es.eigenvalues()(i), floor));
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

namespace {

Mat2 unit_det(const Mat2& a) { return a / std::sqrt(std::abs(a.determinant())); }

// Symmetric factor with the same window shape: (a a^T)^(1/2).
Mat2 symmetrize(const Mat2& a) {
  const Eigen::SelfAdjointEigenSolver<Mat2> es(a * a.transpose());
  const Vec2 d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

double condition(const Mat2& sym) {
  const Eigen::SelfAdjointEigenSolver<Mat2> es(sym);
  const double lo = es.eigenvalues()(0);
  return lo > 0.0 ? es.eigenvalues()(1) / lo : std::numeric_limits<double>::infinity();
}

// Classifies the second-moment matrix; Ok means usable for normalization.
RegionStatus classify(const Mat2& m) {
  const Eigen::SelfAdjointEigenSolver<Mat2> es(m);
  const double lmax = es.eigenvalues()(1);
  if (!(lmax > 0.0)) return RegionStatus::Flat;
  if (es.eigenvalues()(0) < 1e-12 * lmax) return RegionStatus::Singular;
  return RegionStatus::Ok;
}

}  // namespace

NormalizedRegion normalize_region(const Grid2<double>& img, const FeaturePoint& fp, const RegionParams& params,
                                  const Mask2D* valid) {
  if (!(params.patch_radius > 0.0) || !(params.window_sigma > 0.0) || params.adaptation_iterations < 0)
    throw ConfigError("normalize_region: invalid parameters");
  NormalizedRegion out;
  if (fp.x < 1 || fp.y < 1 || fp.x > img.width() - 2 || fp.y > img.height() - 2) {
    out.status = RegionStatus::OutOfBounds;
    return out;
  }

  Mat2 shape = Mat2::Identity();
  if (params.adaptation_iterations == 0) {
    const Mat2 m = second_moment_matrix(img, fp.x, fp.y, params.window_sigma);
    out.status = classify(m);
    if (!out.ok()) return out;
    shape = unit_det(inverse_sqrt_spd(m));
  } else {
    for (int it = 0; it < params.adaptation_iterations; ++it) {
      const Mat2 m = second_moment_matrix(img, fp.x, fp.y, params.window_sigma, shape);
      const Mat2 normalized = shape.transpose() * m * shape;
      out.status = classify(normalized);
      if (!out.ok()) return out;
      if (eigen_ratio(normalized) >= params.convergence_ratio) break;
      shape = unit_det(symmetrize(shape * inverse_sqrt_spd(normalized)));
      if (condition(shape) > params.max_condition) {
        out.status = RegionStatus::Singular;
        return out;
      }
    }
  }
  if (condition(shape) > params.max_condition) {
    out.status = RegionStatus::Singular;
    return out;
  }
  out.shape = shape;

  Grid2<double> patch(kPatchSize, kPatchSize, 0.0);
  const Vec2 center(fp.x, fp.y);
  for (int j = 0; j < kPatchSize; ++j)
    for (int i = 0; i < kPatchSize; ++i) {
      const Vec2 u((i + 0.5) * 2.0 / kPatchSize - 1.0, (j + 0.5) * 2.0 / kPatchSize - 1.0);
      const Vec2 p = center + params.patch_radius * (shape * u);
      if (!in_domain(img, p.x(), p.y())) {
        out.status = RegionStatus::OutOfBounds;
        return out;
      }
      if (valid != nullptr && !(*valid)(static_cast<int>(std::lround(p.x())), static_cast<int>(std::lround(p.y())))) {
        out.status = RegionStatus::OutOfBounds;
        return out;
      }
      patch(i, j) = sample_bicubic(img, p.x(), p.y());
    }

  auto d = patch.data();
  const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(d.size());
  double var = 0.0;
  for (double v : d) var += (v - mean) * (v - mean);
  var /= static_cast<double>(d.size());
  if (!(var > 1e-24)) {
    out.status = RegionStatus::Flat;
    return out;
  }
  const double inv_sd = 1.0 / std::sqrt(var);
  for (double& v : d) v = (v - mean) * inv_sd;
  out.patch = std::move(patch);
  return out;
}

bool Descriptor::is_zero() const noexcept {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

double distance(const Descriptor& a, const Descriptor& b) {
  double s = 0.0;
  for (int i = 0; i < kDescriptorSize; ++i) {
    const double d = a.v[i] - b.v[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Descriptor compute_descriptor(const Grid2<double>& patch) {
  if (patch.width() != kPatchSize || patch.height() != kPatchSize)
    throw ConfigError("compute_descriptor: patch must be 20x20");
  constexpr int kCell = kPatchSize / 4;
  Descriptor desc;
  auto at = [&](int x, int y) { return patch(std::clamp(x, 0, kPatchSize - 1), std::clamp(y, 0, kPatchSize - 1)); };
  for (int y = 0; y < kPatchSize; ++y)
    for (int x = 0; x < kPatchSize; ++x) {
      // Central differences; one-sided (halved) at the patch edge via clamping.
      const double gx = 0.5 * (at(x + 1, y) - at(x - 1, y));
      const double gy = 0.5 * (at(x, y + 1) - at(x, y - 1));
      const int cell = (y / kCell) * 4 + (x / kCell);
      double* s = &desc.v[static_cast<std::size_t>(cell) * 4];
      s[0] += gx;
      s[1] += gy;
      s[2] += std::abs(gx);
      s[3] += std::abs(gy);
    }
  double norm = 0.0;
  for (double v : desc.v) norm += v * v;
  norm = std::sqrt(norm);
  if (!(norm > 0.0)) return Descriptor{};
  for (double& v : desc.v) v /= norm;
  return desc;
}

std::vector<Match> match_descriptors(std::span<const Descriptor> list_a, std::span<const Descriptor> list_b,
                                     double ratio) {
  if (!(ratio > 0.0 && ratio <= 1.0)) throw ConfigError("match_descriptors: ratio must be in (0, 1]");
  std::vector<Match> candidates;
  std::vector<int> usable_b;
  for (int j = 0; j < static_cast<int>(list_b.size()); ++j)
    if (!list_b[j].is_zero()) usable_b.push_back(j);
  if (usable_b.empty()) return {};

  for (int i = 0; i < static_cast<int>(list_a.size()); ++i) {
    if (list_a[i].is_zero()) continue;
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = std::numeric_limits<double>::infinity();
    int best = -1;
    for (int j : usable_b) {
      const double d = distance(list_a[i], list_b[j]);
      if (d < d1) {
        d2 = d1;
        d1 = d;
        best = j;
      } else if (d < d2) {
        d2 = d;
      }
    }
    bool accept;
    if (usable_b.size() < 2)
      accept = d1 <= kSingleCandidateCap;
    else
      accept = ratio >= 1.0 || d1 <= ratio * d2;
    if (accept) candidates.push_back({i, best, d1});
  }

  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Match& a, const Match& b) { return a.distance < b.distance; });
  std::vector<char> used_b(list_b.size(), 0);
  std::vector<Match> out;
  for (const auto& m : candidates) {
    if (used_b[static_cast<std::size_t>(m.index_b)]) continue;
    used_b[static_cast<std::size_t>(m.index_b)] = 1;
    out.push_back(m);
  }
  std::sort(out.begin(), out.end(), [](const Match& a, const Match& b) { return a.index_a < b.index_a; });
  return out;
}

std::vector<Keypoint> describe_features(const DetectorStack& stack, const std::vector<FeaturePoint>& points,
                                        const RegionParams& params, const Mask2D* valid) {
  std::vector<Keypoint> out;
  for (const auto& fp : points) {
    const auto& img = stack.images.at(static_cast<std::size_t>(fp.level));
    NormalizedRegion region = normalize_region(img, fp, params, valid);
    if (!region.ok()) continue;
    Descriptor d = compute_descriptor(region.patch);
    if (d.is_zero()) continue;
    out.push_back({fp, d, region.shape});
  }
  return out;
}

}  // namespace eqaff
