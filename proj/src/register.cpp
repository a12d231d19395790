#include "eqaff/register.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/LU>

#include "eqaff/random.hpp"
#include "eqaff/warp.hpp"

namespace eqaff {

Affine2 fit_affine_lsq(std::span<const Vec2> src, std::span<const Vec2> dst) {
  if (src.size() != dst.size()) throw ConfigError("fit_affine_lsq: point lists differ in length");
  if (src.size() < 3) throw ConfigError("fit_affine_lsq: need at least 3 point pairs");
  const double n = static_cast<double>(src.size());
  Vec2 ps = Vec2::Zero();
  Vec2 qs = Vec2::Zero();
  for (std::size_t i = 0; i < src.size(); ++i) {
    ps += src[i];
    qs += dst[i];
  }
  const Vec2 pm = ps / n;
  const Vec2 qm = qs / n;
  Mat2 spp = Mat2::Zero();
  Mat2 sqp = Mat2::Zero();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Vec2 p = src[i] - pm;
    const Vec2 q = dst[i] - qm;
    spp += p * p.transpose();
    sqp += q * p.transpose();
  }
  const double tr = spp.trace();
  if (!(tr > 0.0) || !(spp.determinant() > 1e-12 * tr * tr))
    throw DegenerateError("fit_affine_lsq: source points are collinear or coincident");
  Affine2 out;
  out.m = sqp * spp.inverse();
  out.t = qm - out.m * pm;
  return out;
}

namespace {

struct Consensus {
  std::vector<int> inliers;
  double rms = std::numeric_limits<double>::infinity();
};

Consensus consensus(const Affine2& model, std::span<const Match> matches, std::span<const Vec2> pts_a,
                    std::span<const Vec2> pts_b, double tol) {
  Consensus c;
  double sse = 0.0;
  for (int i = 0; i < static_cast<int>(matches.size()); ++i) {
    const auto& m = matches[static_cast<std::size_t>(i)];
    const double r = (model.apply(pts_a[m.index_a]) - pts_b[m.index_b]).norm();
    if (r <= tol) {
      c.inliers.push_back(i);
      sse += r * r;
    }
  }
  if (!c.inliers.empty()) c.rms = std::sqrt(sse / static_cast<double>(c.inliers.size()));
  return c;
}

bool better(const Consensus& a, const Consensus& b) {
  if (a.inliers.size() != b.inliers.size()) return a.inliers.size() > b.inliers.size();
  return a.rms < b.rms;
}

void check_indices(std::span<const Match> matches, std::size_t na, std::size_t nb) {
  for (const auto& m : matches)
    if (m.index_a < 0 || m.index_b < 0 || static_cast<std::size_t>(m.index_a) >= na ||
        static_cast<std::size_t>(m.index_b) >= nb)
      throw ConfigError("ransac_affine: match index out of range");
}

}  // namespace

RegistrationResult ransac_affine(std::span<const Match> matches, std::span<const Vec2> pts_a,
                                 std::span<const Vec2> pts_b, const RansacParams& params) {
  if (params.n_iter < 1) throw ConfigError("ransac_affine: n_iter must be >= 1");
  if (!(params.inlier_tol > 0.0)) throw ConfigError("ransac_affine: inlier_tol must be positive");
  if (matches.size() < 3) {
    std::ostringstream os;
    os << "insufficient data: " << matches.size() << " matches, need at least 3";
    throw DegenerateError(os.str());
  }
  check_indices(matches, pts_a.size(), pts_b.size());

  Rng rng(params.seed);
  const auto n = static_cast<std::uint64_t>(matches.size());
  Consensus best;
  Affine2 best_model;
  bool found = false;
  std::array<Vec2, 3> src;
  std::array<Vec2, 3> dst;
  for (int it = 0; it < params.n_iter; ++it) {
    const auto i0 = rng.index(n);
    auto i1 = rng.index(n - 1);
    if (i1 >= i0) ++i1;
    auto lo = std::min(i0, i1);
    auto hi = std::max(i0, i1);
    auto i2 = rng.index(n - 2);
    if (i2 >= lo) ++i2;
    if (i2 >= hi) ++i2;
    const std::uint64_t idx[3] = {i0, i1, i2};
    for (int k = 0; k < 3; ++k) {
      src[k] = pts_a[matches[idx[k]].index_a];
      dst[k] = pts_b[matches[idx[k]].index_b];
    }
    Affine2 model;
    try {
      model = fit_affine_lsq(src, dst);
    } catch (const DegenerateError&) {
      continue;
    }
    Consensus c = consensus(model, matches, pts_a, pts_b, params.inlier_tol);
    if (!found || better(c, best)) {
      best = std::move(c);
      best_model = model;
      found = true;
    }
  }
  if (!found) throw DegenerateError("ransac_affine: every sampled configuration was degenerate");

  // Refit on the consensus set until the re-validated inlier set is stable.
  Affine2 model = best_model;
  Consensus current = best;
  for (int round = 0; round < 10 && current.inliers.size() >= 3; ++round) {
    std::vector<Vec2> s;
    std::vector<Vec2> d;
    for (int i : current.inliers) {
      s.push_back(pts_a[matches[static_cast<std::size_t>(i)].index_a]);
      d.push_back(pts_b[matches[static_cast<std::size_t>(i)].index_b]);
    }
    Affine2 refit;
    try {
      refit = fit_affine_lsq(s, d);
    } catch (const DegenerateError&) {
      break;
    }
    Consensus next = consensus(refit, matches, pts_a, pts_b, params.inlier_tol);
    if (next.inliers.size() < 3) break;
    const bool stable = next.inliers == current.inliers;
    model = refit;
    current = std::move(next);
    if (stable) break;
  }

  RegistrationResult r;
  r.transform = model;
  r.inlier_indices = std::move(current.inliers);
  r.rms_residual = r.inlier_indices.empty() ? 0.0 : current.rms;
  r.n_iterations_used = params.n_iter;
  return r;
}

ImageFeatures extract_features(const Image2D& img, const PipelineConfig& config, const Mask2D* valid) {
  ImageFeatures f;
  const ScaleSpace2D ss = build_scale_space(img, config.scale);
  f.stack = build_detector_stack(ss, config.presmooth_sigma);
  if (valid != nullptr) {
    const Mask2D support = erode_mask(*valid, config.mask_margin);
    f.points = detect(f.stack, config.detect, &support);
  } else {
    f.points = detect(f.stack, config.detect);
  }
  f.keypoints = describe_features(f.stack, f.points, config.region, valid);
  return f;
}

PairRegistration register_pair(const Image2D& img_a, const Image2D& img_b, const PipelineConfig& config,
                               const Mask2D* mask_a, const Mask2D* mask_b) {
  const ImageFeatures fa = extract_features(img_a, config, mask_a);
  const ImageFeatures fb = extract_features(img_b, config, mask_b);

  std::vector<Descriptor> da;
  std::vector<Descriptor> db;
  std::vector<Vec2> pa;
  std::vector<Vec2> pb;
  for (const auto& k : fa.keypoints) {
    da.push_back(k.descriptor);
    pa.emplace_back(k.point.x, k.point.y);
  }
  for (const auto& k : fb.keypoints) {
    db.push_back(k.descriptor);
    pb.emplace_back(k.point.x, k.point.y);
  }

  PairRegistration out;
  out.keypoints_a = fa.keypoints;
  out.keypoints_b = fb.keypoints;
  out.matches = match_descriptors(da, db, config.ratio);
  out.result = ransac_affine(out.matches, pa, pb, config.ransac);
  if (config.project_unimodular) {
    const double det = out.result.transform.det();
    if (det > 0.0) {
      out.result.transform.m /= std::sqrt(det);
      Consensus c = consensus(out.result.transform, out.matches, pa, pb, config.ransac.inlier_tol);
      out.result.inlier_indices = std::move(c.inliers);
      out.result.rms_residual = out.result.inlier_indices.empty() ? 0.0 : c.rms;
    }
  }
  WarpResult back = warp_affine(img_b, invert(out.result.transform));
  out.warped_b = std::move(back.image);
  out.warped_b_mask = std::move(back.mask);
  return out;
}

RegistrationMetrics eval_registration(const Affine2& estimate, const EquiAffine2& truth, int width, int height) {
  const Vec2 corners[4] = {{0.0, 0.0}, {width - 1.0, 0.0}, {0.0, height - 1.0}, {width - 1.0, height - 1.0}};
  RegistrationMetrics m;
  for (const auto& c : corners) {
    const double e = (estimate.apply(c) - truth.apply(c)).norm();
    m.mean_endpoint_error += e / 4.0;
    m.max_endpoint_error = std::max(m.max_endpoint_error, e);
  }
  m.det_deviation = std::abs(estimate.det() - 1.0);
  return m;
}

}  // namespace eqaff
