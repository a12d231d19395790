#include <cmath>

#include <gtest/gtest.h>

#include "eqaff/random.hpp"
#include "eqaff/register.hpp"
#include "eqaff/synth.hpp"

namespace eqaff {
namespace {

Affine2 sample_affine() {
  Affine2 a;
  a.m << 1.1, 0.2, -0.15, 0.95;
  a.t = Vec2(4.0, -3.0);
  return a;
}

double corner_error(const Affine2& est, const Affine2& truth, int w, int h) {
  const Vec2 corners[4] = {{0, 0}, {w - 1.0, 0}, {0, h - 1.0}, {w - 1.0, h - 1.0}};
  double e = 0.0;
  for (const auto& c : corners) e += (est.apply(c) - truth.apply(c)).norm() / 4.0;
  return e;
}

struct Synthetic {
  std::vector<Vec2> a, b;
  std::vector<Match> matches;
};

// n_true exact correspondences under `truth`, then n_out uniform outliers.
Synthetic make_matches(const Affine2& truth, int n_true, int n_out, std::uint64_t seed) {
  Rng rng(seed);
  Synthetic s;
  for (int i = 0; i < n_true + n_out; ++i) {
    const Vec2 p(rng.uniform(0, 255), rng.uniform(0, 255));
    s.a.push_back(p);
    s.b.push_back(i < n_true ? truth.apply(p) : Vec2(rng.uniform(0, 255), rng.uniform(0, 255)));
    s.matches.push_back({i, i, 0.0});
  }
  return s;
}

TEST(FitAffine, ExactOnThreePairs) {
  const Affine2 truth = sample_affine();
  const std::vector<Vec2> src = {{0, 0}, {10, 0}, {3, 7}};
  std::vector<Vec2> dst;
  for (const auto& p : src) dst.push_back(truth.apply(p));
  const Affine2 fit = fit_affine_lsq(src, dst);
  EXPECT_LE((fit.m - truth.m).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LE((fit.t - truth.t).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(FitAffine, IdentityAndDegenerate) {
  const std::vector<Vec2> src = {{1, 2}, {5, 3}, {2, 9}, {7, 7}};
  const Affine2 id = fit_affine_lsq(src, src);
  EXPECT_LE((id.m - Mat2::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE(id.t.norm(), 1e-12);
  const std::vector<Vec2> line = {{0, 0}, {1, 1}, {2, 2}};
  EXPECT_THROW(fit_affine_lsq(line, line), DegenerateError);
  EXPECT_THROW(fit_affine_lsq(std::vector<Vec2>(src.begin(), src.begin() + 2), std::vector<Vec2>(2)), ConfigError);
}

TEST(FitAffine, NoisyPairs) {
  const Affine2 truth = sample_affine();
  Rng rng(2024);
  std::vector<Vec2> src, dst;
  for (int i = 0; i < 10; ++i) {
    const Vec2 p(rng.uniform(0, 255), rng.uniform(0, 255));
    src.push_back(p);
    dst.push_back(truth.apply(p) + 0.5 * Vec2(rng.normal(), rng.normal()));
  }
  EXPECT_LT(corner_error(fit_affine_lsq(src, dst), truth, 256, 256), 1.0);
}

TEST(Ransac, PerfectMatches) {
  const Affine2 truth = sample_affine();
  const Synthetic s = make_matches(truth, 20, 0, 1);
  const RegistrationResult r = ransac_affine(s.matches, s.a, s.b);
  EXPECT_EQ(r.inlier_indices.size(), 20u);
  EXPECT_LE((r.transform.m - truth.m).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_LE((r.transform.t - truth.t).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_LT(r.rms_residual, 1e-9);
}

TEST(Ransac, RecoversInliersAmongOutliers) {
  const Affine2 truth = sample_affine();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Synthetic s = make_matches(truth, 20, 20, 100 + seed);
    RansacParams p;
    p.seed = seed;
    const RegistrationResult r = ransac_affine(s.matches, s.a, s.b, p);
    std::vector<int> expected(20);
    for (int i = 0; i < 20; ++i) expected[i] = i;
    EXPECT_EQ(r.inlier_indices, expected);
    EXPECT_LT(corner_error(r.transform, truth, 256, 256), 0.5);
    // Reported inliers are consistent with the reported transform.
    for (int k : r.inlier_indices) EXPECT_LE((r.transform.apply(s.a[k]) - s.b[k]).norm(), p.inlier_tol);
  }
}

TEST(Ransac, DeterministicPerSeed) {
  const Synthetic s = make_matches(sample_affine(), 15, 25, 7);
  RansacParams p;
  p.seed = 42;
  const RegistrationResult a = ransac_affine(s.matches, s.a, s.b, p);
  const RegistrationResult b = ransac_affine(s.matches, s.a, s.b, p);
  EXPECT_EQ(a.transform.m, b.transform.m);
  EXPECT_EQ(a.transform.t, b.transform.t);
  EXPECT_EQ(a.inlier_indices, b.inlier_indices);
}

TEST(Ransac, OutliersDoNotReduceInliers) {
  const Affine2 truth = sample_affine();
  const Synthetic base = make_matches(truth, 20, 5, 3);
  Synthetic more = base;
  Rng rng(77);
  while (more.a.size() < 60) {
    const Vec2 p(rng.uniform(0, 255), rng.uniform(0, 255));
    const Vec2 q(rng.uniform(0, 255), rng.uniform(0, 255));
    if ((truth.apply(p) - q).norm() < 30.0) continue;  // > 10 x tol
    more.matches.push_back({static_cast<int>(more.a.size()), static_cast<int>(more.a.size()), 0.0});
    more.a.push_back(p);
    more.b.push_back(q);
  }
  RansacParams p;
  p.seed = 5;
  const auto r1 = ransac_affine(base.matches, base.a, base.b, p);
  const auto r2 = ransac_affine(more.matches, more.a, more.b, p);
  EXPECT_GE(r2.inlier_indices.size() + 1, r1.inlier_indices.size());
}

TEST(Ransac, Errors) {
  const std::vector<Vec2> pts = {{0, 0}, {1, 1}, {2, 2}};
  const std::vector<Match> three = {{0, 0, 0.0}, {1, 1, 0.0}, {2, 2, 0.0}};
  EXPECT_THROW(ransac_affine(three, pts, pts), DegenerateError);
  const std::vector<Match> two = {{0, 0, 0.0}, {1, 1, 0.0}};
  try {
    ransac_affine(two, pts, pts);
    FAIL();
  } catch (const DegenerateError& e) {
    EXPECT_NE(std::string(e.what()).find("insufficient"), std::string::npos);
  }
  RansacParams bad;
  bad.n_iter = 0;
  const Synthetic s = make_matches(sample_affine(), 5, 0, 1);
  EXPECT_THROW(ransac_affine(s.matches, s.a, s.b, bad), ConfigError);
}

TEST(RegisterPair, IdentityPair) {
  const Image2D img = blob_field(192, 192, 4);
  PipelineConfig cfg;
  cfg.ransac.seed = 1;
  const PairRegistration r = register_pair(img, img, cfg);
  const RegistrationMetrics m = eval_registration(r.result.transform, EquiAffine2::identity(), 192, 192);
  EXPECT_LT(m.mean_endpoint_error, 0.5);
  EXPECT_EQ(r.warped_b.width(), 192);
}

TEST(RegisterPair, WarpedPair) {
  const Image2D img = blob_field(256, 256, 200);
  const SyntheticPair pair = make_pair(img, 300, {2.0, 0.15, 5.0});
  PipelineConfig cfg;
  cfg.ransac.seed = 7;
  const PairRegistration r = register_pair(img, pair.warped, cfg, nullptr, &pair.mask);
  EXPECT_LE(eval_registration(r.result.transform, pair.transform, 256, 256).mean_endpoint_error, 1.5);
  cfg.project_unimodular = true;
  const PairRegistration u = register_pair(img, pair.warped, cfg, nullptr, &pair.mask);
  EXPECT_NEAR(u.result.transform.det(), 1.0, 1e-12);
}

TEST(RegisterPair, BlankPairIsInsufficient) {
  const Image2D blank(64, 64, 0.5);
  EXPECT_THROW(register_pair(blank, blank, {}), DegenerateError);
}

TEST(Eval, Examples) {
  const EquiAffine2 g = random_equiaffine(3, 2.0, 0.3, 5.0);
  const RegistrationMetrics exact = eval_registration(g.as_affine(), g, 100, 80);
  EXPECT_EQ(exact.mean_endpoint_error, 0.0);
  EXPECT_EQ(exact.max_endpoint_error, 0.0);
  EXPECT_NEAR(exact.det_deviation, 0.0, 1e-12);
  const RegistrationMetrics shift = eval_registration(Affine2{}, EquiAffine2::translation(5.0, 0.0), 100, 80);
  EXPECT_DOUBLE_EQ(shift.mean_endpoint_error, 5.0);
  EXPECT_DOUBLE_EQ(shift.max_endpoint_error, 5.0);
}

}  // namespace
}  // namespace eqaff
