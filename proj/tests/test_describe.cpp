#include <cmath>

#include <gtest/gtest.h>

#include "eqaff/describe.hpp"
#include "eqaff/random.hpp"
#include "eqaff/register.hpp"
#include "eqaff/synth.hpp"
#include "eqaff/warp.hpp"

namespace eqaff {
namespace {

Descriptor random_descriptor(Rng& rng) {
  Descriptor d;
  double n = 0.0;
  for (double& v : d.v) {
    v = rng.normal();
    n += v * v;
  }
  for (double& v : d.v) v /= std::sqrt(n);
  return d;
}

double rms_diff(const Grid2<double>& a, const Grid2<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a.data()[i] - b.data()[i]) * (a.data()[i] - b.data()[i]);
  return std::sqrt(s / static_cast<double>(a.size()));
}

TEST(InverseSqrt, Spd) {
  Mat2 m;
  m << 4.0, 1.0, 1.0, 3.0;
  const Mat2 r = inverse_sqrt_spd(m);
  EXPECT_LE((r * m * r - Mat2::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((r - r.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  const Mat2 iso = inverse_sqrt_spd(Mat2::Identity() * 9.0);
  EXPECT_LE((iso - Mat2::Identity() / 3.0).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(NormalizeRegion, IsotropicBlobGivesIdentityShape) {
  const Image2D img = gaussian_blob(80, 80, 40.0, 40.0, 6.0);
  const NormalizedRegion r = normalize_region(img, {40, 40, 0, 0.0, 1.0});
  ASSERT_TRUE(r.ok()) << to_string(r.status);
  EXPECT_LE((r.shape - Mat2::Identity()).cwiseAbs().maxCoeff(), 1e-6);
  // Equals the plain resampled neighbourhood after standardization.
  Grid2<double> plain(kPatchSize, kPatchSize, 0.0);
  double mean = 0.0;
  for (int j = 0; j < kPatchSize; ++j)
    for (int i = 0; i < kPatchSize; ++i) {
      const double x = 40.0 + 16.0 * ((i + 0.5) * 0.1 - 1.0);
      const double y = 40.0 + 16.0 * ((j + 0.5) * 0.1 - 1.0);
      plain(i, j) = std::exp(-((x - 40) * (x - 40) + (y - 40) * (y - 40)) / 72.0);
      mean += plain(i, j);
    }
  mean /= kPatchSize * kPatchSize;
  double var = 0.0;
  for (double& v : plain.data()) var += (v - mean) * (v - mean);
  var /= kPatchSize * kPatchSize;
  for (double& v : plain.data()) v = (v - mean) / std::sqrt(var);
  EXPECT_LT(rms_diff(r.patch, plain), 0.02);
}

TEST(NormalizeRegion, PatchIsStandardized) {
  const Image2D img = blob_field(96, 96, 3);
  const NormalizedRegion r = normalize_region(img, {48, 48, 0, 0.0, 1.0});
  ASSERT_TRUE(r.ok());
  double mean = 0.0, var = 0.0;
  for (double v : r.patch.data()) mean += v;
  mean /= r.patch.size();
  for (double v : r.patch.data()) var += (v - mean) * (v - mean);
  var /= r.patch.size();
  EXPECT_NEAR(mean, 0.0, 1e-12);
  EXPECT_NEAR(var, 1.0, 1e-12);
  EXPECT_NEAR(r.shape.determinant(), 1.0, 1e-9);
}

TEST(NormalizeRegion, FlatAndOutOfBounds) {
  const Image2D flat(64, 64, 0.5);
  EXPECT_EQ(normalize_region(flat, {32, 32, 0, 0.0, 1.0}).status, RegionStatus::Flat);
  const Image2D img = gaussian_blob(64, 64, 10.0, 32.0, 5.0);
  EXPECT_EQ(normalize_region(img, {10, 32, 0, 0.0, 1.0}).status, RegionStatus::OutOfBounds);
  const Image2D centred = gaussian_blob(64, 64, 32.0, 32.0, 5.0);
  Mask2D hole(64, 64, 1);
  hole(39, 31) = 0;  // nearest pixel of the sample at (39.2, 31.2)
  EXPECT_EQ(normalize_region(centred, {32, 32, 0, 0.0, 1.0}, {}, &hole).status, RegionStatus::OutOfBounds);
}

TEST(NormalizeRegion, EdgeIsSingular) {
  const Image2D ramp = sample_function(64, 64, [](double x, double) { return std::tanh((x - 32) / 4.0); });
  EXPECT_EQ(normalize_region(ramp, {32, 32, 0, 0.0, 1.0}).status, RegionStatus::Singular);
}

TEST(NormalizeRegion, StretchedBlobPatchesAgree) {
  // An elongated blob and its version stretched by 2 along x normalize to
  // the same patch up to a rotation-free residual.
  const auto blob = [](double sx, double sy) {
    return sample_function(128, 128, [=](double x, double y) {
      const double u = (x - 64) / sx, v = (y - 64) / sy;
      return std::exp(-0.5 * (u * u + v * v)) + 0.4 * std::exp(-0.5 * ((u - 1.2) * (u - 1.2) + (v - 0.8) * (v - 0.8)) * 4.0);
    });
  };
  const Image2D a = blob(5.0, 5.0);
  const Image2D b = blob(10.0, 2.5);  // diag(2, 1/2) applied to a
  const FeaturePoint fp{64, 64, 0, 0.0, 1.0};
  RegionParams p;
  p.patch_radius = 10.0;
  const NormalizedRegion ra = normalize_region(a, fp, p);
  const NormalizedRegion rb = normalize_region(b, fp, p);
  ASSERT_TRUE(ra.ok());
  ASSERT_TRUE(rb.ok());
  EXPECT_LT(rms_diff(ra.patch, rb.patch), 0.1);
}

TEST(Descriptor, FlatCopyAndNoise) {
  const Grid2<double> flat(kPatchSize, kPatchSize, 0.0);
  EXPECT_TRUE(compute_descriptor(flat).is_zero());

  const Image2D img = blob_field(96, 96, 14);
  const NormalizedRegion r = normalize_region(img, {48, 48, 0, 0.0, 1.0});
  ASSERT_TRUE(r.ok());
  const Descriptor d = compute_descriptor(r.patch);
  double n = 0.0;
  for (double v : d.v) n += v * v;
  EXPECT_NEAR(n, 1.0, 1e-9);
  EXPECT_EQ(distance(d, compute_descriptor(r.patch)), 0.0);

  Rng rng(3);
  Grid2<double> noisy = r.patch;
  for (double& v : noisy.data()) v += rng.uniform(0.0, 0.01);
  EXPECT_LT(distance(d, compute_descriptor(noisy)), 0.3);
  EXPECT_THROW(compute_descriptor(Grid2<double>(10, 10, 0.0)), ConfigError);
}

TEST(Match, IdentityAndEmpty) {
  Rng rng(1);
  std::vector<Descriptor> a;
  for (int i = 0; i < 12; ++i) a.push_back(random_descriptor(rng));
  const auto m = match_descriptors(a, a);
  ASSERT_EQ(m.size(), a.size());
  for (int i = 0; i < 12; ++i) {
    EXPECT_EQ(m[i].index_a, i);
    EXPECT_EQ(m[i].index_b, i);
    EXPECT_EQ(m[i].distance, 0.0);
  }
  EXPECT_TRUE(match_descriptors(a, {}).empty());
  EXPECT_THROW(match_descriptors(a, a, 0.0), ConfigError);
  EXPECT_THROW(match_descriptors(a, a, 1.1), ConfigError);
}

TEST(Match, RecoversPermutation) {
  Rng rng(5);
  std::vector<Descriptor> a;
  for (int i = 0; i < 10; ++i) a.push_back(random_descriptor(rng));
  const std::vector<int> perm = {3, 7, 0, 9, 1, 5, 8, 2, 6, 4};
  std::vector<Descriptor> b(10);
  for (int i = 0; i < 10; ++i) b[perm[i]] = a[i];
  const auto m = match_descriptors(a, b);
  ASSERT_EQ(m.size(), 10u);
  for (const auto& x : m) EXPECT_EQ(x.index_b, perm[x.index_a]);
}

TEST(Match, SingleCandidateUsesAbsoluteCap) {
  Rng rng(8);
  const Descriptor d = random_descriptor(rng);
  Descriptor near = d;
  near.v[0] += 0.1;
  const Descriptor far = random_descriptor(rng);
  const std::vector<Descriptor> a = {d};
  EXPECT_EQ(match_descriptors(a, std::vector<Descriptor>{near}).size(), 1u);
  EXPECT_TRUE(match_descriptors(a, std::vector<Descriptor>{far}).empty());  // random unit vectors: d ~ sqrt(2)
}

TEST(Match, ZeroSentinelNeverMatches) {
  Rng rng(9);
  const std::vector<Descriptor> a = {Descriptor{}, random_descriptor(rng)};
  const std::vector<Descriptor> b = {Descriptor{}, a[1]};
  const auto m = match_descriptors(a, b, 1.0);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].index_a, 1);
  EXPECT_EQ(m[0].index_b, 1);
}

TEST(Match, OneToOneAndRatio) {
  Rng rng(11);
  const Descriptor base = random_descriptor(rng);
  std::vector<Descriptor> a(3, base);
  for (int i = 0; i < 3; ++i) a[i].v[i] += 0.05 * (i + 1);
  std::vector<Descriptor> b = {base, random_descriptor(rng), random_descriptor(rng)};
  const auto m = match_descriptors(a, b, 1.0);
  std::vector<int> seen(3, 0);
  for (const auto& x : m) EXPECT_EQ(++seen[x.index_b], 1);
  // Two equidistant candidates fail the ratio test.
  std::vector<Descriptor> twins = {base, base};
  twins[0].v[0] += 0.1;
  twins[1].v[1] += 0.1;
  EXPECT_TRUE(match_descriptors(std::vector<Descriptor>{base}, twins, 0.8).empty());
  EXPECT_EQ(match_descriptors(std::vector<Descriptor>{base}, twins, 1.0).size(), 1u);
}

TEST(DescriptorInvariance, MostMatchesGeometricallyCorrect) {
  const Image2D src = blob_field(256, 256, 31);
  const SyntheticPair pair = make_pair(src, 4, {2.0, 0.15, 5.0});
  PipelineConfig cfg;
  const ImageFeatures fa = extract_features(src, cfg);
  const ImageFeatures fb = extract_features(pair.warped, cfg, &pair.mask);
  std::vector<Descriptor> da, db;
  for (const auto& k : fa.keypoints) da.push_back(k.descriptor);
  for (const auto& k : fb.keypoints) db.push_back(k.descriptor);
  const auto matches = match_descriptors(da, db, cfg.ratio);
  ASSERT_GE(matches.size(), 8u);
  int correct = 0;
  for (const auto& m : matches) {
    const auto& pa = fa.keypoints[m.index_a].point;
    const auto& pb = fb.keypoints[m.index_b].point;
    correct += (pair.transform.apply(Vec2(pa.x, pa.y)) - Vec2(pb.x, pb.y)).norm() <= 3.0;
  }
  EXPECT_GE(correct, 0.6 * matches.size());
}

}  // namespace
}  // namespace eqaff
