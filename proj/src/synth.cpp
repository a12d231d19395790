#include "eqaff/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eqaff/diffops.hpp"
#include "eqaff/random.hpp"

namespace eqaff {

namespace {

// Adds amplitude * exp(-d^T S^-1 d / 2) within a 4-sigma box, with S given by
// principal standard deviations (sa, sb) rotated by phi.
void splat_blob(Grid2<double>& img, double cx, double cy, double sa, double sb, double phi, double amplitude) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  const double reach = 4.0 * std::max(sa, sb);
  const int x0 = std::max(0, static_cast<int>(std::floor(cx - reach)));
  const int x1 = std::min(img.width() - 1, static_cast<int>(std::ceil(cx + reach)));
  const int y0 = std::max(0, static_cast<int>(std::floor(cy - reach)));
  const int y1 = std::min(img.height() - 1, static_cast<int>(std::ceil(cy + reach)));
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) {
      const double dx = x - cx;
      const double dy = y - cy;
      const double u = (c * dx + s * dy) / sa;
      const double v = (-s * dx + c * dy) / sb;
      img(x, y) += amplitude * std::exp(-0.5 * (u * u + v * v));
    }
}

}  // namespace

Image2D blob_field(int width, int height, std::uint64_t seed, const BlobFieldParams& p) {
  if (p.count < 0 || p.sigma_min <= 0.0 || p.sigma_max < p.sigma_min || p.max_elongation < 1.0)
    throw ConfigError("blob_field: invalid parameters");
  Rng rng(seed);
  Grid2<double> acc(width, height, 0.0);
  const double mx = p.margin_fraction * width;
  const double my = p.margin_fraction * height;
  for (int i = 0; i < p.count; ++i) {
    const double cx = rng.uniform(mx, width - 1 - mx);
    const double cy = rng.uniform(my, height - 1 - my);
    const double sigma = rng.uniform(p.sigma_min, p.sigma_max);
    const double elong = rng.uniform(1.0, p.max_elongation);
    const double phi = rng.uniform(0.0, std::numbers::pi);
    const double amp = rng.uniform(p.amplitude_min, p.amplitude_max);
    splat_blob(acc, cx, cy, sigma * std::sqrt(elong), sigma / std::sqrt(elong), phi, amp);
  }
  const double hi = min_max(acc.data()).second;
  const double scale = hi > 1.0 - p.background ? (1.0 - p.background) / hi : 1.0;
  for (double& v : acc.data()) v = p.background + scale * v;
  return Image2D(std::move(acc));
}

Image2D gaussian_blob(int width, int height, double cx, double cy, double sigma, double amplitude,
                      double background) {
  return sample_function(width, height, [&](double x, double y) {
    const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
    return background + amplitude * std::exp(-r2 / (2.0 * sigma * sigma));
  });
}

Image2D smooth_disc(int width, int height, double cx, double cy, double radius, double edge) {
  return sample_function(width, height, [&](double x, double y) {
    const double r = std::hypot(x - cx, y - cy);
    return 0.5 * std::erfc((r - radius) / (std::numbers::sqrt2 * edge));
  });
}

Image2D smooth_noise(int width, int height, std::uint64_t seed, double sigma) {
  Rng rng(seed);
  Image2D noise(width, height);
  for (double& v : noise.data()) v = rng.normal();
  Image2D smooth = gaussian_smooth(noise, sigma);
  const auto [lo, hi] = min_max(smooth.data());
  const double range = hi > lo ? hi - lo : 1.0;
  for (double& v : smooth.data()) v = (v - lo) / range;
  return smooth;
}

Image3D blob_volume(int nx, int ny, int nz, std::uint64_t seed, int count, double sigma_min, double sigma_max) {
  Rng rng(seed);
  Image3D vol(nx, ny, nz, 0.0);
  const double m = 0.15;
  for (int i = 0; i < count; ++i) {
    const double cx = rng.uniform(m * nx, (1.0 - m) * (nx - 1));
    const double cy = rng.uniform(m * ny, (1.0 - m) * (ny - 1));
    const double cz = rng.uniform(m * nz, (1.0 - m) * (nz - 1));
    const double sigma = rng.uniform(sigma_min, sigma_max);
    const double amp = rng.uniform(0.3, 1.0);
    const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
    for (int z = 0; z < nz; ++z)
      for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x) {
          const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy) + (z - cz) * (z - cz);
          vol(x, y, z) += amp * std::exp(-r2 * inv2s2);
        }
  }
  const double hi = min_max(vol.data()).second;
  if (hi > 1.0)
    for (double& v : vol.data()) v /= hi;
  return vol;
}

SyntheticPair make_pair(const Image2D& source, std::uint64_t seed, const PairParams& params) {
  const EquiAffine2 g0 =
      random_equiaffine(seed, params.max_anisotropy, params.max_rotation, params.max_translation);
  const EquiAffine2 g = centered(g0, 0.5 * (source.width() - 1), 0.5 * (source.height() - 1));
  WarpResult w = warp_image(source, g);
  return {source, std::move(w.image), std::move(w.mask), g};
}

}  // namespace eqaff
