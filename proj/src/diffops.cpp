#include "eqaff/diffops.hpp"

#include <algorithm>
#include <cmath>

namespace eqaff {

namespace {

// Applies `stencil(x, y)` on the interior; border stays 0 and invalid.
template <typename Stencil>
DerivField apply2(const Grid2<double>& img, Stencil&& stencil) {
  const int w = img.width();
  const int h = img.height();
  DerivField f{Grid2<double>(w, h, 0.0), interior_mask(w, h)};
  for (int y = 1; y < h - 1; ++y)
    for (int x = 1; x < w - 1; ++x) f.value(x, y) = stencil(x, y);
  return f;
}

template <typename Stencil>
DerivField3 apply3(const Grid3<double>& vol, Stencil&& stencil) {
  DerivField3 f{Grid3<double>(vol.nx(), vol.ny(), vol.nz(), 0.0), interior_mask3(vol.nx(), vol.ny(), vol.nz())};
  for (int z = 1; z < vol.nz() - 1; ++z)
    for (int y = 1; y < vol.ny() - 1; ++y)
      for (int x = 1; x < vol.nx() - 1; ++x) f.value(x, y, z) = stencil(x, y, z);
  return f;
}

// Mixed derivative along axes (a, b), given unit offsets per axis.
double cross3(const Grid3<double>& u, int x, int y, int z, const int (&ea)[3], const int (&eb)[3]) {
  auto at = [&](int sa, int sb) {
    return u(x + sa * ea[0] + sb * eb[0], y + sa * ea[1] + sb * eb[1], z + sa * ea[2] + sb * eb[2]);
  };
  return (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / 4.0;
}

}  // namespace

DerivField dx(const Grid2<double>& u) {
  return apply2(u, [&](int x, int y) { return (u(x + 1, y) - u(x - 1, y)) / 2.0; });
}

DerivField dy(const Grid2<double>& u) {
  return apply2(u, [&](int x, int y) { return (u(x, y + 1) - u(x, y - 1)) / 2.0; });
}

DerivField dxx(const Grid2<double>& u) {
  return apply2(u, [&](int x, int y) { return u(x + 1, y) - 2.0 * u(x, y) + u(x - 1, y); });
}

DerivField dyy(const Grid2<double>& u) {
  return apply2(u, [&](int x, int y) { return u(x, y + 1) - 2.0 * u(x, y) + u(x, y - 1); });
}

DerivField dxy(const Grid2<double>& u) {
  return apply2(u, [&](int x, int y) {
    return (u(x + 1, y + 1) - u(x + 1, y - 1) - u(x - 1, y + 1) + u(x - 1, y - 1)) / 4.0;
  });
}

Gradient2 gradient2d(const Grid2<double>& img) { return {dx(img), dy(img)}; }

Hessian2 hessian2d(const Grid2<double>& img) { return {dxx(img), dxy(img), dyy(img)}; }

DerivField3 dx(const Grid3<double>& u) {
  return apply3(u, [&](int x, int y, int z) { return (u(x + 1, y, z) - u(x - 1, y, z)) / 2.0; });
}

DerivField3 dy(const Grid3<double>& u) {
  return apply3(u, [&](int x, int y, int z) { return (u(x, y + 1, z) - u(x, y - 1, z)) / 2.0; });
}

DerivField3 dz(const Grid3<double>& u) {
  return apply3(u, [&](int x, int y, int z) { return (u(x, y, z + 1) - u(x, y, z - 1)) / 2.0; });
}

Gradient3 gradient3d(const Grid3<double>& vol) { return {dx(vol), dy(vol), dz(vol)}; }

Hessian3 hessian3d(const Grid3<double>& u) {
  static constexpr int ex[3] = {1, 0, 0};
  static constexpr int ey[3] = {0, 1, 0};
  static constexpr int ez[3] = {0, 0, 1};
  return {
      apply3(u, [&](int x, int y, int z) { return u(x + 1, y, z) - 2.0 * u(x, y, z) + u(x - 1, y, z); }),
      apply3(u, [&](int x, int y, int z) { return cross3(u, x, y, z, ex, ey); }),
      apply3(u, [&](int x, int y, int z) { return cross3(u, x, y, z, ex, ez); }),
      apply3(u, [&](int x, int y, int z) { return u(x, y + 1, z) - 2.0 * u(x, y, z) + u(x, y - 1, z); }),
      apply3(u, [&](int x, int y, int z) { return cross3(u, x, y, z, ey, ez); }),
      apply3(u, [&](int x, int y, int z) { return u(x, y, z + 1) - 2.0 * u(x, y, z) + u(x, y, z - 1); }),
  };
}

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0)) throw ConfigError("gaussian_kernel: sigma must be positive");
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
    sum += k[i + radius];
  }
  for (double& v : k) v /= sum;
  return k;
}

namespace {

// 1D convolution of `n` samples spaced `stride` apart, replicate borders.
void convolve_line(const double* src, double* dst, int n, std::ptrdiff_t stride, const std::vector<double>& k) {
  const int r = static_cast<int>(k.size() / 2);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = -r; j <= r; ++j) {
      const int s = std::clamp(i + j, 0, n - 1);
      acc += k[j + r] * src[s * stride];
    }
    dst[i * stride] = acc;
  }
}

}  // namespace

Image2D gaussian_smooth(const Image2D& img, double sigma) {
  if (sigma < 0.0) throw ConfigError("gaussian_smooth: sigma must be >= 0");
  if (sigma == 0.0) return img;
  const auto k = gaussian_kernel(sigma);
  const int w = img.width();
  const int h = img.height();
  Image2D tmp(w, h);
  Image2D out(w, h);
  for (int y = 0; y < h; ++y) convolve_line(&img.data()[y * w], &tmp.data()[y * w], w, 1, k);
  for (int x = 0; x < w; ++x) convolve_line(&tmp.data()[x], &out.data()[x], h, w, k);
  return out;
}

Image3D gaussian_smooth(const Image3D& vol, double sigma) {
  if (sigma < 0.0) throw ConfigError("gaussian_smooth: sigma must be >= 0");
  if (sigma == 0.0) return vol;
  const auto k = gaussian_kernel(sigma);
  const int nx = vol.nx();
  const int ny = vol.ny();
  const int nz = vol.nz();
  const std::ptrdiff_t sy = nx;
  const std::ptrdiff_t sz = static_cast<std::ptrdiff_t>(nx) * ny;
  Image3D a(nx, ny, nz);
  Image3D b(nx, ny, nz);
  const double* src = vol.data().data();
  for (int z = 0; z < nz; ++z)
    for (int y = 0; y < ny; ++y) convolve_line(src + z * sz + y * sy, a.data().data() + z * sz + y * sy, nx, 1, k);
  for (int z = 0; z < nz; ++z)
    for (int x = 0; x < nx; ++x)
      convolve_line(a.data().data() + z * sz + x, b.data().data() + z * sz + x, ny, sy, k);
  for (int y = 0; y < ny; ++y)
    for (int x = 0; x < nx; ++x)
      convolve_line(b.data().data() + y * sy + x, a.data().data() + y * sy + x, nz, sz, k);
  return a;
}

}  // namespace eqaff
