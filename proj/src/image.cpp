#include "eqaff/image.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eqaff {

namespace {

void require_min_dims(int w, int h) {
  if (w < 3 || h < 3) throw InvariantError("image must be at least 3x3");
}

void require_finite(std::span<const double> data, const char* what) {
  for (double v : data)
    if (!std::isfinite(v)) throw InvariantError(std::string(what) + " contains a non-finite value");
}

}  // namespace

Image2D::Image2D(int width, int height, double fill) : Grid2<double>(width, height, fill) {
  require_min_dims(width, height);
  if (!std::isfinite(fill)) throw InvariantError("non-finite fill value");
}

Image2D::Image2D(int width, int height, std::vector<double> data)
    : Grid2<double>(width, height, std::move(data)) {
  require_min_dims(width, height);
  check_finite();
}

Image2D::Image2D(Grid2<double> grid) : Grid2<double>(std::move(grid)) {
  require_min_dims(width_, height_);
  check_finite();
}

void Image2D::check_finite() const { require_finite(data(), "image"); }

Image3D::Image3D(int nx, int ny, int nz, double fill) : Grid3<double>(nx, ny, nz, fill) {
  if (nx < 3 || ny < 3 || nz < 3) throw InvariantError("volume must be at least 3x3x3");
  if (!std::isfinite(fill)) throw InvariantError("non-finite fill value");
}

Image3D::Image3D(int nx, int ny, int nz, std::vector<double> data)
    : Grid3<double>(nx, ny, nz, std::move(data)) {
  if (nx < 3 || ny < 3 || nz < 3) throw InvariantError("volume must be at least 3x3x3");
  check_finite();
}

void Image3D::check_finite() const { require_finite(data(), "volume"); }

Mask2D interior_mask(int width, int height, int border) {
  Mask2D m(width, height, 0);
  for (int y = border; y < height - border; ++y)
    for (int x = border; x < width - border; ++x) m(x, y) = 1;
  return m;
}

Mask3D interior_mask3(int nx, int ny, int nz, int border) {
  Mask3D m(nx, ny, nz, 0);
  for (int z = border; z < nz - border; ++z)
    for (int y = border; y < ny - border; ++y)
      for (int x = border; x < nx - border; ++x) m(x, y, z) = 1;
  return m;
}

Mask2D mask_and(const Mask2D& a, const Mask2D& b) {
  if (!a.same_shape(b)) throw InvariantError("mask_and: shape mismatch");
  Mask2D out(a.width(), a.height(), 0);
  auto da = a.data();
  auto db = b.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = (da[i] && db[i]) ? 1 : 0;
  return out;
}

std::pair<double, double> min_max(std::span<const double> values) {
  if (values.empty()) return {0.0, 0.0};
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return {*lo, *hi};
}

}  // namespace eqaff
