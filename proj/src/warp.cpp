#include "eqaff/warp.hpp"

#include <cmath>

#include "eqaff/interpolate.hpp"

namespace eqaff {

Affine2 invert(const Affine2& map) {
  const double det = map.det();
  if (!(std::abs(det) > 0.0) || !std::isfinite(det)) throw InvariantError("affine map is singular");
  const Mat2 inv = map.m.inverse();
  return {inv, -(inv * map.t)};
}

namespace {

// output(p) = img(inv p).
WarpResult pull_back(const Image2D& img, const Affine2& inv, double fill) {
  Image2D out(img.width(), img.height(), fill);
  Mask2D mask(img.width(), img.height(), 0);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const Vec2 p = inv.apply(Vec2(x, y));
      if (!in_domain(img, p.x(), p.y())) continue;
      out(x, y) = sample_bicubic(img, p.x(), p.y());
      mask(x, y) = 1;
    }
  }
  return {std::move(out), std::move(mask)};
}

}  // namespace

WarpResult warp_image(const Image2D& img, const EquiAffine2& g, double fill) {
  return pull_back(img, invert(g).as_affine(), fill);
}

WarpResult warp_affine(const Image2D& img, const Affine2& map, double fill) {
  return pull_back(img, invert(map), fill);
}

WarpResult3 warp_volume(const Image3D& vol, const EquiAffine3& g, double fill) {
  const EquiAffine3 inv = invert(g);
  Image3D out(vol.nx(), vol.ny(), vol.nz(), fill);
  Mask3D mask(vol.nx(), vol.ny(), vol.nz(), 0);
  for (int z = 0; z < vol.nz(); ++z)
    for (int y = 0; y < vol.ny(); ++y)
      for (int x = 0; x < vol.nx(); ++x) {
        const Vec3 p = inv.apply(Vec3(x, y, z));
        if (!in_domain(vol, p.x(), p.y(), p.z())) continue;
        out(x, y, z) = sample_tricubic(vol, p.x(), p.y(), p.z());
        mask(x, y, z) = 1;
      }
  return {std::move(out), std::move(mask)};
}

}  // namespace eqaff
