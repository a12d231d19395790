#pragma once

#include "eqaff/image.hpp"
#include "eqaff/transform.hpp"

namespace eqaff {

struct WarpResult {
  Image2D image;
  /// 1 where the preimage g^-1 p lies inside the source domain.
  Mask2D mask;
};

/// Inverse-mapping warp: output(p) = img(g^-1 p), bicubic resampling, same
/// frame as the input. Pixels whose preimage falls outside the source are set
/// to `fill` and flagged invalid in the mask.
WarpResult warp_image(const Image2D& img, const EquiAffine2& g, double fill = 0.0);

/// Same inverse-mapping warp for a general invertible affine map.
/// Throws InvariantError if the map is singular.
WarpResult warp_affine(const Image2D& img, const Affine2& map, double fill = 0.0);

/// Inverse of a general affine map; throws InvariantError if singular.
Affine2 invert(const Affine2& map);

struct WarpResult3 {
  Image3D volume;
  Mask3D mask;
};

WarpResult3 warp_volume(const Image3D& vol, const EquiAffine3& g, double fill = 0.0);

}  // namespace eqaff
