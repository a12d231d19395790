#pragma once

#include <vector>

#include "eqaff/image.hpp"

namespace eqaff {

// Central differences with unit spacing. No one-sided stencils: the outer
// ring of pixels (voxels) is flagged invalid and holds 0.

using DerivField = Field2D;
using DerivField3 = Field3D;

DerivField dx(const Grid2<double>& img);
DerivField dy(const Grid2<double>& img);
DerivField dxx(const Grid2<double>& img);
DerivField dyy(const Grid2<double>& img);
/// Cross stencil (u(i+1,j+1) - u(i+1,j-1) - u(i-1,j+1) + u(i-1,j-1)) / 4.
DerivField dxy(const Grid2<double>& img);

struct Gradient2 {
  DerivField x, y;
};
struct Hessian2 {
  DerivField xx, xy, yy;
};

Gradient2 gradient2d(const Grid2<double>& img);
Hessian2 hessian2d(const Grid2<double>& img);

DerivField3 dx(const Grid3<double>& vol);
DerivField3 dy(const Grid3<double>& vol);
DerivField3 dz(const Grid3<double>& vol);

struct Gradient3 {
  DerivField3 x, y, z;
};
struct Hessian3 {
  DerivField3 xx, xy, xz, yy, yz, zz;
};

Gradient3 gradient3d(const Grid3<double>& vol);
Hessian3 hessian3d(const Grid3<double>& vol);

/// Sampled Gaussian truncated at radius ceil(3 sigma), normalized to sum 1.
std::vector<double> gaussian_kernel(double sigma);

/// Separable Gaussian convolution with replicated borders. sigma = 0 returns
/// the input unchanged; sigma < 0 throws ConfigError.
Image2D gaussian_smooth(const Image2D& img, double sigma);
Image3D gaussian_smooth(const Image3D& vol, double sigma);

}  // namespace eqaff
