#pragma once

#include "eqaff/image.hpp"

namespace eqaff {

/// Catmull-Rom bicubic interpolation at (x, y) in [0, w-1] x [0, h-1].
/// Within one pixel of the border the 4x4 support is unavailable and the
/// sample falls back to bilinear. Throws DomainError outside the domain.
double sample_bicubic(const Grid2<double>& img, double x, double y);

/// Bilinear interpolation on the same domain as sample_bicubic.
double sample_bilinear(const Grid2<double>& img, double x, double y);

/// True if (x, y) lies in the closed sampling domain [0, w-1] x [0, h-1].
inline bool in_domain(const Grid2<double>& img, double x, double y) {
  return x >= 0.0 && y >= 0.0 && x <= img.width() - 1 && y <= img.height() - 1;
}

/// Separable Catmull-Rom tricubic interpolation, trilinear near the border.
double sample_tricubic(const Grid3<double>& vol, double x, double y, double z);

inline bool in_domain(const Grid3<double>& vol, double x, double y, double z) {
  return x >= 0.0 && y >= 0.0 && z >= 0.0 && x <= vol.nx() - 1 && y <= vol.ny() - 1 && z <= vol.nz() - 1;
}

}  // namespace eqaff
