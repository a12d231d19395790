#include "eqaff/interpolate.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace eqaff {

namespace {

// Catmull-Rom weights for taps at offsets -1, 0, 1, 2 from floor(x).
std::array<double, 4> catmull_rom_weights(double f) {
  const double f2 = f * f;
  const double f3 = f2 * f;
  return {0.5 * (-f3 + 2.0 * f2 - f), 0.5 * (3.0 * f3 - 5.0 * f2 + 2.0), 0.5 * (-3.0 * f3 + 4.0 * f2 + f),
          0.5 * (f3 - f2)};
}

// Base index and fraction for linear interpolation on [0, n-1]; x = n-1 maps to
// (n-2, 1) so the right tap stays in range.
std::pair<int, double> linear_cell(double x, int n) {
  int i = static_cast<int>(std::floor(x));
  if (i >= n - 1) i = n - 2;
  return {i, x - i};
}

[[noreturn]] void out_of_domain(double x, double y) {
  std::ostringstream os;
  os << "sample coordinate (" << x << ", " << y << ") outside image domain";
  throw DomainError(os.str());
}

}  // namespace

double sample_bilinear(const Grid2<double>& img, double x, double y) {
  if (!in_domain(img, x, y)) out_of_domain(x, y);
  const auto [i, fx] = linear_cell(x, img.width());
  const auto [j, fy] = linear_cell(y, img.height());
  const double top = (1.0 - fx) * img(i, j) + fx * img(i + 1, j);
  const double bottom = (1.0 - fx) * img(i, j + 1) + fx * img(i + 1, j + 1);
  return (1.0 - fy) * top + fy * bottom;
}

double sample_bicubic(const Grid2<double>& img, double x, double y) {
  if (!in_domain(img, x, y)) out_of_domain(x, y);
  const int i = static_cast<int>(std::floor(x));
  const int j = static_cast<int>(std::floor(y));
  if (i < 1 || j < 1 || i + 2 > img.width() - 1 || j + 2 > img.height() - 1) return sample_bilinear(img, x, y);

  const auto wx = catmull_rom_weights(x - i);
  const auto wy = catmull_rom_weights(y - j);
  double acc = 0.0;
  for (int b = 0; b < 4; ++b) {
    const auto row = img.row(j - 1 + b);
    const double r = wx[0] * row[i - 1] + wx[1] * row[i] + wx[2] * row[i + 1] + wx[3] * row[i + 2];
    acc += wy[b] * r;
  }
  return acc;
}

double sample_tricubic(const Grid3<double>& vol, double x, double y, double z) {
  if (!in_domain(vol, x, y, z)) {
    std::ostringstream os;
    os << "sample coordinate (" << x << ", " << y << ", " << z << ") outside volume domain";
    throw DomainError(os.str());
  }
  const int i = static_cast<int>(std::floor(x));
  const int j = static_cast<int>(std::floor(y));
  const int k = static_cast<int>(std::floor(z));
  const bool interior = i >= 1 && j >= 1 && k >= 1 && i + 2 <= vol.nx() - 1 && j + 2 <= vol.ny() - 1 &&
                        k + 2 <= vol.nz() - 1;
  if (!interior) {
    const auto [li, fx] = linear_cell(x, vol.nx());
    const auto [lj, fy] = linear_cell(y, vol.ny());
    const auto [lk, fz] = linear_cell(z, vol.nz());
    double acc = 0.0;
    for (int c = 0; c < 2; ++c)
      for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a) {
          const double w = (a ? fx : 1.0 - fx) * (b ? fy : 1.0 - fy) * (c ? fz : 1.0 - fz);
          acc += w * vol(li + a, lj + b, lk + c);
        }
    return acc;
  }
  const auto wx = catmull_rom_weights(x - i);
  const auto wy = catmull_rom_weights(y - j);
  const auto wz = catmull_rom_weights(z - k);
  double acc = 0.0;
  for (int c = 0; c < 4; ++c) {
    double plane = 0.0;
    for (int b = 0; b < 4; ++b) {
      double row = 0.0;
      for (int a = 0; a < 4; ++a) row += wx[a] * vol(i - 1 + a, j - 1 + b, k - 1 + c);
      plane += wy[b] * row;
    }
    acc += wz[c] * plane;
  }
  return acc;
}

}  // namespace eqaff
