#pragma once

#include <cstdint>

#include "eqaff/image.hpp"
#include "eqaff/transform.hpp"
#include "eqaff/warp.hpp"

namespace eqaff {

/// Random field of Gaussian blobs on a flat background.
struct BlobFieldParams {
  int count = 60;
  double sigma_min = 4.0;
  double sigma_max = 9.0;
  double amplitude_min = 0.3;
  double amplitude_max = 1.0;
  /// Ratio of major to minor blob axis is drawn from [1, max_elongation].
  double max_elongation = 1.6;
  /// Blob centers keep this fraction of the frame size away from the edges.
  double margin_fraction = 0.08;
  double background = 0.0;
};

/// Deterministic per seed; intensities rescaled into [background, 1].
Image2D blob_field(int width, int height, std::uint64_t seed, const BlobFieldParams& params = {});

/// Single isotropic Gaussian blob: background + amplitude * exp(-r^2 / (2 sigma^2)).
Image2D gaussian_blob(int width, int height, double cx, double cy, double sigma, double amplitude = 1.0,
                      double background = 0.0);

/// Disc indicator of radius r blurred by a Gaussian edge profile of width `edge`.
Image2D smooth_disc(int width, int height, double cx, double cy, double radius, double edge);

/// White noise Gaussian-filtered with `sigma`, affinely rescaled to [0, 1].
Image2D smooth_noise(int width, int height, std::uint64_t seed, double sigma);

/// 3D analogue of blob_field.
Image3D blob_volume(int nx, int ny, int nz, std::uint64_t seed, int count = 30, double sigma_min = 3.0,
                    double sigma_max = 6.0);

/// Sample f(x, y) at every pixel center.
template <typename F>
Image2D sample_function(int width, int height, F&& f) {
  Image2D img(width, height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) img(x, y) = f(static_cast<double>(x), static_cast<double>(y));
  return img;
}

template <typename F>
Image3D sample_function3(int nx, int ny, int nz, F&& f) {
  Image3D vol(nx, ny, nz);
  for (int z = 0; z < nz; ++z)
    for (int y = 0; y < ny; ++y)
      for (int x = 0; x < nx; ++x)
        vol(x, y, z) = f(static_cast<double>(x), static_cast<double>(y), static_cast<double>(z));
  return vol;
}

/// A synthetic equi-affine pair: `warped` = source warped by `transform`,
/// where `transform` is already conjugated to the frame center.
struct SyntheticPair {
  Image2D source;
  Image2D warped;
  Mask2D mask;
  EquiAffine2 transform;
};

struct PairParams {
  double max_anisotropy = 2.0;
  double max_rotation = 0.15;
  double max_translation = 8.0;
};

/// Warp `source` by a seeded random equi-affine map centered on the frame.
SyntheticPair make_pair(const Image2D& source, std::uint64_t seed, const PairParams& params = {});

}  // namespace eqaff
