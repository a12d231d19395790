#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "eqaff/image.hpp"
#include "eqaff/transform.hpp"

namespace eqaff::io {

namespace fs = std::filesystem;

/// PGM (P2/P5, 8 or 16 bit) or PNG, chosen by file signature. Values are
/// scaled to [0,1]; colour PNGs are converted with luma 0.299R+0.587G+0.114B.
Image2D read_image(const fs::path& path);

Image2D read_pgm(const fs::path& path);
Image2D read_png(const fs::path& path);

/// Binary PGM (P5). Values are clamped to [0,1] and rounded to 8 or 16 bits.
void write_pgm(const fs::path& path, const Grid2<double>& img, int bit_depth = 16);
/// Grayscale PNG, 8 or 16 bit, same quantization as write_pgm.
void write_png(const fs::path& path, const Grid2<double>& img, int bit_depth = 8);
/// 8-bit RGB PNG from three equally sized channels in [0,1].
void write_png_rgb(const fs::path& path, const Grid2<double>& r, const Grid2<double>& g, const Grid2<double>& b);

/// Mask as 8-bit PGM (0 / 255); reading treats any nonzero pixel as valid.
void write_mask(const fs::path& path, const Mask2D& mask);
Mask2D read_mask(const fs::path& path);

/// Raw little-endian IEEE-754 float32.
void write_raw_f32(const fs::path& path, std::span<const double> values);
std::vector<double> read_raw_f32(const fs::path& path, std::size_t count);

/// Sidecar path for a raw volume: same stem, ".json" extension.
fs::path sidecar_path(const fs::path& raw);

/// Raw float32 volume, x fastest, dimensions from the {"nx","ny","nz"} sidecar.
Image3D read_volume(const fs::path& raw);
void write_volume(const fs::path& raw, const Grid3<double>& vol);

/// Field affinely remapped from [min, max] (over valid pixels) to [0, 65535];
/// writes a sidecar {"min": .., "max": ..} next to the PGM.
void write_field_pgm(const fs::path& path, const Field2D& field);

/// Transform JSON {"m": [[a, b], [c, d]], "t": [tx, ty]}.
Affine2 read_affine(const fs::path& path);
/// Throws InvariantError if the stored matrix is not unimodular.
EquiAffine2 read_equiaffine(const fs::path& path);
void write_affine(const fs::path& path, const Affine2& map);

/// Writes text, creating parent directories.
void write_text(const fs::path& path, const std::string& text);
std::string read_text(const fs::path& path);

}  // namespace eqaff::io
