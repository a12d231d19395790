#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "eqaff/error.hpp"

namespace eqaff {

// Pixel (i, j) sits at real coordinates (x, y) = (i, j); storage is row-major
// (x fastest). Volumes store x fastest, then y, then z.

template <typename T>
class Grid2 {
 public:
  using value_type = T;

  Grid2() = default;
  Grid2(int width, int height, T fill = T{})
      : width_(width), height_(height), data_(checked_size(width, height), fill) {}
  Grid2(int width, int height, std::vector<T> data)
      : width_(width), height_(height), data_(std::move(data)) {
    if (data_.size() != checked_size(width, height))
      throw InvariantError("grid data length does not match width*height");
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  bool contains(int x, int y) const noexcept { return x >= 0 && y >= 0 && x < width_ && y < height_; }
  bool same_shape(const auto& other) const noexcept {
    return width_ == other.width() && height_ == other.height();
  }

  const T& operator()(int x, int y) const { return data_[index(x, y)]; }
  T& operator()(int x, int y) { return data_[index(x, y)]; }

  std::span<const T> data() const noexcept { return data_; }
  std::span<T> data() noexcept { return data_; }
  std::span<const T> row(int y) const { return {data_.data() + index(0, y), static_cast<std::size_t>(width_)}; }

  bool operator==(const Grid2&) const = default;

 protected:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }
  static std::size_t checked_size(int w, int h) {
    if (w < 0 || h < 0) throw InvariantError("negative grid dimensions");
    return static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

template <typename T>
class Grid3 {
 public:
  using value_type = T;

  Grid3() = default;
  Grid3(int nx, int ny, int nz, T fill = T{})
      : nx_(nx), ny_(ny), nz_(nz), data_(checked_size(nx, ny, nz), fill) {}
  Grid3(int nx, int ny, int nz, std::vector<T> data) : nx_(nx), ny_(ny), nz_(nz), data_(std::move(data)) {
    if (data_.size() != checked_size(nx, ny, nz))
      throw InvariantError("volume data length does not match nx*ny*nz");
  }

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  int nz() const noexcept { return nz_; }
  std::size_t size() const noexcept { return data_.size(); }

  bool contains(int x, int y, int z) const noexcept {
    return x >= 0 && y >= 0 && z >= 0 && x < nx_ && y < ny_ && z < nz_;
  }
  bool same_shape(const auto& other) const noexcept {
    return nx_ == other.nx() && ny_ == other.ny() && nz_ == other.nz();
  }

  const T& operator()(int x, int y, int z) const { return data_[index(x, y, z)]; }
  T& operator()(int x, int y, int z) { return data_[index(x, y, z)]; }

  std::span<const T> data() const noexcept { return data_; }
  std::span<T> data() noexcept { return data_; }

  bool operator==(const Grid3&) const = default;

 protected:
  std::size_t index(int x, int y, int z) const noexcept {
    return (static_cast<std::size_t>(z) * static_cast<std::size_t>(ny_) + static_cast<std::size_t>(y)) *
               static_cast<std::size_t>(nx_) +
           static_cast<std::size_t>(x);
  }
  static std::size_t checked_size(int nx, int ny, int nz) {
    if (nx < 0 || ny < 0 || nz < 0) throw InvariantError("negative volume dimensions");
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) * static_cast<std::size_t>(nz);
  }

  int nx_ = 0;
  int ny_ = 0;
  int nz_ = 0;
  std::vector<T> data_;
};

using Mask2D = Grid2<std::uint8_t>;
using Mask3D = Grid3<std::uint8_t>;

/// Scalar intensity image, nominal range [0,1]. At least 3x3, all values finite.
class Image2D : public Grid2<double> {
 public:
  Image2D() = default;
  Image2D(int width, int height, double fill = 0.0);
  Image2D(int width, int height, std::vector<double> data);
  explicit Image2D(Grid2<double> grid);

  /// Throws InvariantError if any value is NaN or infinite.
  void check_finite() const;
};

/// Scalar intensity volume; each dimension at least 3, all values finite.
class Image3D : public Grid3<double> {
 public:
  Image3D() = default;
  Image3D(int nx, int ny, int nz, double fill = 0.0);
  Image3D(int nx, int ny, int nz, std::vector<double> data);

  void check_finite() const;
};

/// Grid-aligned scalar field with a validity mask. Used both for derivative
/// estimates and for invariant fields; the 1-pixel border ring is invalid.
struct Field2D {
  Grid2<double> value;
  Mask2D valid;

  int width() const noexcept { return value.width(); }
  int height() const noexcept { return value.height(); }
  double operator()(int x, int y) const { return value(x, y); }
  bool is_valid(int x, int y) const { return valid(x, y) != 0; }
};

struct Field3D {
  Grid3<double> value;
  Mask3D valid;

  double operator()(int x, int y, int z) const { return value(x, y, z); }
  bool is_valid(int x, int y, int z) const { return valid(x, y, z) != 0; }
};

/// Mask valid everywhere except the outer ring of `border` pixels.
Mask2D interior_mask(int width, int height, int border = 1);
Mask3D interior_mask3(int nx, int ny, int nz, int border = 1);

/// Logical AND of two equally shaped masks.
Mask2D mask_and(const Mask2D& a, const Mask2D& b);

/// Min/max over the whole image.
std::pair<double, double> min_max(std::span<const double> values);

}  // namespace eqaff
