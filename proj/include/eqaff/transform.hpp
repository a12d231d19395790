#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace eqaff {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Tolerance on |det(m) - 1| for equi-affine group elements.
inline constexpr double kUnimodularTol = 1e-9;

/// General invertible affine map p -> m p + t.
struct Affine2 {
  Mat2 m = Mat2::Identity();
  Vec2 t = Vec2::Zero();

  Vec2 apply(const Vec2& p) const { return m * p + t; }
  double det() const { return m.determinant(); }
};

/// Element of SA(2): p -> m p + t with det(m) = 1.
/// Matrix entries are [[alpha, beta], [gamma, delta]], translation (a, b).
class EquiAffine2 {
 public:
  EquiAffine2() = default;
  /// Throws InvariantError unless |det(m) - 1| <= kUnimodularTol.
  EquiAffine2(const Mat2& m, const Vec2& t);

  static EquiAffine2 identity() { return {}; }
  static EquiAffine2 translation(double a, double b);

  const Mat2& matrix() const noexcept { return m_; }
  const Vec2& offset() const noexcept { return t_; }
  Vec2 apply(const Vec2& p) const { return m_ * p + t_; }
  Affine2 as_affine() const { return {m_, t_}; }

 private:
  Mat2 m_ = Mat2::Identity();
  Vec2 t_ = Vec2::Zero();
};

/// g1 after g2: p -> g1(g2(p)).
EquiAffine2 compose(const EquiAffine2& g1, const EquiAffine2& g2);
/// Closed-form inverse: m^-1 = [[delta, -beta], [-gamma, alpha]], t' = -m^-1 t.
EquiAffine2 invert(const EquiAffine2& g);

/// Conjugate g by the translation to (cx, cy): p -> c + g.m (p - c) + g.t.
EquiAffine2 centered(const EquiAffine2& g, double cx, double cy);

/// g = R(theta1) diag(s, 1/s) R(theta2) + t with s in [1, max_anisotropy],
/// theta1, theta2 in [-max_rotation, max_rotation], t in [-max_translation,
/// max_translation]^2. Deterministic per seed. Throws ConfigError if
/// max_anisotropy < 1.
EquiAffine2 random_equiaffine(std::uint64_t seed, double max_anisotropy, double max_rotation,
                              double max_translation);

/// Element of SA(3): p -> m p + t with det(m) = 1.
class EquiAffine3 {
 public:
  EquiAffine3() = default;
  EquiAffine3(const Mat3& m, const Vec3& t);

  const Mat3& matrix() const noexcept { return m_; }
  const Vec3& offset() const noexcept { return t_; }
  Vec3 apply(const Vec3& p) const { return m_ * p + t_; }

 private:
  Mat3 m_ = Mat3::Identity();
  Vec3 t_ = Vec3::Zero();
};

EquiAffine3 invert(const EquiAffine3& g);
EquiAffine3 centered(const EquiAffine3& g, const Vec3& c);

/// Q diag(s, 1, 1/s) R + t with Q, R rotations of angle at most max_rotation
/// about random axes, s in [1, max_anisotropy], t in [-max_translation,
/// max_translation]^3. Deterministic per seed.
EquiAffine3 random_equiaffine3(std::uint64_t seed, double max_anisotropy, double max_rotation,
                               double max_translation);

}  // namespace eqaff
