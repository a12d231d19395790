#include "eqaff/transform.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Geometry>

#include "eqaff/error.hpp"
#include "eqaff/random.hpp"

namespace eqaff {

namespace {

Mat2 rotation(double theta) {
  Mat2 r;
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

void require_unimodular(double det) {
  if (!(std::abs(det - 1.0) <= kUnimodularTol)) {
    std::ostringstream os;
    os << "matrix is not unimodular: det = " << det;
    throw InvariantError(os.str());
  }
}

Mat3 random_rotation3(Rng& rng, double max_angle) {
  Vec3 axis(rng.normal(), rng.normal(), rng.normal());
  if (axis.norm() < 1e-12) axis = Vec3::UnitZ();
  axis.normalize();
  const double angle = rng.uniform(-max_angle, max_angle);
  return Eigen::AngleAxisd(angle, axis).toRotationMatrix();
}

}  // namespace

EquiAffine2::EquiAffine2(const Mat2& m, const Vec2& t) : m_(m), t_(t) { require_unimodular(m.determinant()); }

EquiAffine2 EquiAffine2::translation(double a, double b) { return {Mat2::Identity(), Vec2(a, b)}; }

EquiAffine2 compose(const EquiAffine2& g1, const EquiAffine2& g2) {
  return {g1.matrix() * g2.matrix(), g1.matrix() * g2.offset() + g1.offset()};
}

EquiAffine2 invert(const EquiAffine2& g) {
  const Mat2& m = g.matrix();
  Mat2 inv;
  inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return {inv, -(inv * g.offset())};
}

EquiAffine2 centered(const EquiAffine2& g, double cx, double cy) {
  const Vec2 c(cx, cy);
  return {g.matrix(), c - g.matrix() * c + g.offset()};
}

EquiAffine2 random_equiaffine(std::uint64_t seed, double max_anisotropy, double max_rotation,
                              double max_translation) {
  if (!(max_anisotropy >= 1.0)) throw ConfigError("random_equiaffine: max_anisotropy must be >= 1");
  if (max_rotation < 0.0 || max_translation < 0.0)
    throw ConfigError("random_equiaffine: ranges must be nonnegative");
  Rng rng(seed);
  const double theta1 = rng.uniform(-max_rotation, max_rotation);
  const double theta2 = rng.uniform(-max_rotation, max_rotation);
  const double s = rng.uniform(1.0, max_anisotropy);
  const double a = rng.uniform(-max_translation, max_translation);
  const double b = rng.uniform(-max_translation, max_translation);
  const Mat2 m = rotation(theta1) * Vec2(s, 1.0 / s).asDiagonal() * rotation(theta2);
  return {m, Vec2(a, b)};
}

EquiAffine3::EquiAffine3(const Mat3& m, const Vec3& t) : m_(m), t_(t) { require_unimodular(m.determinant()); }

EquiAffine3 invert(const EquiAffine3& g) {
  const Mat3 inv = g.matrix().inverse();
  return {inv, -(inv * g.offset())};
}

EquiAffine3 centered(const EquiAffine3& g, const Vec3& c) {
  return {g.matrix(), c - g.matrix() * c + g.offset()};
}

EquiAffine3 random_equiaffine3(std::uint64_t seed, double max_anisotropy, double max_rotation,
                               double max_translation) {
  if (!(max_anisotropy >= 1.0)) throw ConfigError("random_equiaffine3: max_anisotropy must be >= 1");
  Rng rng(seed);
  const Mat3 q = random_rotation3(rng, max_rotation);
  const Mat3 r = random_rotation3(rng, max_rotation);
  const double s = rng.uniform(1.0, max_anisotropy);
  Vec3 t;
  for (int i = 0; i < 3; ++i) t[i] = rng.uniform(-max_translation, max_translation);
  const Mat3 m = q * Vec3(s, 1.0, 1.0 / s).asDiagonal() * r;
  return {m, t};
}

}  // namespace eqaff
