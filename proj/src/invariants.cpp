#include "eqaff/invariants.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace eqaff {

namespace {

template <typename Fn>
InvariantField pointwise(const Grid2<double>& img, Fn&& fn) {
  const int w = img.width();
  const int h = img.height();
  InvariantField f{Grid2<double>(w, h, 0.0), interior_mask(w, h)};
  for (int y = 1; y < h - 1; ++y)
    for (int x = 1; x < w - 1; ++x) f.value(x, y) = fn(jet_at(img, x, y));
  return f;
}

struct Jet3 {
  Eigen::Vector3d grad;
  Eigen::Matrix3d hess;
};

Jet3 jet3_at(const Grid3<double>& u, int x, int y, int z) {
  Jet3 j;
  j.grad << (u(x + 1, y, z) - u(x - 1, y, z)) / 2.0, (u(x, y + 1, z) - u(x, y - 1, z)) / 2.0,
      (u(x, y, z + 1) - u(x, y, z - 1)) / 2.0;
  const double c = 2.0 * u(x, y, z);
  const double hxx = u(x + 1, y, z) - c + u(x - 1, y, z);
  const double hyy = u(x, y + 1, z) - c + u(x, y - 1, z);
  const double hzz = u(x, y, z + 1) - c + u(x, y, z - 1);
  const double hxy = (u(x + 1, y + 1, z) - u(x + 1, y - 1, z) - u(x - 1, y + 1, z) + u(x - 1, y - 1, z)) / 4.0;
  const double hxz = (u(x + 1, y, z + 1) - u(x + 1, y, z - 1) - u(x - 1, y, z + 1) + u(x - 1, y, z - 1)) / 4.0;
  const double hyz = (u(x, y + 1, z + 1) - u(x, y + 1, z - 1) - u(x, y - 1, z + 1) + u(x, y - 1, z - 1)) / 4.0;
  j.hess << hxx, hxy, hxz, hxy, hyy, hyz, hxz, hyz, hzz;
  return j;
}

// Adjugate (transposed cofactor matrix) of a symmetric 3x3 matrix.
Eigen::Matrix3d adjugate(const Eigen::Matrix3d& a) {
  Eigen::Matrix3d adj;
  adj(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  adj(0, 1) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
  adj(0, 2) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
  adj(1, 0) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
  adj(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
  adj(1, 2) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
  adj(2, 0) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
  adj(2, 1) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
  adj(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  return adj;
}

}  // namespace

Jet2 jet_at(const Grid2<double>& u, int x, int y) {
  const double c = u(x, y);
  const double e = u(x + 1, y);
  const double wv = u(x - 1, y);
  const double n = u(x, y - 1);
  const double s = u(x, y + 1);
  return {(e - wv) / 2.0, (s - n) / 2.0, e - 2.0 * c + wv,
          (u(x + 1, y + 1) - u(x + 1, y - 1) - u(x - 1, y + 1) + u(x - 1, y - 1)) / 4.0, s - 2.0 * c + n};
}

double detector_value(const Jet2& j) {
  const double h = invariant_H(j);
  const double jj = invariant_J(j);
  return std::sqrt(h * h / (jj * jj + 1.0));
}

InvariantField field_J(const Grid2<double>& img) { return pointwise(img, invariant_J); }

InvariantField field_H(const Grid2<double>& img) { return pointwise(img, invariant_H); }

InvariantField detector_field(const Grid2<double>& img) { return pointwise(img, detector_value); }

InvariantField3 field_H3(const Grid3<double>& vol) {
  InvariantField3 f{Grid3<double>(vol.nx(), vol.ny(), vol.nz(), 0.0), interior_mask3(vol.nx(), vol.ny(), vol.nz())};
  for (int z = 1; z < vol.nz() - 1; ++z)
    for (int y = 1; y < vol.ny() - 1; ++y)
      for (int x = 1; x < vol.nx() - 1; ++x) f.value(x, y, z) = jet3_at(vol, x, y, z).hess.determinant();
  return f;
}

J3Fields field_J3(const Grid3<double>& vol, double eps_rel) {
  const int nx = vol.nx();
  const int ny = vol.ny();
  const int nz = vol.nz();
  J3Fields out{{Grid3<double>(nx, ny, nz, 0.0), interior_mask3(nx, ny, nz)},
               {Grid3<double>(nx, ny, nz, 0.0), Mask3D(nx, ny, nz, 0)}};
  for (int z = 1; z < nz - 1; ++z)
    for (int y = 1; y < ny - 1; ++y)
      for (int x = 1; x < nx - 1; ++x) {
        const Jet3 j = jet3_at(vol, x, y, z);
        const double num = j.grad.dot(adjugate(j.hess) * j.grad);
        out.numerator.value(x, y, z) = num;
        const double det = j.hess.determinant();
        const double scale = j.hess.cwiseAbs().maxCoeff();
        if (scale > 0.0 && std::abs(det) >= eps_rel * scale * scale * scale) {
          out.ratio.value(x, y, z) = num / det;
          out.ratio.valid(x, y, z) = 1;
        }
      }
  return out;
}

FrameParams moving_frame_params(const Jet2& jet) {
  const double jv = invariant_J(jet);
  const double g2 = jet.ux * jet.ux + jet.uy * jet.uy;
  const double hscale = std::max({std::abs(jet.uxx), std::abs(jet.uxy), std::abs(jet.uyy)});
  if (g2 == 0.0 || !(std::abs(jv) > 1e-14 * g2 * hscale))
    throw DegenerateError("moving frame undefined: J vanishes at this point");
  FrameParams p;
  p.gamma = jet.ux;
  p.delta = jet.uy;
  p.beta = (jet.uy * jet.uxy - jet.ux * jet.uyy) / jv;
  p.alpha = (jet.uy * jet.uxx - jet.ux * jet.uxy) / jv;
  return p;
}

ProlongedJet prolong(const Jet2& j, const FrameParams& g) {
  const double a = g.alpha;
  const double b = g.beta;
  const double c = g.gamma;
  const double d = g.delta;
  ProlongedJet p;
  p.uz = d * j.ux - c * j.uy;
  p.uw = -b * j.ux + a * j.uy;
  p.uzz = d * d * j.uxx - 2.0 * c * d * j.uxy + c * c * j.uyy;
  p.uww = b * b * j.uxx - 2.0 * a * b * j.uxy + a * a * j.uyy;
  p.uzw = -b * d * j.uxx + (a * d + b * c) * j.uxy - a * c * j.uyy;
  return p;
}

}  // namespace eqaff
