#pragma once

#include "eqaff/image.hpp"

namespace eqaff {

using InvariantField = Field2D;
using InvariantField3 = Field3D;

/// Second-order jet of a 2D image at a point.
struct Jet2 {
  double ux = 0, uy = 0, uxx = 0, uxy = 0, uyy = 0;
};

/// Central-difference jet at an interior pixel (1 <= x <= w-2, 1 <= y <= h-2).
Jet2 jet_at(const Grid2<double>& img, int x, int y);

/// J = uy^2 uxx - 2 ux uy uxy + ux^2 uyy.
inline double invariant_J(const Jet2& j) {
  return j.uy * j.uy * j.uxx - 2.0 * j.ux * j.uy * j.uxy + j.ux * j.ux * j.uyy;
}

/// H = uxx uyy - uxy^2 (Hessian determinant).
inline double invariant_H(const Jet2& j) { return j.uxx * j.uyy - j.uxy * j.uxy; }

/// Affine-invariant gradient magnitude sqrt(H^2 / (J^2 + 1)).
double detector_value(const Jet2& j);

InvariantField field_J(const Grid2<double>& img);
InvariantField field_H(const Grid2<double>& img);
InvariantField detector_field(const Grid2<double>& img);

/// Pointwise det of the 3x3 central-difference Hessian.
InvariantField3 field_H3(const Grid3<double>& vol);

struct J3Fields {
  /// grad^T adj(Hessian) grad; finite everywhere in the interior.
  InvariantField3 numerator;
  /// numerator / det(Hessian); invalid where |det| < eps_rel * s^3 with
  /// s = max |Hessian entry| at that voxel.
  InvariantField3 ratio;
};

J3Fields field_J3(const Grid3<double>& vol, double eps_rel = 1e-12);

/// Moving frame group parameters for the cross-section
/// z = w = u_z = u_zw = 0, u_w = 1.
struct FrameParams {
  double alpha = 1, beta = 0, gamma = 0, delta = 1;
};

/// Closed-form frame: gamma = ux, delta = uy, beta = (uy uxy - ux uyy) / J,
/// alpha = (uy uxx - ux uxy) / J. Throws DegenerateError when J vanishes
/// (which includes a zero gradient).
FrameParams moving_frame_params(const Jet2& jet);

/// Derivatives of u with respect to (z, w) after the action of the linear
/// part [[alpha, beta], [gamma, delta]].
struct ProlongedJet {
  double uz = 0, uw = 0, uzz = 0, uww = 0, uzw = 0;
};

ProlongedJet prolong(const Jet2& jet, const FrameParams& g);

}  // namespace eqaff
