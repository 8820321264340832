#pragma once

#include <numbers>

namespace varmap {

/// Knobs of the scaled driven Duffing oscillator
///   q'' + 2 beta q' + q + q^3 = -epsilon sin(omega tau).
/// The drive phase is fixed (the sine form already absorbs psi = pi/2), so
/// the drive vanishes at stroboscopic times; it is not configurable.
struct DuffingParams {
  double beta = 0.1;
  double epsilon = 25.0;
  double omega_d = 1.285;

  double period() const { return 2.0 * std::numbers::pi / omega_d; }
};

/// Paper-default expansion point: an unstable fixed point of the
/// stroboscopic map at omega = 1.285, epsilon = 25, beta = 0.1.
struct ExpansionPoint {
  double q_bd = 1.26082;
  double p_bd = 2.05452;
  double omega_bd = 1.285;
};

}  // namespace varmap
