#pragma once

#include <span>

#include "varmap/params.hpp"
#include "varmap/poly.hpp"
#include "varmap/variational.hpp"

namespace varmap::duffing {

/// Right side of the scaled Duffing pair at drive frequency omega:
///   dq = p,  dp = -2 beta p - q - q^3 - epsilon sin(omega tau).
void rhs(std::span<const double> z, double tau, const DuffingParams& params,
         double omega, std::span<double> dz);

/// Forcing terms for the map build in drive-phase time, where one map
/// application is one true drive period for every omega = omega_d + zeta3.
/// In that variable the omega-system reads dz/ds = rho * f(z, s) with
/// rho = omega_d / (omega_d + zeta3) and the drive phase fixed at omega_d*s,
/// so about the design orbit (the rho = 1 system)
///   g = drho(zeta3) * f(z_d, s) + (1 + drho(zeta3)) * Df(zeta),
///   drho = sum_{k>=1} (-zeta3/omega_d)^k   (truncated at the basis order),
///   Df1  = zeta2,
///   Df2  = -(1 + 3 q_d^2) zeta1 - 2 beta zeta2 - 3 q_d zeta1^2 - zeta1^3.
/// Component 3 is identically zero (the parameter does not evolve) and all
/// constant terms vanish by construction.
void forcing(std::span<const double> z_d, double s, const DuffingParams& params,
             const poly::Basis& basis, std::span<poly::Poly> out);

/// The Duffing oscillator packaged for integrate_map: two phase-space
/// variables plus the drive frequency as a third, parameter, deviation.
SystemDefinition system(const DuffingParams& params);

}  // namespace varmap::duffing
