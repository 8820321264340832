#pragma once

#include <functional>
#include <span>
#include <vector>

#include "varmap/map.hpp"
#include "varmap/params.hpp"
#include "varmap/poly.hpp"

namespace varmap {

/// An ODE system prepared for map building: the design-orbit right-hand side
/// plus the Taylor coefficients of the vector field about the design orbit
/// (forcing terms).  Every forcing component must have zero constant term
/// (zero deviation stays a solution), and components declared as parameters
/// must have identically zero forcing.
struct SystemDefinition {
  int state_dim = 0;  // design-orbit phase-space dimension m_z
  int dev_dim = 0;    // deviation variables including parameters, m >= m_z

  std::function<void(std::span<const double> z, double t, std::span<double> dz)>
      design_rhs;

  /// Fill `out` (dev_dim polynomials over `basis`) with g_a(z^d, t, zeta).
  std::function<void(std::span<const double> z, double t,
                     const poly::Basis& basis, std::span<poly::Poly> out)>
      forcing;

  /// Deviation components that are constant parameters (indices >= state_dim).
  std::vector<int> parameter_components;
  /// Design values of those parameters, in the same order; appended to the
  /// phase-space expansion point in built maps.
  std::vector<double> parameter_values;

  DuffingParams params;  // metadata snapshot carried into built maps
};

/// Joint integration state: design orbit plus all map coefficients.
struct VariationalState {
  double t = 0.0;
  std::vector<double> z_design;
  std::vector<poly::Poly> h;  // component a holds all h^r_a(t)

  /// Identity map at t0: unit coefficient on each degree-1 self monomial.
  static VariationalState initial(const SystemDefinition& sys,
                                  const poly::Basis& basis,
                                  std::span<const double> z0, double t0);
};

/// One right-hand-side evaluation of the complete variational equations:
/// dz = f(z^d, t); dh_a = sum over nonzero forcing coefficients g_a^r of
/// g_a^r * G_r(h), with the substitution truncated at the basis order.
void variational_rhs(const SystemDefinition& sys, const VariationalState& state,
                     std::span<double> dz, std::span<poly::Poly> dh);

/// Fixed-step classical RK4 on the joint state over [t0, t1]; returns the
/// transfer map about the design orbit as a PolyMap.  t1 == t0 returns the
/// identity map (steps ignored).  Throws on non-finite intermediates, with
/// the failing step in the message.
PolyMap integrate_map(const SystemDefinition& sys, std::span<const double> z0,
                      double t0, double t1, int order, int steps);

/// Max absolute coefficient difference between builds at `steps` and
/// 2*steps; used to validate step-count defaults.
double order_refine_check(const SystemDefinition& sys, std::span<const double> z0,
                          double t0, double t1, int order, int steps);

}  // namespace varmap
