#pragma once

#include <span>
#include <vector>

#include "varmap/params.hpp"
#include "varmap/poly.hpp"

namespace varmap {

/// Truncated Taylor transfer map: one polynomial per deviation component,
/// plus the expansion-point metadata needed to interpret deviations as
/// absolute coordinates.  Component constant terms are always zero (the map
/// acts on deviations from the design orbit, and zero deviation is a
/// solution); when the third deviation is the drive-frequency parameter its
/// component is exactly the identity monomial.
struct PolyMap {
  int num_vars = 0;
  int max_degree = 0;
  std::vector<poly::Poly> components;
  std::vector<double> expansion_point;  // (q_bd, p_bd, omega_bd) for Duffing
  DuffingParams params;
  double period = 0.0;  // T = 2 pi / omega_d
  int build_steps = 0;
  std::vector<double> design_final;  // z_d(t1), diagnostics only

  const poly::Basis& basis() const { return components.at(0).basis(); }
};

/// Evaluate all components at one deviation point; the monomial value table
/// is computed once and shared across components.  vals_workspace must have
/// length basis().size() (scratch, contents ignored).
void eval_map(const PolyMap& map, std::span<const double> zeta,
              std::span<double> out, std::span<double> vals_workspace);

/// Convenience allocating variant.
std::vector<double> eval_map(const PolyMap& map, std::span<const double> zeta);

}  // namespace varmap
