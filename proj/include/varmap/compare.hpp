#pragma once

#include <span>
#include <vector>

#include "varmap/dynamics.hpp"
#include "varmap/map.hpp"

namespace varmap::compare {

struct CompareConfig {
  std::vector<double> radii{1e-3, 3e-3, 1e-2, 3e-2};
  int directions = 16;   // probe directions on the (q,p) circle
  int ref_steps = 32768; // exact-map reference integrator steps
  int threads = 1;
};

struct CompareRow {
  int order = 0;
  double radius = 0.0;
  double max_err = 0.0;
  double mean_err = 0.0;
};

/// Taylor-vs-exact error survey: for each map order and radius, probes on a
/// circle in (q,p) with zeta3 offsets in {-r, 0, +r}, applied through both
/// the exact map and the polynomial map.  All maps must share one expansion
/// point (throws otherwise); exact references are computed once per radius
/// and reused across orders.
std::vector<CompareRow> compare_maps(std::span<const PolyMap* const> maps,
                                     const CompareConfig& cfg);

}  // namespace varmap::compare
