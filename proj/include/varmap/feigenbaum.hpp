#pragma once

#include <optional>
#include <span>
#include <vector>

#include "varmap/dynamics.hpp"

namespace varmap::feigenbaum {

using dynamics::FixedPointResult;
using dynamics::MapHandle;
using dynamics::Point2;

enum class SeedMode { continuation, fixed };
enum class Direction { up, down };

struct SweepConfig {
  double omega_min = 0.0;
  double omega_max = 0.0;
  int samples = 200;
  long long transient = 2000;
  long long keep = 256;
  SeedMode seed_mode = SeedMode::continuation;
  Point2 seed{0.0, 0.0};
  Direction direction = Direction::up;
  int period_max = 64;
  double period_tol = 1e-6;
  double escape_radius = 1e3;
  // Parallel plan: chunk > 0 splits a continuation sweep into grid chunks
  // seeded by a sequential coarse pre-pass.  Output depends on `chunk` but
  // not on `threads`.  chunk == 0 keeps the strictly sequential protocol.
  int chunk = 0;
  int threads = 1;
};

struct SweepRecord {
  double omega = 0.0;
  std::vector<Point2> kept;
  std::optional<int> period;
  bool escaped = false;
};

/// Steady-state records over a uniform omega grid, in sweep direction order.
std::vector<SweepRecord> sweep(const MapHandle& map, const SweepConfig& cfg);

/// Newton continuation of a period-k fixed point along an omega grid; the
/// first point must converge (throws otherwise), later failures truncate the
/// trail.
struct TrailPoint {
  double omega = 0.0;
  FixedPointResult fp;
};
std::vector<TrailPoint> unstable_trail(const MapHandle& map,
                                       std::span<const double> omega_grid, int k,
                                       Point2 guess, double tol = 1e-10,
                                       int max_iter = 50);

struct Window {
  double q_lo = 0.0, q_hi = 0.0, p_lo = 0.0, p_hi = 0.0;
  bool contains(const Point2& z) const {
    return z.q >= q_lo && z.q <= q_hi && z.p >= p_lo && z.p <= p_hi;
  }
};

struct AttractorConfig {
  double omega = 0.0;
  long long transient = 10000;
  long long keep = 200000;
  std::optional<Window> window;  // filters kept points only
  Point2 seed{0.0, 0.0};
  double escape_radius = 1e3;
  // Parallel plan: chunks > 1 splits `keep` across that many orbits, each
  // with its own transient from a deterministically offset seed.  Output
  // depends on `chunks` but not on `threads`.
  int chunks = 1;
  int threads = 1;
};

struct CloudResult {
  std::vector<Point2> points;
  bool escaped = false;
  std::optional<long long> escape_step;
};

CloudResult attractor_cloud(const MapHandle& map, const AttractorConfig& cfg);

}  // namespace varmap::feigenbaum
