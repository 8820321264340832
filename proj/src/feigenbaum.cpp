#include "varmap/feigenbaum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace varmap::feigenbaum {

namespace {

std::vector<double> omega_grid(const SweepConfig& cfg) {
  if (!(cfg.omega_min < cfg.omega_max))
    throw std::invalid_argument("sweep: omega_min must be < omega_max");
  if (cfg.samples < 2) throw std::invalid_argument("sweep: samples must be >= 2");
  std::vector<double> grid(static_cast<std::size_t>(cfg.samples));
  const double step = (cfg.omega_max - cfg.omega_min) / (cfg.samples - 1);
  for (int i = 0; i < cfg.samples; ++i)
    grid[static_cast<std::size_t>(i)] = cfg.omega_min + step * i;
  if (cfg.direction == Direction::down) std::reverse(grid.begin(), grid.end());
  return grid;
}

SweepRecord run_one(const MapHandle& map, const SweepConfig& cfg, double omega,
                    Point2 seed) {
  SweepRecord rec;
  rec.omega = omega;
  dynamics::OrbitSample orbit = dynamics::iterate(map, seed.q, seed.p, omega,
                                                  cfg.transient, cfg.keep,
                                                  cfg.escape_radius);
  rec.kept = std::move(orbit.points);
  rec.escaped = orbit.escaped;
  if (!rec.escaped &&
      static_cast<long long>(rec.kept.size()) >= 2LL * cfg.period_max)
    rec.period = dynamics::detect_period(rec.kept, cfg.period_tol, cfg.period_max);
  return rec;
}

// Sequential continuation over a slice of the grid: each omega seeds from the
// previous one's final steady point; escapes leave the seed unchanged.
void run_slice(const MapHandle& map, const SweepConfig& cfg,
               std::span<const double> omegas, Point2 seed,
               std::span<SweepRecord> out) {
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    out[i] = run_one(map, cfg, omegas[i], seed);
    if (cfg.seed_mode == SeedMode::continuation && !out[i].escaped &&
        !out[i].kept.empty())
      seed = out[i].kept.back();
  }
}

/// Steady point used to seed the next chunk: full transient at `omega`.
Point2 advance_seed(const MapHandle& map, const SweepConfig& cfg, double omega,
                    Point2 seed) {
  dynamics::OrbitSample orbit =
      dynamics::iterate(map, seed.q, seed.p, omega, cfg.transient, 1, cfg.escape_radius);
  if (!orbit.escaped && !orbit.points.empty()) return orbit.points.back();
  return seed;
}

}  // namespace

std::vector<SweepRecord> sweep(const MapHandle& map, const SweepConfig& cfg) {
  const std::vector<double> grid = omega_grid(cfg);
  std::vector<SweepRecord> records(grid.size());

  if (cfg.seed_mode == SeedMode::fixed) {
    // every sample is independent; identical output for any thread count
    const int nthreads = std::max(1, cfg.threads);
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
    for (long long i = 0; i < static_cast<long long>(grid.size()); ++i)
      records[static_cast<std::size_t>(i)] =
          run_one(map, cfg, grid[static_cast<std::size_t>(i)], cfg.seed);
    return records;
  }

  if (cfg.chunk <= 0 || cfg.chunk >= cfg.samples) {
    run_slice(map, cfg, grid, cfg.seed, records);
    return records;
  }

  // chunked continuation: a coarse sequential pre-pass walks the chunk
  // boundaries to produce per-chunk seeds, then chunks run independently
  const int chunk = cfg.chunk;
  const int n_chunks = (cfg.samples + chunk - 1) / chunk;
  std::vector<Point2> seeds(static_cast<std::size_t>(n_chunks));
  Point2 s = cfg.seed;
  for (int c = 0; c < n_chunks; ++c) {
    seeds[static_cast<std::size_t>(c)] = s;
    const std::size_t last = std::min<std::size_t>(
        static_cast<std::size_t>(c + 1) * chunk, grid.size()) - 1;
    s = advance_seed(map, cfg, grid[last], s);
  }
  const int nthreads = std::max(1, cfg.threads);
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (int c = 0; c < n_chunks; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * chunk;
    const std::size_t hi = std::min(lo + chunk, grid.size());
    run_slice(map, cfg, std::span(grid).subspan(lo, hi - lo),
              seeds[static_cast<std::size_t>(c)],
              std::span(records).subspan(lo, hi - lo));
  }
  return records;
}

std::vector<TrailPoint> unstable_trail(const MapHandle& map,
                                       std::span<const double> omega_grid, int k,
                                       Point2 guess, double tol, int max_iter) {
  if (omega_grid.empty()) throw std::invalid_argument("unstable_trail: empty grid");
  std::vector<TrailPoint> trail;
  Point2 seed = guess;
  for (std::size_t i = 0; i < omega_grid.size(); ++i) {
    FixedPointResult fp =
        dynamics::newton_fixed_point(map, k, seed, omega_grid[i], tol, max_iter);
    if (!fp.converged) {
      if (i == 0)
        throw std::runtime_error("unstable_trail: Newton failed at the first grid point");
      break;  // branch end or bifurcation: truncated trail, not an error
    }
    trail.push_back({omega_grid[i], fp});
    seed = fp.location;
  }
  return trail;
}

CloudResult attractor_cloud(const MapHandle& map, const AttractorConfig& cfg) {
  CloudResult out;
  const int chunks = std::max(1, cfg.chunks);
  if (chunks == 1) {
    dynamics::OrbitSample orbit = dynamics::iterate(
        map, cfg.seed.q, cfg.seed.p, cfg.omega, cfg.transient, cfg.keep, cfg.escape_radius);
    out.escaped = orbit.escaped;
    out.escape_step = orbit.escape_step;
    out.points = std::move(orbit.points);
  } else {
    // each chunk runs its own transient from a deterministically offset seed
    std::vector<dynamics::OrbitSample> parts(static_cast<std::size_t>(chunks));
    const long long base = cfg.keep / chunks;
    const int nthreads = std::max(1, cfg.threads);
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
    for (int c = 0; c < chunks; ++c) {
      const long long quota = base + (c < cfg.keep % chunks ? 1 : 0);
      const Point2 seed{cfg.seed.q + 1e-4 * c, cfg.seed.p - 1e-4 * c};
      parts[static_cast<std::size_t>(c)] = dynamics::iterate(
          map, seed.q, seed.p, cfg.omega, cfg.transient, quota, cfg.escape_radius);
    }
    for (auto& part : parts) {
      if (part.escaped) {
        out.escaped = true;
        if (!out.escape_step) out.escape_step = part.escape_step;
      }
      out.points.insert(out.points.end(), part.points.begin(), part.points.end());
    }
  }
  if (cfg.window) {
    std::vector<Point2> filtered;
    filtered.reserve(out.points.size());
    for (const auto& z : out.points)
      if (cfg.window->contains(z)) filtered.push_back(z);
    out.points = std::move(filtered);
  }
  return out;
}

}  // namespace varmap::feigenbaum
