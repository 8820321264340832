#include "varmap/compare.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace varmap::compare {

using dynamics::MapHandle;
using dynamics::Point2;

std::vector<CompareRow> compare_maps(std::span<const PolyMap* const> maps,
                                     const CompareConfig& cfg) {
  if (maps.empty()) throw std::invalid_argument("compare: need at least one map");
  if (cfg.directions < 1) throw std::invalid_argument("compare: directions must be >= 1");
  const PolyMap& first = *maps[0];
  for (const PolyMap* m : maps) {
    if (m->expansion_point != first.expansion_point)
      throw std::invalid_argument("compare: maps have mismatched expansion points");
  }
  const double qbd = first.expansion_point[0];
  const double pbd = first.expansion_point[1];
  const double ombd = first.expansion_point[2];
  const MapHandle exact = MapHandle::exact(first.params, cfg.ref_steps);
  const int nthreads = std::max(1, cfg.threads);

  // probe set per radius: directions x zeta3 in {-r, 0, +r}
  struct Probe {
    double dq, dp, z3;
  };
  std::vector<CompareRow> rows;
  rows.reserve(maps.size() * cfg.radii.size());

  for (double radius : cfg.radii) {
    std::vector<Probe> probes;
    probes.reserve(static_cast<std::size_t>(cfg.directions) * 3);
    for (int zi = -1; zi <= 1; ++zi)
      for (int t = 0; t < cfg.directions; ++t) {
        const double th = 2.0 * std::numbers::pi * (t + 0.5) / cfg.directions;
        probes.push_back({radius * std::cos(th), radius * std::sin(th), zi * radius});
      }

    std::vector<Point2> refs(probes.size());
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
    for (long long i = 0; i < static_cast<long long>(probes.size()); ++i) {
      const Probe& pr = probes[static_cast<std::size_t>(i)];
      refs[static_cast<std::size_t>(i)] =
          exact.apply(qbd + pr.dq, pbd + pr.dp, ombd + pr.z3);
    }

    for (const PolyMap* m : maps) {
      const MapHandle taylor = MapHandle::taylor(std::shared_ptr<const PolyMap>(m, [](const PolyMap*) {}));
      double max_err = 0.0, sum_err = 0.0;
      for (std::size_t i = 0; i < probes.size(); ++i) {
        const Probe& pr = probes[i];
        const Point2 ty = taylor.apply(qbd + pr.dq, pbd + pr.dp, ombd + pr.z3);
        const double err = std::hypot(ty.q - refs[i].q, ty.p - refs[i].p);
        max_err = std::max(max_err, err);
        sum_err += err;
      }
      rows.push_back({m->max_degree, radius, max_err,
                      sum_err / static_cast<double>(probes.size())});
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const CompareRow& a, const CompareRow& b) {
    return a.order != b.order ? a.order < b.order : a.radius < b.radius;
  });
  return rows;
}

}  // namespace varmap::compare
