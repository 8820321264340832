#pragma once

#include <array>
#include <complex>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "varmap/map.hpp"
#include "varmap/params.hpp"

namespace varmap::dynamics {

struct Point2 {
  double q = 0.0, p = 0.0;
};

struct Mat2 {
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;
  double det() const { return a11 * a22 - a12 * a21; }
  double trace() const { return a11 + a22; }
};

/// Eigenvalues of a 2x2 real matrix (complex pair allowed).
std::array<std::complex<double>, 2> eigenvalues(const Mat2& m);

/// One stroboscopic map, exact or polynomial, behind a uniform
/// (q, p, omega) -> (q', p') call.  Handles are immutable; applying a
/// taylor handle never mutates the underlying PolyMap.
class MapHandle {
 public:
  /// Exact map: RK4 over one period T = 2 pi / omega from tau = 0.
  static MapHandle exact(const DuffingParams& params, int steps = 2000);
  /// Polynomial map: deviations about the stored expansion point, with
  /// zeta3 = omega - omega_bd.
  static MapHandle taylor(std::shared_ptr<const PolyMap> map);

  bool is_taylor() const { return map_ != nullptr; }
  const PolyMap* map() const { return map_.get(); }
  const DuffingParams& params() const { return params_; }
  int exact_steps() const { return steps_; }

  /// Non-finite inputs or polynomial blow-ups propagate as non-finite
  /// outputs; escape is the caller's data, not an exception.
  Point2 apply(double q, double p, double omega) const;

  /// One-application Jacobian: central finite differences (step 1e-6) for
  /// the exact map, the differentiated polynomials for a taylor map.
  Mat2 jacobian(double q, double p, double omega) const;

 private:
  MapHandle() = default;
  DuffingParams params_;
  int steps_ = 2000;
  std::shared_ptr<const PolyMap> map_;
  // d(component a)/d(zeta_b) for a,b in {q,p}; built once per handle
  std::shared_ptr<const std::array<poly::Poly, 4>> partials_;
};

struct OrbitSample {
  std::vector<Point2> points;
  bool escaped = false;
  std::optional<long long> escape_step;  // application index, transient included
};

/// Apply the map `transient` times discarding output, then `keep` more times
/// recording; escape when |q| or |p| exceeds escape_radius or goes
/// non-finite (points truncate there).
OrbitSample iterate(const MapHandle& map, double q0, double p0, double omega,
                    long long transient, long long keep, double escape_radius = 1e3);

/// Smallest k <= max_period such that k-strides over the tail of `points`
/// agree within tol (Euclidean), checked over min(4, available) strides.
/// Requires points.size() >= 2 * max_period.
std::optional<int> detect_period(std::span<const Point2> points, double tol,
                                 int max_period);

enum class Stability { stable, unstable };

struct FixedPointResult {
  Point2 location;
  int period = 1;
  Stability stability = Stability::unstable;
  std::array<std::complex<double>, 2> multipliers{};
  bool converged = false;
  int iterations = 0;
  bool singular = false;  // |det(J - I)| < 1e-12 encountered (bifurcation point)
};

/// Jacobian of the k-fold map: chain-rule product of per-step Jacobians
/// along the orbit for taylor maps, central differences of the k-fold
/// composition for exact maps.
Mat2 jacobian_power(const MapHandle& map, Point2 z, double omega, int k);

/// Damped Newton on F(z) = M^k(z) - z; classifies stability from the
/// multipliers of the k-step Jacobian.
FixedPointResult newton_fixed_point(const MapHandle& map, int k, Point2 guess,
                                    double omega, double tol = 1e-10,
                                    int max_iter = 50);

}  // namespace varmap::dynamics
