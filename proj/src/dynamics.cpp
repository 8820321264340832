#include "varmap/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace varmap::dynamics {

std::array<std::complex<double>, 2> eigenvalues(const Mat2& m) {
  const double tr = m.trace();
  const double disc = tr * tr - 4.0 * m.det();
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    return {std::complex<double>(0.5 * (tr + s), 0.0),
            std::complex<double>(0.5 * (tr - s), 0.0)};
  }
  const double s = std::sqrt(-disc);
  return {std::complex<double>(0.5 * tr, 0.5 * s),
          std::complex<double>(0.5 * tr, -0.5 * s)};
}

namespace {

// Exact stroboscopic map: RK4 over one period with the drive samples
// precomputed on the half-step grid.  Reused across applications at the
// same (params, omega, steps), which is the sweep/orbit access pattern.
struct ExactPlan {
  double beta = 0.0, epsilon = 0.0, omega = 0.0;
  int steps = 0;
  double h = 0.0;
  std::vector<double> drive;  // -epsilon * sin(omega * i * h/2)

  void build(const DuffingParams& params, double om, int n_steps) {
    beta = params.beta;
    epsilon = params.epsilon;
    omega = om;
    steps = n_steps;
    const double T = 2.0 * std::numbers::pi / om;
    h = T / n_steps;
    drive.resize(2 * static_cast<std::size_t>(n_steps) + 1);
    for (std::size_t i = 0; i < drive.size(); ++i)
      drive[i] = -epsilon * std::sin(omega * (0.5 * h * static_cast<double>(i)));
  }

  bool matches(const DuffingParams& params, double om, int n_steps) const {
    return beta == params.beta && epsilon == params.epsilon && omega == om &&
           steps == n_steps;
  }

  Point2 apply(double q, double p) const {
    const double b2 = 2.0 * beta;
    for (int s = 0; s < steps; ++s) {
      const double d0 = drive[2 * static_cast<std::size_t>(s)];
      const double dh = drive[2 * static_cast<std::size_t>(s) + 1];
      const double d1 = drive[2 * static_cast<std::size_t>(s) + 2];
      const double k1q = p;
      const double k1p = -b2 * p - q - q * q * q + d0;
      double qq = q + 0.5 * h * k1q, pp = p + 0.5 * h * k1p;
      const double k2q = pp;
      const double k2p = -b2 * pp - qq - qq * qq * qq + dh;
      qq = q + 0.5 * h * k2q;
      pp = p + 0.5 * h * k2p;
      const double k3q = pp;
      const double k3p = -b2 * pp - qq - qq * qq * qq + dh;
      qq = q + h * k3q;
      pp = p + h * k3p;
      const double k4q = pp;
      const double k4p = -b2 * pp - qq - qq * qq * qq + d1;
      q += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
      p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    }
    return {q, p};
  }
};

const ExactPlan& plan_for(const DuffingParams& params, double omega, int steps) {
  thread_local ExactPlan plan;
  if (!plan.matches(params, omega, steps)) plan.build(params, omega, steps);
  return plan;
}

std::vector<double>& vals_buffer(int size) {
  thread_local std::vector<double> vals;
  vals.resize(static_cast<std::size_t>(size));
  return vals;
}

}  // namespace

MapHandle MapHandle::exact(const DuffingParams& params, int steps) {
  if (steps < 1) throw std::invalid_argument("MapHandle::exact: steps must be >= 1");
  MapHandle h;
  h.params_ = params;
  h.steps_ = steps;
  return h;
}

MapHandle MapHandle::taylor(std::shared_ptr<const PolyMap> map) {
  if (!map || map->components.size() < 2)
    throw std::invalid_argument("MapHandle::taylor: need a map with q and p components");
  MapHandle h;
  h.params_ = map->params;
  h.map_ = std::move(map);
  auto parts = std::make_shared<std::array<poly::Poly, 4>>(
      std::array<poly::Poly, 4>{poly::diff(h.map_->components[0], 0),
                                poly::diff(h.map_->components[0], 1),
                                poly::diff(h.map_->components[1], 0),
                                poly::diff(h.map_->components[1], 1)});
  h.partials_ = std::move(parts);
  return h;
}

Point2 MapHandle::apply(double q, double p, double omega) const {
  if (!map_) return plan_for(params_, omega, steps_).apply(q, p);
  const PolyMap& pm = *map_;
  const double zeta[3] = {q - pm.expansion_point[0], p - pm.expansion_point[1],
                          omega - pm.expansion_point[2]};
  auto& vals = vals_buffer(pm.basis().size());
  pm.basis().monomial_values(zeta, vals);
  double out[2] = {0.0, 0.0};
  for (int a = 0; a < 2; ++a) {
    const auto c = pm.components[static_cast<std::size_t>(a)].coeffs();
    double acc = 0.0;
    for (std::size_t r = 0; r < c.size(); ++r) acc += c[r] * vals[r];
    out[a] = acc;
  }
  return {pm.expansion_point[0] + out[0], pm.expansion_point[1] + out[1]};
}

Mat2 MapHandle::jacobian(double q, double p, double omega) const {
  if (!map_) {
    const double d = 1e-6;
    const Point2 qp = apply(q + d, p, omega), qm = apply(q - d, p, omega);
    const Point2 pp = apply(q, p + d, omega), pm = apply(q, p - d, omega);
    return {(qp.q - qm.q) / (2.0 * d), (pp.q - pm.q) / (2.0 * d),
            (qp.p - qm.p) / (2.0 * d), (pp.p - pm.p) / (2.0 * d)};
  }
  const PolyMap& pm = *map_;
  const double zeta[3] = {q - pm.expansion_point[0], p - pm.expansion_point[1],
                          omega - pm.expansion_point[2]};
  auto& vals = vals_buffer(pm.basis().size());
  pm.basis().monomial_values(zeta, vals);
  double d[4];
  for (int t = 0; t < 4; ++t) {
    const auto c = (*partials_)[static_cast<std::size_t>(t)].coeffs();
    double acc = 0.0;
    for (std::size_t r = 0; r < c.size(); ++r) acc += c[r] * vals[r];
    d[t] = acc;
  }
  return {d[0], d[1], d[2], d[3]};
}

OrbitSample iterate(const MapHandle& map, double q0, double p0, double omega,
                    long long transient, long long keep, double escape_radius) {
  if (transient < 0 || keep < 0)
    throw std::invalid_argument("iterate: transient and keep must be >= 0");
  OrbitSample out;
  double q = q0, p = p0;
  auto escaped = [&](double a, double b) {
    return !(std::isfinite(a) && std::isfinite(b)) ||
           std::abs(a) > escape_radius || std::abs(b) > escape_radius;
  };
  for (long long step = 0; step < transient + keep; ++step) {
    const Point2 z = map.apply(q, p, omega);
    q = z.q;
    p = z.p;
    if (escaped(q, p)) {
      out.escaped = true;
      out.escape_step = step;
      return out;
    }
    if (step >= transient) out.points.push_back({q, p});
  }
  return out;
}

std::optional<int> detect_period(std::span<const Point2> points, double tol,
                                 int max_period) {
  if (max_period < 1) throw std::invalid_argument("detect_period: max_period must be >= 1");
  const long long n = static_cast<long long>(points.size());
  if (n < 2LL * max_period)
    throw std::invalid_argument("detect_period: need at least 2*max_period points");
  for (int k = 1; k <= max_period; ++k) {
    const long long strides = std::min<long long>(4, (n - 1) / k);
    bool ok = strides >= 1;
    for (long long s = 1; ok && s <= strides; ++s) {
      const auto& a = points[static_cast<std::size_t>(n - 1 - s * k)];
      const auto& b = points[static_cast<std::size_t>(n - 1 - (s - 1) * k)];
      ok = std::hypot(a.q - b.q, a.p - b.p) <= tol;
    }
    if (ok) return k;
  }
  return std::nullopt;
}

Mat2 jacobian_power(const MapHandle& map, Point2 z, double omega, int k) {
  if (k < 1) throw std::invalid_argument("jacobian_power: k must be >= 1");
  if (map.is_taylor()) {
    // chain rule along the orbit: J = J(z_{k-1}) * ... * J(z_0)
    Mat2 total{1.0, 0.0, 0.0, 1.0};
    Point2 cur = z;
    for (int i = 0; i < k; ++i) {
      const Mat2 j = map.jacobian(cur.q, cur.p, omega);
      total = {j.a11 * total.a11 + j.a12 * total.a21,
               j.a11 * total.a12 + j.a12 * total.a22,
               j.a21 * total.a11 + j.a22 * total.a21,
               j.a21 * total.a12 + j.a22 * total.a22};
      cur = map.apply(cur.q, cur.p, omega);
    }
    return total;
  }
  const double d = 1e-6;
  auto apply_k = [&](double q, double p) {
    Point2 cur{q, p};
    for (int i = 0; i < k; ++i) cur = map.apply(cur.q, cur.p, omega);
    return cur;
  };
  const Point2 qp = apply_k(z.q + d, z.p), qm = apply_k(z.q - d, z.p);
  const Point2 pp = apply_k(z.q, z.p + d), pm = apply_k(z.q, z.p - d);
  return {(qp.q - qm.q) / (2.0 * d), (pp.q - pm.q) / (2.0 * d),
          (qp.p - qm.p) / (2.0 * d), (pp.p - pm.p) / (2.0 * d)};
}

FixedPointResult newton_fixed_point(const MapHandle& map, int k, Point2 guess,
                                    double omega, double tol, int max_iter) {
  if (k < 1) throw std::invalid_argument("newton_fixed_point: k must be >= 1");
  FixedPointResult res;
  res.period = k;
  res.location = guess;

  auto apply_k = [&](Point2 z) {
    for (int i = 0; i < k; ++i) z = map.apply(z.q, z.p, omega);
    return z;
  };
  auto residual = [&](Point2 z) -> Point2 {
    const Point2 f = apply_k(z);
    return {f.q - z.q, f.p - z.p};
  };

  Point2 z = guess;
  Point2 F = residual(z);
  double fn = std::hypot(F.q, F.p);
  int it = 0;
  while (it < max_iter) {
    if (!std::isfinite(fn)) break;
    if (fn <= tol) {
      res.converged = true;
      break;
    }
    ++it;
    const Mat2 jk = jacobian_power(map, z, omega, k);
    const Mat2 ji{jk.a11 - 1.0, jk.a12, jk.a21, jk.a22 - 1.0};
    const double det = ji.det();
    if (std::abs(det) < 1e-12) {
      res.singular = true;  // expected exactly at bifurcation points
      break;
    }
    Point2 delta{(-F.q * ji.a22 + F.p * ji.a12) / det,
                 (F.q * ji.a21 - F.p * ji.a11) / det};
    // full step, halving on residual increase
    double lambda = 1.0;
    Point2 z_new{z.q + delta.q, z.p + delta.p};
    Point2 F_new = residual(z_new);
    double fn_new = std::hypot(F_new.q, F_new.p);
    for (int half = 0; half < 8 && !(fn_new < fn || fn_new <= tol); ++half) {
      lambda *= 0.5;
      z_new = {z.q + lambda * delta.q, z.p + lambda * delta.p};
      F_new = residual(z_new);
      fn_new = std::hypot(F_new.q, F_new.p);
    }
    z = z_new;
    F = F_new;
    fn = fn_new;
  }

  if (!res.converged && std::isfinite(fn) && fn <= tol) res.converged = true;
  res.iterations = it;
  res.location = z;
  if (std::isfinite(z.q) && std::isfinite(z.p)) {
    const Mat2 jk = jacobian_power(map, z, omega, k);
    res.multipliers = eigenvalues(jk);
    res.stability = (std::abs(res.multipliers[0]) < 1.0 &&
                     std::abs(res.multipliers[1]) < 1.0)
                        ? Stability::stable
                        : Stability::unstable;
  }
  return res;
}

}  // namespace varmap::dynamics
