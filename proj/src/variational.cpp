#include "varmap/variational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace varmap {

namespace {

// Workspace-backed evaluator over flat coefficient rows; the public
// variational_rhs and integrate_map both run through this.
class RhsEvaluator {
 public:
  RhsEvaluator(const SystemDefinition& sys, const poly::Basis& basis)
      : sys_(&sys),
        basis_(&basis),
        powers_(basis),
        product_(static_cast<std::size_t>(basis.size())),
        forcing_(static_cast<std::size_t>(sys.dev_dim), poly::Poly(basis)) {}

  void operator()(std::span<const double> z, double t,
                  std::span<const std::vector<double>> h_rows,
                  std::span<double> dz,
                  std::span<std::vector<double>> dh_rows) {
    sys_->design_rhs(z, t, dz);
    sys_->forcing(z, t, *basis_, forcing_);
    const int L = basis_->size();
    for (int a = 0; a < sys_->dev_dim; ++a) {
      if (forcing_[static_cast<std::size_t>(a)][0] != 0.0)
        throw std::logic_error("variational_rhs: forcing has a constant term");
      std::fill(dh_rows[static_cast<std::size_t>(a)].begin(),
                dh_rows[static_cast<std::size_t>(a)].end(), 0.0);
    }
    powers_.reset(h_rows);
    for (int a = 0; a < sys_->dev_dim; ++a) {
      const auto& g = forcing_[static_cast<std::size_t>(a)];
      auto& dh = dh_rows[static_cast<std::size_t>(a)];
      for (int r = 1; r < L; ++r) {
        const double c = g[r];
        if (c == 0.0) continue;
        powers_.product(r, product_);
        poly::axpy(c, product_, dh);
      }
    }
  }

 private:
  const SystemDefinition* sys_;
  const poly::Basis* basis_;
  poly::PowerTable powers_;
  std::vector<double> product_;
  std::vector<poly::Poly> forcing_;
};

std::vector<std::vector<double>> identity_rows(const SystemDefinition& sys,
                                               const poly::Basis& basis) {
  std::vector<std::vector<double>> rows(
      static_cast<std::size_t>(sys.dev_dim),
      std::vector<double>(static_cast<std::size_t>(basis.size()), 0.0));
  for (int a = 0; a < sys.dev_dim; ++a)
    rows[static_cast<std::size_t>(a)][static_cast<std::size_t>(1 + a)] = 1.0;
  return rows;
}

}  // namespace

VariationalState VariationalState::initial(const SystemDefinition& sys,
                                           const poly::Basis& basis,
                                           std::span<const double> z0, double t0) {
  VariationalState s;
  s.t = t0;
  s.z_design.assign(z0.begin(), z0.end());
  s.h.assign(static_cast<std::size_t>(sys.dev_dim), poly::Poly(basis));
  // degree-1 monomials sit at indices 1..m in variable order
  for (int a = 0; a < sys.dev_dim; ++a) s.h[static_cast<std::size_t>(a)][1 + a] = 1.0;
  return s;
}

void variational_rhs(const SystemDefinition& sys, const VariationalState& state,
                     std::span<double> dz, std::span<poly::Poly> dh) {
  const poly::Basis& basis = state.h.at(0).basis();
  RhsEvaluator eval(sys, basis);
  std::vector<std::vector<double>> h_rows;
  h_rows.reserve(state.h.size());
  for (const auto& hp : state.h) h_rows.emplace_back(hp.coeffs().begin(), hp.coeffs().end());
  std::vector<std::vector<double>> dh_rows(
      h_rows.size(), std::vector<double>(static_cast<std::size_t>(basis.size())));
  eval(state.z_design, state.t, h_rows, dz, dh_rows);
  for (std::size_t a = 0; a < dh_rows.size(); ++a)
    std::copy(dh_rows[a].begin(), dh_rows[a].end(), dh[a].coeffs().begin());
}

namespace {

struct JointState {
  std::vector<double> z;
  std::vector<std::vector<double>> h;

  void axpy_from(const JointState& base, double c, const JointState& k) {
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = base.z[i] + c * k.z[i];
    for (std::size_t a = 0; a < h.size(); ++a)
      for (std::size_t r = 0; r < h[a].size(); ++r)
        h[a][r] = base.h[a][r] + c * k.h[a][r];
  }
};

}  // namespace

PolyMap integrate_map(const SystemDefinition& sys, std::span<const double> z0,
                      double t0, double t1, int order, int steps) {
  if (order < 1) throw std::invalid_argument("integrate_map: order must be >= 1");
  if (static_cast<int>(z0.size()) != sys.state_dim)
    throw std::invalid_argument("integrate_map: wrong design-point dimension");
  const poly::Basis& basis = poly::Basis::get(sys.dev_dim, order);

  PolyMap map;
  map.num_vars = sys.dev_dim;
  map.max_degree = order;
  map.expansion_point.assign(z0.begin(), z0.end());
  map.expansion_point.insert(map.expansion_point.end(), sys.parameter_values.begin(),
                             sys.parameter_values.end());
  map.params = sys.params;
  map.period = t1 - t0;
  map.build_steps = steps;

  JointState y{std::vector<double>(z0.begin(), z0.end()), identity_rows(sys, basis)};

  if (t1 != t0) {
    if (t1 < t0) throw std::invalid_argument("integrate_map: t1 < t0");
    if (steps < 1) throw std::invalid_argument("integrate_map: steps must be >= 1");

    RhsEvaluator eval(sys, basis);
    const double h = (t1 - t0) / steps;
    JointState stage = y, k1 = y, k2 = y, k3 = y, k4 = y;

    auto rhs = [&](const JointState& in, double t, JointState& out) {
      eval(in.z, t,
           std::span<const std::vector<double>>(in.h.data(), in.h.size()),
           out.z, std::span<std::vector<double>>(out.h.data(), out.h.size()));
    };

    for (int step = 0; step < steps; ++step) {
      const double t = t0 + step * h;
      rhs(y, t, k1);
      stage.axpy_from(y, 0.5 * h, k1);
      rhs(stage, t + 0.5 * h, k2);
      stage.axpy_from(y, 0.5 * h, k2);
      rhs(stage, t + 0.5 * h, k3);
      stage.axpy_from(y, h, k3);
      rhs(stage, t + h, k4);
      for (std::size_t i = 0; i < y.z.size(); ++i)
        y.z[i] += h / 6.0 * (k1.z[i] + 2.0 * k2.z[i] + 2.0 * k3.z[i] + k4.z[i]);
      for (std::size_t a = 0; a < y.h.size(); ++a)
        for (std::size_t r = 0; r < y.h[a].size(); ++r)
          y.h[a][r] += h / 6.0 * (k1.h[a][r] + 2.0 * k2.h[a][r] + 2.0 * k3.h[a][r] + k4.h[a][r]);

      for (std::size_t i = 0; i < y.z.size(); ++i)
        if (!std::isfinite(y.z[i]))
          throw std::runtime_error("integrate_map: non-finite design orbit at step " +
                                   std::to_string(step) + ", t = " + std::to_string(t + h));
      for (std::size_t a = 0; a < y.h.size(); ++a) {
        if (y.h[a][0] != 0.0)
          throw std::logic_error("integrate_map: constant term drifted in component " +
                                 std::to_string(a));
        for (std::size_t r = 0; r < y.h[a].size(); ++r)
          if (!std::isfinite(y.h[a][r]))
            throw std::runtime_error("integrate_map: non-finite coefficient, component " +
                                     std::to_string(a) + ", step " + std::to_string(step));
      }
    }
  }

  map.components.assign(static_cast<std::size_t>(sys.dev_dim), poly::Poly(basis));
  for (std::size_t a = 0; a < y.h.size(); ++a)
    std::copy(y.h[a].begin(), y.h[a].end(), map.components[a].coeffs().begin());
  map.design_final = y.z;
  return map;
}

double order_refine_check(const SystemDefinition& sys, std::span<const double> z0,
                          double t0, double t1, int order, int steps) {
  const PolyMap coarse = integrate_map(sys, z0, t0, t1, order, steps);
  const PolyMap fine = integrate_map(sys, z0, t0, t1, order, 2 * steps);
  double worst = 0.0;
  for (std::size_t a = 0; a < coarse.components.size(); ++a) {
    const auto ca = coarse.components[a].coeffs();
    const auto fa = fine.components[a].coeffs();
    for (std::size_t r = 0; r < ca.size(); ++r)
      worst = std::max(worst, std::abs(ca[r] - fa[r]));
  }
  return worst;
}

}  // namespace varmap
