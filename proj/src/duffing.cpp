#include "varmap/duffing.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace varmap::duffing {

void rhs(std::span<const double> z, double tau, const DuffingParams& params,
         double omega, std::span<double> dz) {
  const double q = z[0], p = z[1];
  dz[0] = p;
  dz[1] = -2.0 * params.beta * p - q - q * q * q - params.epsilon * std::sin(omega * tau);
}

void forcing(std::span<const double> z_d, double s, const DuffingParams& params,
             const poly::Basis& basis, std::span<poly::Poly> out) {
  if (basis.num_vars() != 3) throw std::invalid_argument("duffing forcing: basis needs 3 variables");
  const int n = basis.max_degree();
  if (n < 1 || n > 31) throw std::invalid_argument("duffing forcing: order out of range");
  const double qd = z_d[0], pd = z_d[1];
  const double f2 = -2.0 * params.beta * pd - qd - qd * qd * qd -
                    params.epsilon * std::sin(params.omega_d * s);

  for (auto& g : out) g.set_zero();
  poly::Poly& g1 = out[0];
  poly::Poly& g2 = out[1];

  // dr[j] = coefficient of zeta3^j in 1 + drho(zeta3)
  std::array<double, 32> dr{};
  dr[0] = 1.0;
  for (int j = 1; j <= n; ++j) dr[static_cast<std::size_t>(j)] = dr[static_cast<std::size_t>(j - 1)] * (-1.0 / params.omega_d);

  std::array<int, 3> e{};
  auto put = [&](poly::Poly& g, int e1, int e2, int e3, double c) {
    e = {e1, e2, e3};
    g[basis.index_of(e)] += c;
  };

  // drho * f(z_d, s): pure zeta3 powers
  for (int j = 1; j <= n; ++j) {
    put(g1, 0, 0, j, pd * dr[static_cast<std::size_t>(j)]);
    put(g2, 0, 0, j, f2 * dr[static_cast<std::size_t>(j)]);
  }
  // (1 + drho) * Df
  for (int j = 0; j + 1 <= n; ++j) {
    put(g1, 0, 1, j, dr[static_cast<std::size_t>(j)]);
    put(g2, 1, 0, j, -(1.0 + 3.0 * qd * qd) * dr[static_cast<std::size_t>(j)]);
    put(g2, 0, 1, j, -2.0 * params.beta * dr[static_cast<std::size_t>(j)]);
  }
  for (int j = 0; j + 2 <= n; ++j)
    put(g2, 2, 0, j, -3.0 * qd * dr[static_cast<std::size_t>(j)]);
  for (int j = 0; j + 3 <= n; ++j)
    put(g2, 3, 0, j, -dr[static_cast<std::size_t>(j)]);
}

SystemDefinition system(const DuffingParams& params) {
  SystemDefinition sys;
  sys.state_dim = 2;
  sys.dev_dim = 3;
  sys.params = params;
  sys.parameter_components = {2};
  sys.parameter_values = {params.omega_d};
  sys.design_rhs = [params](std::span<const double> z, double t, std::span<double> dz) {
    rhs(z, t, params, params.omega_d, dz);
  };
  sys.forcing = [params](std::span<const double> z, double t,
                         const poly::Basis& basis, std::span<poly::Poly> out) {
    forcing(z, t, params, basis, out);
  };
  return sys;
}

}  // namespace varmap::duffing
