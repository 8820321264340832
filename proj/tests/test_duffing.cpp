#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "varmap/duffing.hpp"

using namespace varmap;
using poly::Basis;
using poly::Poly;

namespace {

std::array<double, 2> f(std::array<double, 2> z, double tau,
                        const DuffingParams& params, double omega) {
  std::array<double, 2> dz{};
  duffing::rhs(z, tau, params, omega, dz);
  return dz;
}

int idx3(const Basis& b, int e1, int e2, int e3) {
  std::array<int, 3> e{e1, e2, e3};
  return b.index_of(e);
}

}  // namespace

TEST_CASE("vector field basics") {
  DuffingParams params;

  SUBCASE("origin is an equilibrium of the undriven system") {
    params.epsilon = 0.0;
    auto dz = f({0.0, 0.0}, 1.7, params, params.omega_d);
    CHECK(dz[0] == 0.0);
    CHECK(dz[1] == 0.0);
  }

  SUBCASE("the drive vanishes at tau = 0 for any frequency") {
    params.epsilon = 25.0;
    for (double om : {0.7, 1.285, 3.1}) {
      auto dz = f({0.4, -0.3}, 0.0, params, om);
      auto dz0 = f({0.4, -0.3}, 0.0, DuffingParams{0.1, 0.0, om}, om);
      CHECK(dz[0] == dz0[0]);
      CHECK(dz[1] == dz0[1]);
    }
  }

  SUBCASE("restoring force at q=1") {
    params.epsilon = 0.0;
    auto dz = f({1.0, 0.0}, 0.42, params, params.omega_d);
    CHECK(dz[0] == 0.0);
    CHECK(dz[1] == doctest::Approx(-2.0));
  }
}

TEST_CASE("vector-field divergence is the constant -2 beta") {
  DuffingParams params;
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const double d = 1e-6;
  for (int trial = 0; trial < 20; ++trial) {
    const double q = u(rng), p = u(rng), tau = std::abs(u(rng));
    const double dfq = (f({q + d, p}, tau, params, 1.3)[0] - f({q - d, p}, tau, params, 1.3)[0]) / (2 * d);
    const double dfp = (f({q, p + d}, tau, params, 1.3)[1] - f({q, p - d}, tau, params, 1.3)[1]) / (2 * d);
    CHECK(dfq + dfp == doctest::Approx(-2.0 * params.beta).epsilon(1e-6));
  }
}

TEST_CASE("forcing structure") {
  DuffingParams params;
  const Basis& b = Basis::get(3, 6);
  std::vector<Poly> g(3, Poly(b));

  SUBCASE("constant terms vanish and the parameter row is silent") {
    duffing::forcing(std::vector<double>{0.83, -1.2}, 2.1, params, b, g);
    for (const auto& comp : g) CHECK(comp[0] == 0.0);
    for (int r = 0; r < b.size(); ++r) CHECK(g[2][r] == 0.0);
  }

  SUBCASE("undriven, origin design orbit: pure cubic-oscillator deviations") {
    params.epsilon = 0.0;
    duffing::forcing(std::vector<double>{0.0, 0.0}, 1.0, params, b, g);
    for (int r = 0; r < b.size(); ++r) {
      if (b.exponents_of(r)[2] != 0) continue;  // frequency cross terms aside
      CHECK(g[0][r] == (r == idx3(b, 0, 1, 0) ? 1.0 : 0.0));
      double want = 0.0;
      if (r == idx3(b, 1, 0, 0)) want = -1.0;
      if (r == idx3(b, 0, 1, 0)) want = -2.0 * params.beta;
      if (r == idx3(b, 3, 0, 0)) want = -1.0;
      CHECK(g[1][r] == doctest::Approx(want));
    }
    // pure zeta3 powers carry f(z_d,s) = 0 at the origin without drive
    for (int k = 1; k <= 6; ++k) {
      CHECK(g[0][idx3(b, 0, 0, k)] == 0.0);
      CHECK(g[1][idx3(b, 0, 0, k)] == 0.0);
    }
  }

  SUBCASE("frequency-series tail is negligible across the sweep window") {
    // n-th frequency coefficient relative to its base is (1/omega_d)^n;
    // at the sweep edge |zeta3| = 0.045 the dropped tail is far below 1e-10
    const int n = 8;
    const Basis& b8 = Basis::get(3, n);
    std::vector<Poly> g8(3, Poly(b8));
    duffing::forcing(std::vector<double>{1.1, 0.4}, 2.0, params, b8, g8);
    const double base = g8[1][idx3(b8, 0, 0, 1)];
    const double top = g8[1][idx3(b8, 0, 0, n)];
    REQUIRE(base != 0.0);
    const double tail = std::abs(top / base * std::pow(0.045, n - 1)) * 0.045;
    CHECK(tail < 1e-10);
  }
}

TEST_CASE("forcing is the order-n Taylor remainder of the rescaled field") {
  // oracle: g(zeta) must match rho * f(z_d + dz, s) - f(z_d, s) with
  // rho = omega_d/(omega_d + zeta3) and the drive phase pinned at omega_d s;
  // halving |zeta| must shrink the error by ~2^(n+1)
  DuffingParams params;
  const std::vector<double> zd{0.7, -0.4};
  const double s = 1.3;
  const std::array<double, 3> dir{0.6, -0.7, 0.38};

  auto oracle = [&](double h, int comp) {
    const std::array<double, 2> z{zd[0] + dir[0] * h, zd[1] + dir[1] * h};
    const double rho = params.omega_d / (params.omega_d + dir[2] * h);
    const auto fz = f(z, s, params, params.omega_d);
    const auto fd = f({zd[0], zd[1]}, s, params, params.omega_d);
    return rho * fz[static_cast<std::size_t>(comp)] - fd[static_cast<std::size_t>(comp)];
  };

  for (int n = 1; n <= 8; ++n) {
    const Basis& b = Basis::get(3, n);
    std::vector<Poly> g(3, Poly(b));
    duffing::forcing(zd, s, params, b, g);
    // base displacement grows with n so the halved remainder stays clear of
    // the double-precision floor (~1e-14 here)
    const double h0 = n <= 4 ? 0.1 : (n <= 6 ? 0.2 : 0.35);
    double err[2];
    for (int half = 0; half < 2; ++half) {
      const double h = h0 / (1 << half);
      const std::vector<double> zeta{dir[0] * h, dir[1] * h, dir[2] * h};
      double worst = 0.0;
      for (int comp = 0; comp < 2; ++comp)
        worst = std::max(worst, std::abs(poly::eval(g[static_cast<std::size_t>(comp)], zeta) -
                                         oracle(h, comp)));
      err[half] = worst;
    }
    const double ratio = err[0] / err[1];
    const double want = std::pow(2.0, n + 1);
    INFO("n=", n, " ratio=", ratio, " want=", want);
    CHECK(ratio > 0.5 * want);
    CHECK(ratio < 2.0 * want);
  }
}

TEST_CASE("system definition wiring") {
  DuffingParams params;
  auto sys = duffing::system(params);
  CHECK(sys.state_dim == 2);
  CHECK(sys.dev_dim == 3);
  REQUIRE(sys.parameter_components.size() == 1);
  CHECK(sys.parameter_components[0] == 2);
  REQUIRE(sys.parameter_values.size() == 1);
  CHECK(sys.parameter_values[0] == params.omega_d);

  // design rhs closes over omega_d
  std::vector<double> dz(2);
  sys.design_rhs(std::vector<double>{0.4, 0.9}, 0.77, dz);
  auto want = f({0.4, 0.9}, 0.77, params, params.omega_d);
  CHECK(dz[0] == want[0]);
  CHECK(dz[1] == want[1]);
}
