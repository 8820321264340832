#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "varmap/duffing.hpp"
#include "varmap/variational.hpp"

using namespace varmap;
using poly::Basis;
using poly::Poly;

namespace {

// damped-oscillator matrix exponential exp(t * [[0,1],[-1,-2b]])
std::array<double, 4> osc_expm(double beta, double t) {
  const double mu = std::sqrt(1.0 - beta * beta);
  const double eb = std::exp(-beta * t);
  const double c = std::cos(mu * t), s = std::sin(mu * t);
  return {eb * (c + beta * s / mu), eb * s / mu,
          -eb * s / mu, eb * (c - beta * s / mu)};
}

// linear 2-var system dz = A z with A = [[0,1],[-1,-2b]], no parameters
SystemDefinition oscillator_system(double beta) {
  SystemDefinition sys;
  sys.state_dim = 2;
  sys.dev_dim = 2;
  sys.design_rhs = [beta](std::span<const double> z, double, std::span<double> dz) {
    dz[0] = z[1];
    dz[1] = -z[0] - 2.0 * beta * z[1];
  };
  sys.forcing = [beta](std::span<const double>, double, const Basis& b,
                       std::span<Poly> out) {
    for (auto& g : out) g.set_zero();
    std::vector<int> e1{1, 0}, e2{0, 1};
    out[0][b.index_of(e2)] = 1.0;
    out[1][b.index_of(e1)] = -1.0;
    out[1][b.index_of(e2)] = -2.0 * beta;
  };
  return sys;
}

int idx3(const Basis& b, int e1, int e2, int e3) {
  std::array<int, 3> e{e1, e2, e3};
  return b.index_of(e);
}

}  // namespace

TEST_CASE("initial state is the identity map") {
  auto sys = duffing::system({});
  const Basis& b = Basis::get(3, 4);
  std::vector<double> z0{0.5, -0.25};
  auto s = VariationalState::initial(sys, b, z0, 0.0);
  REQUIRE(s.h.size() == 3);
  for (int a = 0; a < 3; ++a)
    for (int r = 0; r < b.size(); ++r)
      CHECK(s.h[static_cast<std::size_t>(a)][r] == (r == 1 + a ? 1.0 : 0.0));
}

TEST_CASE("zero forcing freezes the map") {
  SystemDefinition sys = oscillator_system(0.1);
  sys.forcing = [](std::span<const double>, double, const Basis&, std::span<Poly> out) {
    for (auto& g : out) g.set_zero();
  };
  const Basis& b = Basis::get(2, 3);
  auto s = VariationalState::initial(sys, b, std::vector<double>{0.2, 0.1}, 0.0);
  std::vector<double> dz(2);
  std::vector<Poly> dh(2, Poly(b));
  variational_rhs(sys, s, dz, dh);
  for (const auto& d : dh)
    for (int r = 0; r < b.size(); ++r) CHECK(d[r] == 0.0);
  PolyMap map = integrate_map(sys, std::vector<double>{0.2, 0.1}, 0.0, 1.0, 3, 32);
  for (int a = 0; a < 2; ++a)
    for (int r = 0; r < b.size(); ++r)
      CHECK(map.components[static_cast<std::size_t>(a)][r] == (r == 1 + a ? 1.0 : 0.0));
}

TEST_CASE("purely linear forcing gives the first-degree variational equations") {
  const double beta = 0.1;
  SystemDefinition sys = oscillator_system(beta);
  const Basis& b = Basis::get(2, 3);
  auto s = VariationalState::initial(sys, b, std::vector<double>{0.3, 0.0}, 0.0);
  std::vector<double> dz(2);
  std::vector<Poly> dh(2, Poly(b));
  variational_rhs(sys, s, dz, dh);
  // dH1 = H2, dH2 = -H1 - 2b H2 with H the identity map
  for (int r = 0; r < b.size(); ++r) {
    CHECK(dh[0][r] == (r == 2 ? 1.0 : 0.0));
    CHECK(dh[1][r] == doctest::Approx(r == 1 ? -1.0 : (r == 2 ? -2.0 * beta : 0.0)));
  }

  const double t1 = 2.0;
  PolyMap map = integrate_map(sys, std::vector<double>{0.3, 0.0}, 0.0, t1, 3, 512);
  auto expm = osc_expm(beta, t1);
  CHECK(map.components[0][1] == doctest::Approx(expm[0]).epsilon(1e-10));
  CHECK(map.components[0][2] == doctest::Approx(expm[1]).epsilon(1e-10));
  CHECK(map.components[1][1] == doctest::Approx(expm[2]).epsilon(1e-10));
  CHECK(map.components[1][2] == doctest::Approx(expm[3]).epsilon(1e-10));
  for (int a = 0; a < 2; ++a)
    for (int r = b.degree_begin(2); r < b.size(); ++r)
      CHECK(map.components[static_cast<std::size_t>(a)][r] == 0.0);
}

TEST_CASE("degenerate time span returns the identity map") {
  auto sys = duffing::system({});
  PolyMap map = integrate_map(sys, std::vector<double>{1.0, 2.0}, 0.0, 0.0, 4, 128);
  const Basis& b = map.basis();
  for (int a = 0; a < 3; ++a)
    for (int r = 0; r < b.size(); ++r)
      CHECK(map.components[static_cast<std::size_t>(a)][r] == (r == 1 + a ? 1.0 : 0.0));
  CHECK(map.design_final[0] == 1.0);
  CHECK(map.design_final[1] == 2.0);
}

TEST_CASE("bad arguments are rejected") {
  auto sys = duffing::system({});
  std::vector<double> z0{0.0, 0.0};
  CHECK_THROWS_AS(integrate_map(sys, z0, 0.0, 1.0, 4, 0), std::invalid_argument);
  CHECK_THROWS_AS(integrate_map(sys, z0, 1.0, 0.0, 4, 16), std::invalid_argument);
  CHECK_THROWS_AS(integrate_map(sys, z0, 0.0, 1.0, 0, 16), std::invalid_argument);
  std::vector<double> z1{0.0};
  CHECK_THROWS_AS(integrate_map(sys, z1, 0.0, 1.0, 4, 16), std::invalid_argument);
}

TEST_CASE("non-finite design orbit aborts with a diagnostic") {
  SystemDefinition sys;
  sys.state_dim = 1;
  sys.dev_dim = 1;
  sys.design_rhs = [](std::span<const double> z, double, std::span<double> dz) {
    dz[0] = z[0] * z[0];  // blows up at t = 1/z0
  };
  sys.forcing = [](std::span<const double>, double, const Basis&, std::span<Poly> out) {
    for (auto& g : out) g.set_zero();
  };
  CHECK_THROWS_AS(integrate_map(sys, std::vector<double>{1.0}, 0.0, 2.0, 2, 64),
                  std::runtime_error);
}

TEST_CASE("eps=0 Duffing build about the origin matches the matrix exponential") {
  DuffingParams params;
  params.epsilon = 0.0;
  auto sys = duffing::system(params);
  const double T = params.period();
  PolyMap map = integrate_map(sys, std::vector<double>{0.0, 0.0}, 0.0, T, 8, 2048);
  const Basis& b = map.basis();

  auto expm = osc_expm(params.beta, T);
  CHECK(map.components[0][idx3(b, 1, 0, 0)] == doctest::Approx(expm[0]).epsilon(1e-9));
  CHECK(map.components[0][idx3(b, 0, 1, 0)] == doctest::Approx(expm[1]).epsilon(1e-9));
  CHECK(map.components[1][idx3(b, 1, 0, 0)] == doctest::Approx(expm[2]).epsilon(1e-9));
  CHECK(map.components[1][idx3(b, 0, 1, 0)] == doctest::Approx(expm[3]).epsilon(1e-9));

  // no quadratic forcing at q_d = 0: the (q,p)-quadratics vanish
  for (int a = 0; a < 2; ++a)
    for (auto [e1, e2] : {std::pair{2, 0}, std::pair{1, 1}, std::pair{0, 2}})
      CHECK(std::abs(map.components[static_cast<std::size_t>(a)][idx3(b, e1, e2, 0)]) < 1e-10);

  // the cubic feed into component 2 is real
  CHECK(std::abs(map.components[1][idx3(b, 3, 0, 0)]) > 1e-3);

  // design orbit stays at the equilibrium
  CHECK(map.design_final[0] == 0.0);
  CHECK(map.design_final[1] == 0.0);
}

TEST_CASE("constant terms stay exactly zero and the parameter row is the identity") {
  DuffingParams params;  // paper defaults, eps = 25
  auto sys = duffing::system(params);
  PolyMap map = integrate_map(sys, std::vector<double>{1.26082, 2.05452}, 0.0,
                              params.period(), 4, 256);
  const Basis& b = map.basis();
  for (int a = 0; a < 3; ++a) CHECK(map.components[static_cast<std::size_t>(a)][0] == 0.0);
  for (int r = 0; r < b.size(); ++r)
    CHECK(map.components[2][r] == (r == idx3(b, 0, 0, 1) ? 1.0 : 0.0));
}

TEST_CASE("build size at paper settings: 3 x L(3,8) = 495 coefficient equations") {
  CHECK(poly::count_monomials(3, 8) == 165);
  auto sys = duffing::system({});
  PolyMap map = integrate_map(sys, std::vector<double>{1.26082, 2.05452}, 0.0,
                              DuffingParams{}.period(), 8, 64);
  REQUIRE(map.components.size() == 3);
  int total = 0;
  for (const auto& c : map.components) total += c.size();
  CHECK(total == 495);
}

TEST_CASE("degree closure: higher-order builds refine, never change, low degrees") {
  DuffingParams params;
  auto sys = duffing::system(params);
  std::vector<double> z0{1.26082, 2.05452};
  PolyMap m5 = integrate_map(sys, z0, 0.0, params.period(), 5, 256);
  PolyMap m8 = integrate_map(sys, z0, 0.0, params.period(), 8, 256);
  const Basis& b5 = m5.basis();
  const Basis& b8 = m8.basis();
  for (int a = 0; a < 3; ++a)
    for (int r = 0; r < b5.size(); ++r) {
      const int r8 = b8.index_of(b5.exponents_of(r));
      CHECK(m5.components[static_cast<std::size_t>(a)][r] ==
            doctest::Approx(m8.components[static_cast<std::size_t>(a)][r8]).epsilon(1e-9));
    }
}

TEST_CASE("order refinement: fourth-order convergence and nilpotent exactness") {
  DuffingParams params;
  auto sys = duffing::system(params);
  std::vector<double> z0{1.26082, 2.05452};
  const double T = params.period();
  // the eps=25 coefficient dynamics needs a few hundred steps per period
  // before the asymptotic h^4 regime shows
  const double d1 = order_refine_check(sys, z0, 0.0, T, 3, 256);
  const double d2 = order_refine_check(sys, z0, 0.0, T, 3, 512);
  const double slope = std::log2(d1 / d2);
  CHECK(slope > 3.7);
  CHECK(slope < 4.3);

  // shear system: A^2 = 0, RK4 reproduces the flow exactly at any step count
  SystemDefinition shear;
  shear.state_dim = 2;
  shear.dev_dim = 2;
  shear.design_rhs = [](std::span<const double> z, double, std::span<double> dz) {
    dz[0] = z[1];
    dz[1] = 0.0;
  };
  shear.forcing = [](std::span<const double>, double, const Basis& b, std::span<Poly> out) {
    for (auto& g : out) g.set_zero();
    std::vector<int> e2{0, 1};
    out[0][b.index_of(e2)] = 1.0;
  };
  CHECK(order_refine_check(shear, std::vector<double>{0.3, 0.7}, 0.0, 1.0, 3, 16) < 1e-12);
}

TEST_CASE("variational rhs for Duffing at eps=0, origin design orbit") {
  DuffingParams params;
  params.epsilon = 0.0;
  auto sys = duffing::system(params);
  const Basis& b = Basis::get(3, 4);
  auto s = VariationalState::initial(sys, b, std::vector<double>{0.0, 0.0}, 0.0);
  std::vector<double> dz(2);
  std::vector<Poly> dh(3, Poly(b));
  variational_rhs(sys, s, dz, dh);
  CHECK(dz[0] == 0.0);
  CHECK(dz[1] == 0.0);
  // restricted to e3 = 0 monomials: dH1 = z2, dH2 = -z1 - 2b z2 - z1^3
  for (int r = 0; r < b.size(); ++r) {
    if (b.exponents_of(r)[2] != 0) continue;
    CHECK(dh[0][r] == (r == idx3(b, 0, 1, 0) ? 1.0 : 0.0));
    double want = 0.0;
    if (r == idx3(b, 1, 0, 0)) want = -1.0;
    if (r == idx3(b, 0, 1, 0)) want = -2.0 * params.beta;
    if (r == idx3(b, 3, 0, 0)) want = -1.0;
    CHECK(dh[1][r] == doctest::Approx(want));
  }
  for (int r = 0; r < b.size(); ++r) CHECK(dh[2][r] == 0.0);
}
