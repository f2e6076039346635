#include <doctest.h>

#include <cmath>
#include <random>

#include "lopat/characteristics.hpp"
#include "lopat/errors.hpp"
#include "test_helpers.hpp"

using namespace lopat;
using lopat::test::euler;
using lopat::test::sonic_state;
using lopat::test::vec3;

namespace {

SystemPtr identity_system(int n) {
  FluxFn f = [](const StateVector& u) -> Vec { return u; };
  return std::make_shared<HyperbolicSystem>("identity", n, f, f);
}

// Closed-form lambda_3 = u_1 + c for isentropic Euler with p = rho^2 / 2,
// N = (1, 0).
double euler_lambda3(const StateVector& u) { return u(1) / u(0) + std::sqrt(u(0)); }

}  // namespace

TEST_CASE("eval_symbol of the linear wave system in the normal direction") {
  const auto wave = make_linear_wave(3.0);
  const Mat m = eval_symbol(*wave, Vec2(0.4, -1.2), Vec2(1.0, 0.0));
  Mat expected(2, 2);
  expected << 3.0, 0.0, 0.0, -3.0;
  CHECK((m - expected).norm() == 0.0);
}

TEST_CASE("eval_symbol rejects the zero direction") {
  const auto wave = make_linear_wave(3.0);
  CHECK_THROWS_AS(eval_symbol(*wave, Vec2(0.0, 0.0), Vec2(0.0, 0.0)), std::invalid_argument);
}

TEST_CASE("eval_symbol of the Euler fixture at the sonic state") {
  const Mat m = eval_symbol(*euler(), sonic_state(), Vec2(1.0, 0.0));
  Mat expected(3, 3);
  expected << 0, 1, 0,
              0, -2, 0,
              0, 0, -1;
  CHECK((m - expected).norm() < 1e-15);
}

TEST_CASE("inadmissible states raise a domain error") {
  CHECK_THROWS_AS(eval_symbol(*euler(), vec3(-1.0, 0.0, 0.0), Vec2(1.0, 0.0)), DomainError);
  CHECK_THROWS_AS(euler()->flux1(StateVector::Zero(2)), DomainError);
}

TEST_CASE("symbol is linear in the direction") {
  const auto sys = euler();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const StateVector u = vec3(0.5 + std::abs(d(rng)), d(rng), d(rng));
    const Vec2 nu(d(rng), d(rng));
    const Vec2 mu(d(rng), d(rng));
    const double a = d(rng), b = d(rng);
    const Mat lhs = eval_symbol(*sys, u, a * nu + b * mu);
    const Mat rhs = a * eval_symbol(*sys, u, nu) + b * eval_symbol(*sys, u, mu);
    CHECK((lhs - rhs).norm() <= 1e-12 * std::max(1.0, rhs.norm()));
  }
}

TEST_CASE("char_fields of the Euler fixture") {
  const auto fields = char_fields(*euler(), sonic_state(), Vec2(1.0, 0.0));
  REQUIRE(fields.size() == 3);
  CHECK(fields[0].speed == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(fields[1].speed == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(fields[2].speed) < 1e-14);
  CHECK((fields[2].right - vec3(1.0, 0.0, 0.0)).norm() < 1e-14);

  const Mat m = eval_symbol(*euler(), sonic_state(), Vec2(1.0, 0.0));
  for (const auto& f : fields) {
    CHECK((m * f.right - f.speed * f.right).norm() <= 1e-10);
    CHECK((f.left.transpose() * m - f.speed * f.left.transpose()).norm() <= 1e-10);
    CHECK(f.left.dot(f.right) == doctest::Approx(1.0).epsilon(1e-12));
    Eigen::Index imax = 0;
    f.right.cwiseAbs().maxCoeff(&imax);
    CHECK(f.right(imax) > 0.0);
    CHECK(f.right.norm() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("char_fields of the linear wave system in the tangential direction") {
  const auto fields = char_fields(*make_linear_wave(3.0), Vec2(0.0, 0.0), Vec2(0.0, 1.0));
  REQUIRE(fields.size() == 2);
  CHECK(fields[0].speed == doctest::Approx(-3.0).epsilon(1e-14));
  CHECK(fields[1].speed == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("complex speeds are a hyperbolicity violation") {
  Mat rot(2, 2);
  rot << 0.0, 1.0, -1.0, 0.0;
  FluxFn f1 = [rot](const StateVector& u) -> Vec { return rot * u; };
  FluxFn f2 = [](const StateVector& u) -> Vec { return u; };
  HyperbolicSystem sys("rotation", 2, f1, f2);
  CHECK_THROWS_AS(char_fields(sys, Vec2(0.1, 0.2), Vec2(1.0, 0.0)), HyperbolicityError);
}

TEST_CASE("tied speeds follow the previous eigenvectors") {
  const auto sys = identity_system(3);
  const StateVector u = vec3(1.0, 2.0, 3.0);
  auto prev = char_fields(*sys, u, Vec2(1.0, 0.0));
  std::swap(prev[0].right, prev[2].right);
  const auto next = char_fields(*sys, u, Vec2(1.0, 0.0), &prev);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(next[k].right.dot(prev[k].right)) > 0.999);
}

TEST_CASE("speeds are positively homogeneous in the direction") {
  const auto sys = euler();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const StateVector u = vec3(0.5 + std::abs(d(rng)), d(rng), d(rng));
    const Vec2 nu(d(rng), d(rng));
    const double c = 0.1 + std::abs(d(rng));
    const Vec s1 = char_speeds(*sys, u, c * nu);
    const Vec s0 = char_speeds(*sys, u, nu);
    CHECK((s1 - c * s0).norm() <= 1e-10);
  }
}

TEST_CASE("analytic Jacobians agree with finite differences") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (const auto& sys : {euler(), make_euler_isentropic(1.4, 1.0), make_linear_wave(3.0)}) {
    for (int trial = 0; trial < 100; ++trial) {
      StateVector u(sys->dim());
      for (int i = 0; i < sys->dim(); ++i) u(i) = d(rng);
      if (sys->name() == "euler-isentropic") u(0) = 0.2 + std::abs(u(0));
      const Mat a1 = sys->jac1(u), f1 = sys->fd_jac1(u);
      const Mat a2 = sys->jac2(u), f2 = sys->fd_jac2(u);
      CHECK((a1 - f1).norm() <= 1e-6 * std::max(1.0, a1.norm()));
      CHECK((a2 - f2).norm() <= 1e-6 * std::max(1.0, a2.norm()));
    }
  }
}

TEST_CASE("system registry") {
  CHECK(make_system("euler-isentropic")->dim() == 3);
  const auto wave = make_system("linear-wave", {{"s", 2.5}});
  CHECK(wave->jac1(Vec2(0.0, 0.0))(0, 0) == 2.5);
  CHECK_THROWS_AS(make_system("mhd"), std::invalid_argument);
  CHECK_THROWS_AS(make_linear_wave(0.0), std::invalid_argument);
}

TEST_CASE("constant multiplicity") {
  SUBCASE("Euler fixture") {
    const auto prof = check_constant_multiplicity(*euler(), sonic_state(), 64);
    CHECK(prof.constant);
    CHECK(prof.pattern == std::vector<int>{1, 1, 1});
  }
  SUBCASE("linear wave") {
    const auto prof = check_constant_multiplicity(*make_linear_wave(3.0), Vec2(0.0, 0.0), 64);
    CHECK(prof.constant);
    CHECK(prof.pattern == std::vector<int>{1, 1});
  }
  SUBCASE("identity fluxes") {
    // nu_1 I + nu_2 I on the unit circle: one eigenvalue of multiplicity n.
    const auto prof = check_constant_multiplicity(*identity_system(4), Vec::Ones(4), 64);
    CHECK(prof.constant);
    CHECK(prof.pattern == std::vector<int>{4});
  }
  SUBCASE("varying multiplicity") {
    // F_1 = (u1, -u2), F_2 = (u1, u2): speeds nu1 + nu2 and nu2 - nu1 collide at nu1 = 0.
    FluxFn f1 = [](const StateVector& u) -> Vec { return Vec2(u(0), -u(1)); };
    FluxFn f2 = [](const StateVector& u) -> Vec { return u; };
    HyperbolicSystem sys("crossing", 2, f1, f2);
    CHECK_FALSE(check_constant_multiplicity(sys, Vec2(0.0, 0.0), 64).constant);
  }
  CHECK_THROWS_AS(check_constant_multiplicity(*euler(), sonic_state(), 4), std::invalid_argument);
}

TEST_CASE("genuine nonlinearity at the sonic state") {
  const double gn = metivier_genuine_nonlinearity(*euler(), sonic_state(), Vec2(1.0, 0.0), 3);
  CHECK(gn == doctest::Approx(1.5).epsilon(1e-8));
}

TEST_CASE("genuine nonlinearity matches an independent finite-difference oracle") {
  // Oracle: derivative of the closed-form lambda_3 along the closed-form
  // eigenvector r_3 = (1, u_1 + c, u_2) / |.|, by a Richardson-extrapolated
  // central difference in the scalar parameter.
  const StateVector u = vec3(1.21, -1.331, 0.0);
  Vec r = vec3(1.0, u(1) / u(0) + std::sqrt(u(0)), u(2) / u(0));
  r.normalize();
  auto diff = [&](double h) {
    return (euler_lambda3(u + h * r) - euler_lambda3(u - h * r)) / (2.0 * h);
  };
  const double oracle = (4.0 * diff(5e-4) - diff(1e-3)) / 3.0;
  CHECK(oracle == doctest::Approx(1.3636363636363635).epsilon(1e-9));

  const double gn = metivier_genuine_nonlinearity(*euler(), u, Vec2(1.0, 0.0), 3);
  CHECK(gn > 0.0);
  CHECK(std::abs(gn - oracle) <= 1e-6);
}

TEST_CASE("linear systems are linearly degenerate") {
  const auto wave = make_linear_wave(3.0);
  CHECK(metivier_genuine_nonlinearity(*wave, Vec2(0.3, -0.7), Vec2(1.0, 0.0), 1) == 0.0);
}

TEST_CASE("transverse convexity") {
  const auto sys = euler();
  // Lambda(xi) = u1 + xi u2 +- c sqrt(1 + xi^2) with c = 1.
  CHECK(std::abs(metivier_transverse_convexity(*sys, sonic_state(), Vec2(1.0, 0.0), 3) - 1.0) <= 1e-6);
  CHECK(std::abs(metivier_transverse_convexity(*sys, sonic_state(), Vec2(1.0, 0.0), 1) + 1.0) <= 1e-6);
  // Lambda(xi) = s sqrt(1 + xi^2).
  const double wave = metivier_transverse_convexity(*make_linear_wave(3.0), Vec2(0.0, 0.0),
                                                    Vec2(1.0, 0.0), 2);
  CHECK(std::abs(wave - 3.0) <= 1e-6);
}

TEST_CASE("the Euler acoustic mode satisfies both convexity conditions at the sonic state") {
  const auto sys = euler();
  CHECK(metivier_genuine_nonlinearity(*sys, sonic_state(), Vec2(1.0, 0.0), 3) > 0.0);
  CHECK(metivier_transverse_convexity(*sys, sonic_state(), Vec2(1.0, 0.0), 3) > 0.0);
}

TEST_CASE("convexity checks need a simple mode") {
  const auto sys = identity_system(3);
  CHECK_THROWS_AS(metivier_genuine_nonlinearity(*sys, Vec::Ones(3), Vec2(1.0, 0.0), 2),
                  MultiplicityError);
  CHECK_THROWS_AS(metivier_transverse_convexity(*sys, Vec::Ones(3), Vec2(1.0, 0.0), 2),
                  MultiplicityError);
  CHECK_THROWS_AS(metivier_transverse_convexity(*euler(), sonic_state(), Vec2(1.0, 0.0), 4),
                  std::invalid_argument);
}
