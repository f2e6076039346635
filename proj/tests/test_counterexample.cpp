#include <doctest.h>

#include <cmath>
#include <random>

#include "lopat/characteristics.hpp"
#include "lopat/counterexample.hpp"
#include "lopat/errors.hpp"
#include "lopat/linalg.hpp"
#include "test_helpers.hpp"

using namespace lopat;
using namespace lopat::test;

TEST_CASE("supersonic check against the sonic Euler state") {
  // speeds {-2, -1, 0}
  CHECK(supersonic_check(*euler(), sonic_state(), 3.0));
  CHECK_FALSE(supersonic_check(*euler(), sonic_state(), 2.0));
  CHECK_FALSE(supersonic_check(*euler(), sonic_state(), 1.5));
}

TEST_CASE("coupled Jacobians at v = 0 are block diagonal") {
  const ShockWave base = euler_shock(0.1);
  for (double a : {0.0, 5.0}) {
    const CoupledSystem c = couple(base.system, 3.0, a);
    CHECK(c.system->dim() == 5);
    for (const auto& u : {base.u_minus, base.u_plus, sonic_state()}) {
      StateVector w = StateVector::Zero(5);
      w.head(3) = u;
      Mat j1 = Mat::Zero(5, 5), j2 = Mat::Zero(5, 5);
      j1.topLeftCorner(3, 3) = euler()->jac1(u);
      j2.topLeftCorner(3, 3) = euler()->jac2(u);
      j1.bottomRightCorner(2, 2) = c.wave.jac1();
      j2.bottomRightCorner(2, 2) = c.wave.jac2();
      CHECK((c.system->jac1(w) - j1).cwiseAbs().maxCoeff() <= 1e-14);
      CHECK((c.system->jac2(w) - j2).cwiseAbs().maxCoeff() <= 1e-14);
    }
  }
}

TEST_CASE("coupling changes the flux off v = 0 and keeps analytic Jacobians exact") {
  const ShockWave base = euler_shock(0.1);
  const CoupledSystem c0 = couple(base.system, 3.0, 0.0);
  const CoupledSystem c5 = couple(base.system, 3.0, 5.0);
  StateVector w(5);
  w << 1.02, -0.97, 0.1, 0.3, -0.2;
  CHECK((c5.system->flux1(w) - c0.system->flux1(w)).norm() > 0.1);
  CHECK((c5.system->flux2(w) - c0.system->flux2(w)).norm() > 0.1);
  CHECK((c5.system->flux1(w).tail(2) - c0.system->flux1(w).tail(2)).norm() == 0.0);
  CHECK((c5.system->jac1(w) - c5.system->fd_jac1(w)).cwiseAbs().maxCoeff() <= 1e-7);
  CHECK((c5.system->jac2(w) - c5.system->fd_jac2(w)).cwiseAbs().maxCoeff() <= 1e-7);
}

TEST_CASE("augment_shock pads with zeros and shifts the family") {
  const ShockWave base = euler_shock(0.1);
  const ShockWave aug = augment_shock(base, couple(base.system, 3.0));
  CHECK(aug.u_minus.size() == 5);
  CHECK(aug.u_plus.size() == 5);
  CHECK(aug.u_minus.head(3) == base.u_minus);
  CHECK(aug.u_plus.tail(2).norm() == 0.0);
  CHECK(aug.family == 4);
  CHECK(residual_norm(aug) <= 1e-12);
  const auto lc = lax_classify(aug);
  CHECK(lc.family == 4);
  CHECK(lc.dim == 5);

  CHECK_THROWS_AS(augment_shock(base, couple(base.system, 1.5)), TuningError);
  // Supersonic at the sonic state but not at U- where rho > 1.
  CHECK_THROWS_AS(augment_shock(base, couple(base.system, 2.0 + 1e-6)), TuningError);
}

TEST_CASE("predicted branch points") {
  const auto bp = predict_branch_points(3.0);
  for (int i = 0; i < 4; ++i) {
    CHECK(bp[i].id == i);
    CHECK(std::abs(bp[i].point.sigma) == doctest::Approx(0.9486832980505138).epsilon(1e-15));
    CHECK(std::abs(bp[i].point.xi) == doctest::Approx(0.31622776601683794).epsilon(1e-15));
    CHECK(bp[i].point.gamma == 0.0);
    CHECK(bp[i].point.on_hemisphere());
  }
  CHECK(bp[0].theta == doctest::Approx(std::atan2(1.0, 3.0)));
  CHECK(bp[1].theta == doctest::Approx(kPi - std::atan2(1.0, 3.0)));
  CHECK(bp[2].theta == doctest::Approx(kPi + std::atan2(1.0, 3.0)));
  CHECK(bp[3].theta == doctest::Approx(2.0 * kPi - std::atan2(1.0, 3.0)));

  const auto bp1 = predict_branch_points(1.0);
  CHECK(bp1[0].point.sigma == doctest::Approx(std::sqrt(0.5)));
  CHECK(bp1[0].point.xi == doctest::Approx(std::sqrt(0.5)));
  CHECK_THROWS_AS(predict_branch_points(0.0), std::invalid_argument);
}

TEST_CASE("b eigen oracle agrees with a dense eigensolver") {
  std::mt19937_64 rng(11);
  for (double s : {1.0, 3.0, 10.0}) {
    const auto wave = make_linear_wave(s);
    for (int k = 0; k < 50; ++k) {
      const FrequencyPoint p = random_hemisphere_point(rng, 0.01);
      const CMat a = symbol_matrix_A(*wave, Vec2(0, 0), p.tau(), p.xi);
      const BEigen e = b_eigen_oracle(p.tau(), p.xi, s);
      CHECK_FALSE(e.defective);
      CHECK(std::abs(e.mu_minus + e.mu_plus) == 0.0);
      CHECK(e.mu_plus.real() > 0.0);
      CHECK((a * e.vec_plus - e.mu_plus * e.vec_plus).norm() <= 1e-12);
      CHECK((a * e.vec_minus - e.mu_minus * e.vec_minus).norm() <= 1e-12);
      CHECK(e.vec_plus.norm() == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("b is defective at the branch points") {
  for (double s : {1.0, 3.0, 10.0}) {
    for (const auto& bp : predict_branch_points(s)) {
      const BEigen e = b_eigen_oracle(bp.point.tau(), bp.point.xi, s);
      CHECK(e.defective);
      CHECK(std::abs(e.mu_plus) <= 1e-6);
      const CMat a = symbol_matrix_A(*make_linear_wave(s), Vec2(0, 0), bp.point.tau(), bp.point.xi);
      // Nilpotent Jordan block: rank one.
      const Vec sv = linalg::singular_values(a);
      CHECK(sv(1) <= 1e-10 * sv(0));
      CHECK((a * e.vec_plus).norm() <= 1e-12);
    }
  }
}

TEST_CASE("coincidence gap") {
  const double s = 3.0;
  for (const auto& bp : predict_branch_points(s))
    CHECK(coincidence_gap(bp.point.sigma, bp.point.xi, s) <= 1e-6);

  // Away from branch points the gap matches the numerically computed limits.
  for (double theta : {0.1, 0.9, 2.0, 3.0, 4.4, 5.1}) {
    const double sigma = std::cos(theta), xi = std::sin(theta);
    const auto wave = make_linear_wave(s);
    const auto st = boundary_subspaces(*wave, Vec2(0, 0), sigma, xi, Side::Minus, Kind::Stable);
    const auto un = boundary_subspaces(*wave, Vec2(0, 0), sigma, xi, Side::Minus, Kind::Unstable);
    CMat m(2, 2);
    m << st.columns, un.columns;
    const double gap = coincidence_gap(sigma, xi, s);
    CHECK(gap > 1e-3);
    CHECK(std::abs(m.determinant()) == doctest::Approx(gap).epsilon(1e-10));
  }

  // Square-root vanishing near a branch point.
  const double t0 = std::atan2(1.0, s);
  const double g1 = coincidence_gap(std::cos(t0 + 1e-4), std::sin(t0 + 1e-4), s);
  const double g2 = coincidence_gap(std::cos(t0 + 4e-4), std::sin(t0 + 4e-4), s);
  CHECK(g2 / g1 == doctest::Approx(2.0).epsilon(1e-2));
}

TEST_CASE("custom coupling") {
  const ShockWave base = euler_shock(0.1);
  Coupling quad;
  quad.flux1 = [](const Vec& u, const Vec& v) {
    Vec h = Vec::Zero(5);
    h(0) = u(0) * v(0) * v(1);
    h(2) = v(1) * v(1);
    return h;
  };
  quad.flux2 = [](const Vec&, const Vec& v) {
    Vec h = Vec::Zero(5);
    h(1) = std::pow(v(0), 3);
    return h;
  };
  const std::vector<StateVector> probes = {base.u_minus, base.u_plus};
  const CoupledSystem c = couple(base.system, 3.0, quad, probes);
  const ShockWave aug = augment_shock(base, c);
  CHECK(residual_norm(aug) <= 1e-12);
  const auto v = lopatinski_delta(aug, {0.0, 3.0 / std::sqrt(10.0), 1.0 / std::sqrt(10.0)});
  CHECK(v.delta_norm < 1e-6);

  Coupling lin;
  lin.flux1 = [](const Vec&, const Vec& v) {
    Vec h = Vec::Zero(5);
    h(0) = 0.5 * v(0);
    return h;
  };
  lin.flux2 = [](const Vec&, const Vec&) { return Vec(Vec::Zero(5)); };
  CHECK_THROWS_AS(couple(base.system, 3.0, lin, probes), std::invalid_argument);
}
