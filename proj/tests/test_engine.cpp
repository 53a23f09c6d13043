#include <doctest.h>

#include "crofton/engine.hpp"

using namespace crofton;
using doctest::Approx;

namespace {
mc::McOptions two_workers() {
  mc::McOptions o;
  o.workers = 2;
  return o;
}
}  // namespace

TEST_CASE("normalization prefactors") {
  CHECK(std::abs(mc::normalization_prefactor(1, 1.0) - cplx(kPi, 0.0)) < 1e-14);
  CHECK(std::abs(mc::normalization_prefactor(1, -1.0) - cplx(0.0, kPi)) < 1e-14);
  CHECK(std::abs(mc::normalization_prefactor(2, -1.0) + cplx(2.0 * kPi, 0.0)) < 1e-14);
  CHECK(std::abs(mc::flat_phase({2, 0}, 1) - cplx(1.0, 0.0)) < 1e-14);
  CHECK(std::abs(mc::flat_phase({1, 1}, 1) - cplx(-1.0, 0.0)) < 1e-14);
  // kappa_cal(2,1) = mu_1(B^2) / (pi omega_0 omega_1) = 1/2
  CHECK(mc::flat_calibration(2, 1) == Approx(0.5).epsilon(1e-9));
}

TEST_CASE("weight mean is 1 on a small grid") {
  for (auto [p, q, k] : {std::tuple{2, 0, 1}, {1, 1, 1}, {2, 1, 2}}) {
    auto space = lin::standard_form({p, q});
    for (cplx zeta : {cplx(1.0, 0.0), cplx(1.0, 1.0), cplx(0.0, 0.2)}) {
      auto est = mc::weight_mean(space, k, zeta, 200000, 5, two_workers());
      double tol = std::max(5.0 * est.stderr_, 1e-9);
      CHECK(std::abs(est.value - cplx(1.0, 0.0)) <= tol);
    }
  }
}

TEST_CASE("determinism: same seed, any worker count") {
  auto space = lin::standard_form({2, 1});
  auto run = [&](int workers, long n) {
    mc::McOptions o;
    o.workers = workers;
    return mc::weight_mean(space, 1, {0.0, 0.1}, n, 99, o);
  };
  auto a = run(1, 150000);
  auto b = run(2, 150000);
  auto c = run(3, 150000);
  CHECK(a.value.real() == b.value.real());
  CHECK(a.value.imag() == b.value.imag());
  CHECK(b.value.real() == c.value.real());
  CHECK(b.value.imag() == c.value.imag());
  auto again = run(2, 150000);
  CHECK(again.value.real() == b.value.real());
  CHECK(again.stderr_ == b.stderr_);
}

TEST_CASE("round sphere cap and full-circle sanity") {
  body::Cap cap;
  cap.axis = lin::VecD::Zero(3);
  cap.axis(2) = 1.0;
  cap.radius = kPi / 3.0;
  auto est = mc::estimate_sphere(body::pseudosphere(2, 0), cap, 1, {1.0, 0.0}, 200000,
                                 7, two_workers());
  double target = kPi * std::sin(kPi / 3.0);
  CHECK(std::abs(est.value - cplx(target, 0.0)) < 4.0 * est.stderr_);
  CHECK(est.flagged < est.samples / 1000);

  // k = 2 on the band: pi omega_1 E[chi] = 4 pi sin(theta)
  body::Band band{kPi / 6.0, 2};
  auto est2 = mc::estimate_sphere(body::pseudosphere(2, 0), band, 2, {1.0, 0.0},
                                  200000, 8, two_workers());
  CHECK(std::abs(est2.value - cplx(2.0 * kPi, 0.0)) < 4.0 * est2.stderr_);
}

TEST_CASE("stratified estimator agrees with plain Monte Carlo") {
  body::Band band{0.5, 2};
  auto plain = mc::estimate_sphere(body::pseudosphere(1, 1), band, 1, {0.0, 0.1},
                                   400000, 11, two_workers());
  mc::McOptions strat = two_workers();
  strat.stratified = true;
  auto boosted = mc::estimate_sphere(body::pseudosphere(1, 1), band, 1, {0.0, 0.1},
                                     400000, 12, strat);
  double se = std::hypot(plain.stderr_, boosted.stderr_);
  CHECK(std::abs(plain.value - boosted.value) < 4.0 * se);
}

TEST_CASE("de Sitter band sweep extrapolates to the continued templates") {
  body::Band band{0.5, 2};
  double rho = std::atanh(std::tan(0.5));
  mc::McOptions strat = two_workers();
  strat.stratified = true;
  auto sweep = mc::epsilon_sweep_sphere(body::pseudosphere(1, 1), band, 1,
                                        {0.2, 0.1, 0.05, 0.025}, 1500000, 13, strat);
  double target = 2.0 * kPi * std::cosh(rho);
  CHECK(std::abs(sweep.extrapolated - cplx(target, 0.0)) < 0.05 * target);
  CHECK(sweep.estimates.size() == 4);
  // common random numbers: per-eps estimates reproducible bitwise
  auto sweep2 = mc::epsilon_sweep_sphere(body::pseudosphere(1, 1), band, 1,
                                         {0.2, 0.1, 0.05, 0.025}, 1500000, 13, strat);
  for (int i = 0; i < 4; ++i) {
    CHECK(sweep.estimates[i].value.real() == sweep2.estimates[i].value.real());
    CHECK(sweep.estimates[i].value.imag() == sweep2.estimates[i].value.imag());
  }
  // extrapolated value consistent with a Richardson step at the fitted order
  int l = 3;
  double rho2 = sweep.epsilons[l - 1] / sweep.epsilons[l];
  cplx d2 = sweep.estimates[l].value - sweep.estimates[l - 1].value;
  cplx rich = sweep.estimates[l].value + d2 / (std::pow(rho2, sweep.order_used) - 1.0);
  CHECK(std::abs(sweep.extrapolated - rich) <
        10.0 * (sweep.extrapolation_error + sweep.estimates[l].stderr_) + 0.05);
}

TEST_CASE("equator template: every eps recovers 2 pi") {
  // chi = 2 a.e. for the equator circle in S^{1,1}; the estimate is then
  // pi omega_0 * 2 * mean(weight) = 2 pi at every eps by normalization.
  body::Equator eq{2};
  for (double eps : {0.2, 0.05}) {
    auto est = mc::estimate_sphere(body::pseudosphere(1, 1), eq, 1, {0.0, eps},
                                   400000, 17, two_workers());
    CHECK(std::abs(est.value - cplx(2.0 * kPi, 0.0)) <
          5.0 * est.stderr_ + 1e-3 * 2.0 * kPi);
  }
}

TEST_CASE("flat Euclidean: circle length and ball half-perimeter") {
  // At q = 0 the regularized weight is the constant (1 + 2 i eps)^{m lambda},
  // so the estimate carries a known O(eps) phase; run at small eps.
  auto space = lin::standard_form({2, 0});
  body::FlatBody circle = body::make_circle();
  auto est =
      mc::estimate_flat(space, circle, 1, 0.001, 400000, 0.0, 20, two_workers());
  CHECK(std::abs(est.value - cplx(2.0 * kPi, 0.0)) < 0.02 * 2.0 * kPi);

  body::FlatBall ball;
  ball.center = lin::VecD::Zero(2);
  ball.radius = 1.0;
  body::FlatBody ball_body = ball;
  auto est_ball =
      mc::estimate_flat(space, ball_body, 1, 0.001, 400000, 2.0, 21, two_workers());
  CHECK(std::abs(est_ball.value - cplx(kPi, 0.0)) < 0.02 * kPi);

  // R^{3,0}, ball, k=1: mu_1(B^3) = 4
  auto space3 = lin::standard_form({3, 0});
  body::FlatBall ball3;
  ball3.center = lin::VecD::Zero(3);
  ball3.radius = 1.0;
  body::FlatBody b3 = ball3;
  auto est3 = mc::estimate_flat(space3, b3, 1, 0.001, 400000, 1.5, 22, two_workers());
  CHECK(std::abs(est3.value - cplx(4.0, 0.0)) < 0.03 * 4.0);
  // k = 2: mu_2(B^3) = 2 pi
  auto est32 = mc::estimate_flat(space3, b3, 2, 0.001, 400000, 1.5, 23, two_workers());
  CHECK(std::abs(est32.value - cplx(2.0 * kPi, 0.0)) < 0.03 * 2.0 * kPi);
}

TEST_CASE("flat Lorentzian circle sweep approaches the quadrature value") {
  auto space = lin::standard_form({1, 1});
  body::FlatBody circle = body::make_circle();
  auto sweep = mc::epsilon_sweep_flat(space, circle, 1, {0.1, 0.05, 0.025}, 400000,
                                      0.0, 30, two_workers());
  cplx target(2.396280469, 2.396280469);
  CHECK(std::abs(sweep.extrapolated - target) < 0.08 * std::abs(target));
}

TEST_CASE("rhs_prediction composes coefficients with mu vectors") {
  auto mu = iv::mu_cap_riemannian(3, kPi / 3.0);
  cplx rhs = mc::rhs_prediction(mu, 1, 3, 1.0);
  double expect = mu.values(1).real() - mu.values(3).real() / (2.0 * kPi);
  CHECK(rhs.real() == Approx(expect));

  auto band3 = iv::mu_band_riemannian(3, 0.4);  // mu_1 absent
  CHECK_THROWS_WITH_AS(mc::rhs_prediction(band3, 1, 3, 1.0),
                       doctest::Contains("missing mu entries: 1"),
                       std::runtime_error);
  CHECK_NOTHROW(mc::rhs_prediction(band3, 2, 3, 1.0));
}

TEST_CASE("swap map relates sphere and hyperbolic estimates") {
  body::Band band{0.5, 2};
  auto s_est = mc::estimate_sphere(body::pseudosphere(1, 1), band, 1, {0.0, 0.1},
                                   400000, 31, two_workers());
  auto swapped = body::swap_body(band, {2, 1});
  auto h_est = mc::estimate_sphere(body::pseudohyperbolic(1, 1), swapped, 1,
                                   {0.0, 0.1}, 400000, 32, two_workers());
  cplx expect = cplx(0, 1) * std::conj(s_est.value);
  CHECK(std::abs(h_est.value - expect) < 4.0 * std::hypot(s_est.stderr_, h_est.stderr_));
}
