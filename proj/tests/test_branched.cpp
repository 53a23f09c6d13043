#include <doctest.h>

#include <Eigen/Dense>

#include "crofton/branched.hpp"
#include "crofton/oracles.hpp"
#include "crofton/rng.hpp"

using namespace crofton;
using doctest::Approx;

namespace {
Eigen::MatrixXcd shift_i_eps(const Eigen::MatrixXd& x, double eps) {
  return x.cast<cplx>() +
         cplx(0, eps) * Eigen::MatrixXcd::Identity(x.rows(), x.cols());
}
}  // namespace

TEST_CASE("siegel_det_pow normalization and forced branches") {
  Eigen::MatrixXd id2 = Eigen::MatrixXd::Identity(2, 2);

  cplx near_one = br::siegel_det_pow(shift_i_eps(id2, 1e-3), 2.0);
  CHECK(near_one.real() == Approx(1.0).epsilon(1e-5));
  CHECK(near_one.imag() == Approx(0.004).epsilon(1e-3));

  Eigen::MatrixXcd i_id = cplx(0, 1) * Eigen::MatrixXcd::Identity(2, 2);
  cplx val = br::siegel_det_pow(i_id, cplx(0.5, 0.0));
  CHECK(val.real() == Approx(0.0).epsilon(1e-12));
  CHECK(val.imag() == Approx(1.0).epsilon(1e-12));

  // boundary value at diag(1, -1), lambda = -3/2: limit is e^{-3 pi i/2} = i
  Eigen::MatrixXd x = Eigen::Vector2d(1.0, -1.0).asDiagonal();
  cplx lim = br::siegel_det_pow(shift_i_eps(x, 1e-9), cplx(-1.5, 0.0));
  CHECK(lim.real() == Approx(0.0).epsilon(1e-6));
  CHECK(lim.imag() == Approx(1.0).epsilon(1e-6));
  cplx direct = br::f_lambda(x, cplx(-1.5, 0.0));
  CHECK(std::abs(lim - direct) < 1e-6);

  CHECK_THROWS_AS(br::siegel_det_pow(Eigen::MatrixXcd::Zero(2, 2), 1.0),
                  std::domain_error);
  Eigen::MatrixXcd bad = shift_i_eps(id2, -0.5);
  CHECK_THROWS_AS(br::siegel_det_pow(bad, 1.0), std::domain_error);
}

TEST_CASE("f_lambda at nondegenerate points") {
  Eigen::MatrixXd id2 = Eigen::MatrixXd::Identity(2, 2);
  for (cplx lambda : {cplx(0.7, 0.0), cplx(-1.5, 0.3), cplx(2.0, -1.0)})
    CHECK(std::abs(br::f_lambda(id2, lambda) - cplx(1.0, 0.0)) < 1e-14);

  Eigen::MatrixXd neg(1, 1);
  neg(0, 0) = -1.0;
  CHECK(std::abs(br::f_lambda(neg, 1.0) - cplx(-1.0, 0.0)) < 1e-14);

  Eigen::MatrixXd mixed = Eigen::Vector2d(2.0, -3.0).asDiagonal();
  cplx expect = std::exp(cplx(0, -0.5 * kPi)) / std::sqrt(6.0);
  CHECK(std::abs(br::f_lambda(mixed, cplx(-0.5, 0.0)) - expect) < 1e-14);

  Eigen::MatrixXd deg = Eigen::Vector2d(1.0, 0.0).asDiagonal();
  CHECK_THROWS_AS(br::f_lambda(deg, 1.0), std::domain_error);
}

TEST_CASE("muro d-vector recursion") {
  br::CoeffVector a(2);
  a << 1.0, 1.0;

  // s = -2 (even integer): d^(1) = (a0 - a1) = 0, analytic point
  auto d_even = br::muro_d_vectors(a, -2.0, 1);
  CHECK(d_even[1].size() == 1);
  CHECK(std::abs(d_even[1](0)) < 1e-15);
  CHECK(br::muro_pole_order(a, -2.0) == 0);

  // s = -1: d^(1) = (2) != 0, simple pole
  auto d_odd = br::muro_d_vectors(a, -1.0, 1);
  CHECK(std::abs(d_odd[1](0) - cplx(2.0, 0.0)) < 1e-15);
  CHECK(br::muro_pole_order(a, -1.0) == 1);

  br::CoeffVector b(3);
  b << 1.0, 0.0, 0.0;
  auto d_b = br::muro_d_vectors(b, -1.5, 1);
  CHECK(d_b[1].size() == 2);
  CHECK(std::abs(d_b[1](0) - cplx(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(d_b[1](1)) < 1e-15);

  CHECK_THROWS_AS(br::muro_d_vectors(a, -0.25, 1), std::invalid_argument);
  CHECK_THROWS_AS(br::muro_d_vectors(a, 1.0, 1), std::invalid_argument);
}

TEST_CASE("muro pole orders match the 1-D quadrature oracle") {
  // |x|^lambda paired with a Gaussian: the pairing has residue 2 phi(0) at
  // lambda = -1 and is analytic at lambda = -2.
  br::CoeffVector a(2);
  a << 1.0, 1.0;

  cplx res_m1 = oracle::pairing_residue(-1.0);
  CHECK(std::abs(res_m1 - cplx(2.0, 0.0)) < 1e-6);
  CHECK(br::muro_pole_order(a, -1.0) == 1);

  cplx res_m2 = oracle::pairing_residue(-2.0);
  CHECK(std::abs(res_m2) < 1e-6);
  CHECK(br::muro_pole_order(a, -2.0) == 0);
}

TEST_CASE("analyticity identities vanish") {
  CHECK(br::analyticity_check(-1.5, 0, 2) <= 1e-10);
  CHECK(br::analyticity_check(-1.0, 1, 2) <= 1e-10);
  CHECK(br::analyticity_check(-2.0, 0, 1) <= 1e-10);
  for (int r = 1; r <= 4; ++r)
    for (int j = 0; j <= 2; ++j) {
      CHECK(br::analyticity_check(-1.0, j, r) <= 1e-10);
      CHECK(br::analyticity_check(-2.5, j, r) <= 1e-10);
    }
}

TEST_CASE("branch_continue accumulates arguments along the default path") {
  auto anchor = br::BranchAnchor::to({0.0, 0.1});

  auto plus = br::branch_continue(anchor, [](cplx z) { return 2.0 * z + 1.0; });
  CHECK(plus.total_arg == Approx(std::arg(cplx(1.0, 0.2))).epsilon(1e-10));

  auto minus = br::branch_continue(anchor, [](cplx z) { return 2.0 * z - 1.0; });
  // ends at -1 + 0.2i having crossed the imaginary axis: arg slightly below pi
  CHECK(minus.total_arg == Approx(kPi - std::atan2(0.2, 1.0)).epsilon(1e-8));
  CHECK(std::abs(minus.value - cplx(-1.0, 0.2)) < 1e-12);

  // sqrt(xi) heads to +i as zeta -> 0 from above
  auto close = br::BranchAnchor::to({0.0, 1e-6});
  auto xi = br::branch_continue(
      close, [](cplx z) { return (2.0 * z - 1.0) / (2.0 * z + 1.0); });
  cplx root = xi.pow(0.5);
  CHECK(root.real() == Approx(0.0).epsilon(1e-5));
  CHECK(root.imag() == Approx(1.0).epsilon(1e-5));
}

TEST_CASE("branch continuation flags vanishing scalars") {
  auto anchor = br::BranchAnchor::to({-1.0, 1.0});
  // f(zeta) = zeta - (0.5 + 0.5 i) vanishes near the default path's first leg
  CHECK_THROWS_AS(br::branch_continue(
                      anchor, [](cplx z) { return z - cplx(1.0, 0.5); }),
                  std::domain_error);
}

TEST_CASE("reflection identity on random matrices") {
  // f_lambda(-X) = e^{i pi r lambda} conj(f_lambda(X)); for complex lambda
  // the bar is the conjugate-analytic family, i.e. conj(f_{conj lambda}(X)).
  rng::Stream stream(99, 0);
  for (int trial = 0; trial < 200; ++trial) {
    int r = 1 + static_cast<int>(stream.uniform() * 4);
    Eigen::MatrixXd x(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j <= i; ++j) x(i, j) = x(j, i) = stream.gauss();
    auto [pos, neg, nul] = lin::signature_of(x);
    if (nul > 0) continue;

    double lr = stream.uniform(-5, 5);
    cplx real_lhs = br::f_lambda(-x, lr);
    cplx real_rhs = std::exp(cplx(0, kPi * r * lr)) * std::conj(br::f_lambda(x, lr));
    CHECK(std::abs(real_lhs - real_rhs) <= 1e-10 * std::abs(real_rhs));

    cplx lambda(stream.uniform(-5, 5), stream.uniform(-5, 5));
    cplx lhs = br::f_lambda(-x, lambda);
    cplx rhs = std::exp(cplx(0, kPi) * double(r) * lambda) *
               std::conj(br::f_lambda(x, std::conj(lambda)));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
  }
}

TEST_CASE("pointwise boundary value converges at O(eps)") {
  Eigen::MatrixXd x = Eigen::Vector3d(0.8, -0.3, -1.7).asDiagonal();
  cplx lambda(-2.0, 0.0);
  cplx exact = br::f_lambda(x, lambda);
  double e1 = std::abs(br::siegel_det_pow(shift_i_eps(x, 1e-2), lambda) - exact);
  double e2 = std::abs(br::siegel_det_pow(shift_i_eps(x, 5e-3), lambda) - exact);
  double e3 = std::abs(br::siegel_det_pow(shift_i_eps(x, 2.5e-3), lambda) - exact);
  CHECK(e2 < 0.7 * e1);
  CHECK(e3 < 0.7 * e2);
}

TEST_CASE("branch/direct agreement for det(X_zeta)^lambda") {
  rng::Stream stream(123, 0);
  for (int trial = 0; trial < 25; ++trial) {
    int r = 1 + static_cast<int>(stream.uniform() * 3);
    Eigen::MatrixXd x(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j <= i; ++j)
        x(i, j) = x(j, i) = stream.uniform(-1.0, 1.0);
    double eps = stream.uniform(0.01, 0.5);
    cplx lambda(-0.5 * (r + 1), 0.0);

    // branch continuation of det(X + 2 zeta I)^lambda from zeta = 1 to i eps
    auto anchor = br::BranchAnchor::to({0.0, eps});
    auto det_f = [&](cplx zeta) {
      Eigen::MatrixXcd m = x.cast<cplx>();
      m.diagonal().array() += 2.0 * zeta;
      return m.determinant();
    };
    cplx continued = br::branch_continue(anchor, det_f).pow(lambda);
    cplx direct = br::siegel_det_pow(shift_i_eps(x, 2.0 * eps), lambda);
    CHECK(std::abs(continued - direct) <= 1e-10 * std::abs(direct));
  }
}
