#include <doctest.h>

#include "crofton/intrinsic_volumes.hpp"

using namespace crofton;
using doctest::Approx;

TEST_CASE("omega: unit ball volumes") {
  CHECK(iv::omega(0) == Approx(1.0));
  CHECK(iv::omega(1) == Approx(2.0));
  CHECK(iv::omega(2) == Approx(kPi));
  CHECK(iv::omega(3) == Approx(4.0 * kPi / 3.0));
}

TEST_CASE("crofton_coeffs examples and invariants") {
  auto t1 = iv::crofton_coeffs(1, 2, 1.0);
  CHECK(t1.c.size() == 1);
  CHECK(t1.c(0) == Approx(1.0));

  auto t2 = iv::crofton_coeffs(1, 3, 1.0);
  CHECK(t2.c.size() == 2);
  CHECK(t2.c(0) == Approx(1.0));
  CHECK(t2.c(1) == Approx(-1.0 / (2.0 * kPi)));

  auto t3 = iv::crofton_coeffs(2, 4, 1.0);
  CHECK(t3.c(1) == Approx(-3.0 / (2.0 * kPi)));

  for (int n = 1; n <= 8; ++n)
    for (int k = 1; k <= n; ++k)
      for (double sigma : {-1.0, 0.0, 0.5, 1.0})
        CHECK(iv::crofton_coeffs(k, n, sigma).c(0) == Approx(1.0).epsilon(1e-14));

  // sigma = 0 kills every j >= 1 term
  auto flat = iv::crofton_coeffs(1, 5, 0.0);
  for (int j = 1; j < flat.c.size(); ++j) CHECK(flat.c(j) == 0.0);
}

TEST_CASE("riemannian band closed forms") {
  auto mu = iv::mu_band_riemannian(2, kPi / 6.0);
  CHECK(mu.values(2).real() == Approx(2.0 * kPi));          // 4 pi sin(pi/6)
  CHECK(mu.values(1).real() == Approx(kPi * std::sqrt(3.0)));  // 2 pi cos(pi/6)
  CHECK(mu.values(0) == cplx(0.0, 0.0));

  // d(mu_2)/d eps = vol of the boundary
  double eps = 0.3, h = 1e-6;
  double deriv = (iv::mu_band_riemannian(2, eps + h).values(2).real() -
                  iv::mu_band_riemannian(2, eps - h).values(2).real()) /
                 (2.0 * h);
  CHECK(deriv == Approx(4.0 * kPi * std::cos(eps)).epsilon(1e-6));

  auto mu3 = iv::mu_band_riemannian(3, 0.4);
  CHECK(mu3.values(3).real() ==
        Approx(4.0 * kPi * (0.4 + std::sin(0.4) * std::cos(0.4))));
  CHECK(mu3.values(2).real() == Approx(4.0 * kPi * std::pow(std::cos(0.4), 2)));
  CHECK(!mu3.has(1));  // no elementary form; provenance absent
  CHECK(mu3.values(0).real() == Approx(2.0));
}

TEST_CASE("cap closed forms: small caps match Euclidean balls") {
  auto mu2 = iv::mu_cap_riemannian(2, kPi / 3.0);
  CHECK(mu2.values(1).real() == Approx(kPi * std::sin(kPi / 3.0)));
  CHECK(mu2.values(2).real() == Approx(2.0 * kPi * (1.0 - 0.5)));

  // r -> 0: cap -> flat ball of radius r
  for (double r : {0.02, 0.05}) {
    auto cap2 = iv::mu_cap_riemannian(2, r);
    CHECK(cap2.values(1).real() ==
          Approx(iv::mu_ball_euclidean(2, 1, r)).epsilon(5e-3));
    auto cap3 = iv::mu_cap_riemannian(3, r);
    CHECK(cap3.values(1).real() ==
          Approx(iv::mu_ball_euclidean(3, 1, r)).epsilon(5e-3));
    CHECK(cap3.values(2).real() ==
          Approx(iv::mu_ball_euclidean(3, 2, r)).epsilon(5e-3));
  }
}

TEST_CASE("steiner fit reproduces classical ball values") {
  CHECK(iv::mu_ball_euclidean(2, 1, 1.0) == Approx(kPi).epsilon(1e-9));
  CHECK(iv::mu_ball_euclidean(2, 0, 1.0) == Approx(1.0).epsilon(1e-9));
  CHECK(iv::mu_ball_euclidean(3, 3, 2.0) ==
        Approx(iv::omega(3) * 8.0).epsilon(1e-9));
  CHECK(iv::mu_ball_euclidean(4, 0, 0.7) == Approx(1.0).epsilon(1e-8));
  // closed form: mu_k(B^n_R) = binom(n,k) omega_n / omega_{n-k} R^k
  for (int n = 1; n <= 5; ++n)
    for (int k = 0; k <= n; ++k) {
      double expect = iv::binom(n, k) * iv::omega(n) / iv::omega(n - k);
      CHECK(iv::mu_ball_euclidean(n, k, 1.0) == Approx(expect).epsilon(1e-7));
    }
}

TEST_CASE("derivative identities of the template substitution") {
  // d rho / d theta and d eps / d theta at real zeta (xi in (0,1))
  double theta = 0.5, h = 1e-6;
  auto rho = [](double th) { return std::atanh(std::tan(th)); };
  double drho = (rho(theta + h) - rho(theta - h)) / (2 * h);
  double tt = std::tan(theta);
  CHECK(drho == Approx((1 + tt * tt) / (1 - tt * tt)).epsilon(1e-7));

  for (double zeta : {0.8, 1.0, 2.0}) {
    double xi = (2 * zeta - 1) / (2 * zeta + 1);
    auto eps_of = [&](double th) { return std::atan(std::sqrt(xi) * std::tan(th)); };
    double deps = (eps_of(theta + h) - eps_of(theta - h)) / (2 * h);
    double expect = std::sqrt(xi) * (1 + tt * tt) / (1 + xi * tt * tt);
    CHECK(deps == Approx(expect).epsilon(1e-7));
  }
}

TEST_CASE("template continuation: real zeta reduces to the round band") {
  double theta = 0.5;
  for (double zeta : {0.8, 1.0, 3.0}) {
    double xi = (2 * zeta - 1) / (2 * zeta + 1);
    double eps = std::atan(std::sqrt(xi) * std::tan(theta));
    auto anchor = br::BranchAnchor::to({zeta, 0.0});
    auto cont = iv::mu_template_continued(2, 1, theta, {zeta, 0.0}, anchor);
    auto direct = iv::mu_band_riemannian(2, eps);
    CHECK(std::abs(cont.values(1) - direct.values(1)) < 1e-10);
    CHECK(std::abs(cont.values(2) - direct.values(2)) < 1e-10);

    auto cont3 = iv::mu_template_continued(3, 1, theta, {zeta, 0.0}, anchor);
    auto direct3 = iv::mu_band_riemannian(3, eps);
    CHECK(std::abs(cont3.values(2) - direct3.values(2)) < 1e-10);
    CHECK(std::abs(cont3.values(3) - direct3.values(3)) < 1e-10);
  }
}

TEST_CASE("template continuation: zeta -> 0 gives the de Sitter values") {
  double theta = 0.5;
  double rho = std::atanh(std::tan(theta));
  auto anchor = br::BranchAnchor::to({0.0, 0.0});
  auto mu = iv::mu_template_continued(2, 1, theta, {0.0, 0.0}, anchor);
  // mu_1 -> 2 pi cosh(rho), mu_2 -> i 4 pi sinh(rho)
  CHECK(mu.values(1).real() == Approx(2.0 * kPi * std::cosh(rho)).epsilon(1e-10));
  CHECK(std::abs(mu.values(1).imag()) < 1e-10);
  CHECK(mu.values(2).imag() == Approx(4.0 * kPi * std::sinh(rho)).epsilon(1e-10));
  CHECK(std::abs(mu.values(2).real()) < 1e-10);

  // approach along i eps with error O(eps)
  double prev_err = 1e9;
  for (double eps : {1e-2, 5e-3, 2.5e-3}) {
    auto near = iv::mu_template_continued(2, 1, theta, {0.0, eps},
                                          br::BranchAnchor::to({0.0, eps}));
    double err = std::abs(near.values(1) - mu.values(1)) +
                 std::abs(near.values(2) - mu.values(2));
    CHECK(err < 0.7 * prev_err);
    prev_err = err;
  }

  // p = 3: mu_3 -> i 4 pi (rho + sinh rho cosh rho)
  auto mu3 = iv::mu_template_continued(3, 1, theta, {0.0, 0.0}, anchor);
  CHECK(mu3.values(3).imag() ==
        Approx(4.0 * kPi * (rho + std::sinh(rho) * std::cosh(rho))).epsilon(1e-10));
  CHECK(std::abs(mu3.values(3).real()) < 1e-10);
  // mu_2 -> 4 pi cosh^2(rho), real
  CHECK(mu3.values(2).real() ==
        Approx(4.0 * kPi * std::pow(std::cosh(rho), 2)).epsilon(1e-10));

  // equator template is zeta-free
  auto eq = iv::mu_template_continued(2, 0, theta, {0.0, 0.0}, anchor);
  CHECK(eq.values(1).real() == Approx(2.0 * kPi));
  CHECK(eq.values(0) == cplx(0.0, 0.0));
  CHECK(eq.values(2) == cplx(0.0, 0.0));
}

TEST_CASE("curve mu_1: Euclidean circle and signature swap") {
  auto circle = body::make_circle();
  auto euclid = lin::standard_form({2, 0});
  cplx len = iv::mu1_curve_flat(circle, euclid);
  CHECK(len.real() == Approx(2.0 * kPi).epsilon(1e-10));
  CHECK(len.imag() == Approx(0.0));

  auto lorentz = lin::standard_form({1, 1});
  cplx mu1 = iv::mu1_curve_flat(circle, lorentz);
  // frozen from two independent quadrature levels; the t -> t + pi/2 symmetry
  // makes the spacelike and timelike contributions equal
  CHECK(mu1.real() == Approx(2.396280469).epsilon(1e-8));
  CHECK(mu1.imag() == Approx(mu1.real()).epsilon(1e-10));
  CHECK(iv::mu1_curve_flat_error(circle, lorentz) < 1e-8);

  // squeezed ellipse: almost everywhere spacelike, value approaches the length
  auto flatish = body::make_ellipse(1.0, 1e-3);
  cplx mu_f = iv::mu1_curve_flat(flatish, lorentz);
  CHECK(mu_f.real() == Approx(4.0).epsilon(1e-2));  // perimeter -> 4
  CHECK(mu_f.imag() < 0.05);
}

TEST_CASE("coefficient csv export") {
  std::string csv = iv::coeff_table_csv(3, 4);
  CHECK(csv.rfind("k,n,sigma,j,c_j_real,c_j_imag\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') > 10);
}
