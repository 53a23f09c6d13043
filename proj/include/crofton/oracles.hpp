#pragma once

#include <functional>
#include <vector>

#include "crofton/bodies.hpp"

namespace crofton::oracle {

/// Reference implementations kept deliberately independent of the code paths
/// they check: brute-force Euler characteristics, nonparametric tests, and a
/// one-dimensional distributional pole probe.

/// Membership x in body for points on the round sphere.
bool sphere_body_contains(const body::SphereBody& bdy, const lin::VecD& x);

/// chi(body cap sphere(E)) by dense sampling / simplicial counting:
/// dim E = 1 (point pair), 2 (arc count on the circle), 3 (icosphere
/// subcomplex V - E + F).  Exact integers for generic samples.
int chi_brute_sphere(const body::SphereBody& bdy, const gr::Subspace& e);

/// Kolmogorov-Smirnov p-value of sorted samples against a cdf.
double ks_p_value(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Chi-squared uniformity p-value over equiprobable bins on [lo, hi).
double chi2_uniform_p_value(const std::vector<double>& samples, double lo, double hi,
                            int bins);

/// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x);

/// Pairing F(lambda) = integral |x|^lambda phi(x) dx with phi = exp(-x^2),
/// analytically continued by subtraction to Re(lambda) > -3.  Quadrature
/// based; independent of the Muro recursion it cross-checks.
cplx pairing_abs_power(cplx lambda);

/// Residue of pairing_abs_power at s, by a small quadrature contour.
cplx pairing_residue(double s, double radius = 0.25, int points = 64);

}  // namespace crofton::oracle
