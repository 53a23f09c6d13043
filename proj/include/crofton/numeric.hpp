#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace crofton {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Logarithm with the argument taken in [0, pi).
///
/// All complex quantities produced by the zeta-family (2*zeta+1, 2*zeta-1,
/// eigenvalues of X0 + 2*zeta*I) live in the closed upper half plane and are
/// positive real at the anchor zeta = 1, so continuation from the anchor is
/// exactly the upper-half-plane branch.  Arguments slightly below zero (from
/// roundoff on boundary values) are folded back.
inline cplx log_upper(cplx z, double arg_tol = 1e-9) {
  double a = std::arg(z);
  if (a < -arg_tol) a += 2.0 * kPi;
  if (a >= kPi + arg_tol)
    throw std::domain_error("log_upper: argument outside the closed upper half plane");
  return {std::log(std::abs(z)), a};
}

/// z^lambda on the upper-half-plane branch.
inline cplx pow_upper(cplx z, cplx lambda, double arg_tol = 1e-9) {
  return std::exp(lambda * log_upper(z, arg_tol));
}

/// Neumaier compensated accumulator; one per real component.
class KahanSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Compensated complex accumulator.
class KahanSumC {
 public:
  void add(cplx z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  cplx value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum re_, im_;
};

}  // namespace crofton
