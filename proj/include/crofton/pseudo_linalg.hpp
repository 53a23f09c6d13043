#pragma once

#include <Eigen/Dense>
#include <complex>
#include <tuple>

#include "crofton/numeric.hpp"

namespace crofton::lin {

/// Small dense matrices only: ambient dimensions stay in single digits, so
/// dynamic-size Eigen types with a fixed capacity keep everything on the stack.
using MatD = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 8, 8>;
using VecD = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 8, 1>;
using MatC = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0, 8, 8>;
using VecC = Eigen::Matrix<cplx, Eigen::Dynamic, 1, 0, 8, 1>;

/// Signature (p, q): p plus-directions, q minus-directions.
struct Signature {
  int p = 0;
  int q = 0;
  int dim() const { return p + q; }
};

/// Standard quadratic space: Q = diag(+1...,-1...) in the basis where the
/// compatible Euclidean form P0 is the identity.
struct QuadraticSpace {
  Signature sig;
  VecD q_diag;  // entries +1 (first p) then -1 (last q)

  MatD Q() const { return q_diag.asDiagonal(); }
  int dim() const { return sig.dim(); }
};

/// The complex form Q_zeta = Q + 2*zeta*P0, diagonal in the standard basis.
struct ComplexForm {
  cplx zeta;
  VecC diag;  // (2*zeta+1) on the first p entries, (2*zeta-1) on the last q

  MatC matrix() const { return diag.asDiagonal(); }
};

/// U_C = {Re zeta > 1/2} union {Im zeta > 0}: the domain on which every
/// fractional power below has an unambiguous branch.
inline bool in_domain(cplx zeta) {
  return zeta.real() > 0.5 || zeta.imag() > 0.0;
}

QuadraticSpace standard_form(Signature sig);

ComplexForm form_zeta(const QuadraticSpace& space, cplx zeta);

/// Eigenvalue counts (pos, neg, null) of a real symmetric matrix.
/// tol < 0 requests the default 1e-9 relative to the matrix norm.
std::tuple<int, int, int> signature_of(const Eigen::Ref<const Eigen::MatrixXd>& m,
                                       double tol = -1.0);

}  // namespace crofton::lin
