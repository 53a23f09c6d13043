#include "crofton/pseudo_linalg.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace crofton::lin {

QuadraticSpace standard_form(Signature sig) {
  if (sig.p < 0 || sig.q < 0 || sig.dim() < 1)
    throw std::invalid_argument("standard_form: need p, q >= 0 and p + q >= 1");
  QuadraticSpace space;
  space.sig = sig;
  space.q_diag = VecD::Ones(sig.dim());
  space.q_diag.tail(sig.q).setConstant(-1.0);
  return space;
}

ComplexForm form_zeta(const QuadraticSpace& space, cplx zeta) {
  if (!in_domain(zeta))
    throw std::domain_error("form_zeta: zeta outside U_C");
  ComplexForm form;
  form.zeta = zeta;
  form.diag = VecC::Constant(space.dim(), 2.0 * zeta + 1.0);
  form.diag.tail(space.sig.q).setConstant(2.0 * zeta - 1.0);
  return form;
}

std::tuple<int, int, int> signature_of(const Eigen::Ref<const Eigen::MatrixXd>& m,
                                       double tol) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("signature_of: matrix not square");
  if (!m.isApprox(m.transpose(), 1e-12 * std::max(1.0, m.norm())))
    throw std::invalid_argument("signature_of: matrix not symmetric");
  if (tol < 0.0) tol = 1e-9 * std::max(1.0, m.norm());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  int pos = 0, neg = 0, null = 0;
  for (double ev : es.eigenvalues()) {
    if (ev > tol)
      ++pos;
    else if (ev < -tol)
      ++neg;
    else
      ++null;
  }
  return {pos, neg, null};
}

}  // namespace crofton::lin
