#include "crofton/grassmannian.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace crofton::gr {

namespace {

// Modified Gram-Schmidt with one re-orthogonalization pass.  Returns false on
// rank deficiency (probability zero for Gaussian input; caller redraws).
bool orthonormalize(lin::MatD& a) {
  const auto m = a.cols();
  for (Eigen::Index j = 0; j < m; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < j; ++i)
        a.col(j) -= a.col(i).dot(a.col(j)) * a.col(i);
    double norm = a.col(j).norm();
    if (norm < 1e-8) return false;
    a.col(j) /= norm;
  }
  return true;
}

}  // namespace

Subspace sample_linear(int d, int m, rng::Stream& stream) {
  if (m < 1 || m > d) throw std::invalid_argument("sample_linear: need 1 <= m <= d");
  Subspace e;
  e.frame.resize(d, m);
  for (;;) {
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index i = 0; i < d; ++i) e.frame(i, j) = stream.gauss();
    if (orthonormalize(e.frame)) return e;
  }
}

lin::MatD gram_q(const Subspace& e, const lin::QuadraticSpace& space) {
  return e.frame.transpose() * space.q_diag.asDiagonal() * e.frame;
}

lin::MatC gram_zeta(const Subspace& e, const lin::QuadraticSpace& space, cplx zeta) {
  lin::MatC x = gram_q(e, space).cast<cplx>();
  x.diagonal().array() += 2.0 * zeta;
  return x;
}

lin::VecD x0_eigenvalues(const Subspace& e, const lin::QuadraticSpace& space) {
  Eigen::SelfAdjointEigenSolver<lin::MatD> es(gram_q(e, space), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

cplx weight_from_eigs(const lin::VecD& mu, const lin::Signature& sig, cplx zeta) {
  const int n1 = sig.dim();
  const int m = static_cast<int>(mu.size());
  const cplx lambda(-0.5 * n1, 0.0);
  cplx logw = 0.5 * sig.p * m * log_upper(2.0 * zeta + 1.0) +
              0.5 * sig.q * m * log_upper(2.0 * zeta - 1.0);
  for (int j = 0; j < m; ++j) logw += lambda * log_upper(mu(j) + 2.0 * zeta);
  return std::exp(logw);
}

std::optional<DensityWeight> weight_m_zeta(const Subspace& e,
                                           const lin::QuadraticSpace& space, int k,
                                           cplx zeta, const br::BranchAnchor& anchor) {
  if (!lin::in_domain(zeta)) throw std::domain_error("weight_m_zeta: zeta outside U_C");
  const int n1 = space.dim();
  const int m = e.dim();
  if (m != n1 - k) throw std::invalid_argument("weight_m_zeta: dim E != n+1-k");

  // Prefactors continued along the declared anchor; the determinant factor via
  // the upper-half-plane eigenvalue rule, which the branch/direct agreement
  // property ties back to the same anchor.
  auto pref_plus = br::branch_continue(anchor, [](cplx z) { return 2.0 * z + 1.0; });
  auto pref_minus = br::branch_continue(anchor, [](cplx z) { return 2.0 * z - 1.0; });

  lin::VecD mu = x0_eigenvalues(e, space);
  const cplx lambda(-0.5 * n1, 0.0);
  cplx log_det = 0.0;
  for (int j = 0; j < m; ++j) {
    cplx factor = mu(j) + 2.0 * zeta;
    if (std::abs(factor) < 1e-14) return std::nullopt;  // singular sample
    log_det += lambda * log_upper(factor);
  }

  DensityWeight w;
  w.zeta = zeta;
  w.k = k;
  w.log_pref_plus = cplx(0.5 * space.sig.p * m, 0.0) * pref_plus.log();
  w.log_pref_minus = cplx(0.5 * space.sig.q * m, 0.0) * pref_minus.log();
  w.log_det = log_det;
  w.value = std::exp(w.log_pref_plus + w.log_pref_minus + w.log_det);
  return w;
}

lin::MatD orthogonal_complement(const Subspace& e) {
  const int d = e.ambient_dim();
  const int m = e.dim();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::MatrixXd(e.frame));
  Eigen::MatrixXd full = qr.householderQ();
  lin::MatD comp = full.rightCols(d - m);
  return comp;
}

AffineSample sample_affine(const lin::QuadraticSpace& space, int k, double window_radius,
                           rng::Stream& stream) {
  if (window_radius <= 0.0)
    throw std::invalid_argument("sample_affine: window radius must be positive");
  const int d = space.dim();
  AffineSample s;
  s.plane.direction = sample_linear(d, d - k, stream);

  // Uniform point in the k-ball of radius R inside the complement.
  lin::MatD comp = orthogonal_complement(s.plane.direction);
  lin::VecD y(k);
  for (int i = 0; i < k; ++i) y(i) = stream.gauss();
  double norm = y.norm();
  if (norm < 1e-300) norm = 1.0;
  double radius = window_radius * std::pow(stream.uniform(), 1.0 / k);
  s.plane.offset = comp * (y * (radius / norm));

  double vol_ball = std::pow(kPi, 0.5 * k) / std::tgamma(0.5 * k + 1.0) *
                    std::pow(window_radius, k);
  s.lebesgue_factor = vol_ball;
  return s;
}

cplx weight_flat_from_eigs(const lin::VecD& mu, int ambient_dim, double epsilon) {
  const cplx lambda(-0.5 * (ambient_dim + 1), 0.0);
  cplx logw = 0.0;
  for (Eigen::Index j = 0; j < mu.size(); ++j)
    logw += lambda * log_upper(cplx(mu(j), 2.0 * epsilon));
  return std::exp(logw);
}

cplx weight_flat(const AffineSubspace& f, const lin::QuadraticSpace& space, int k,
                 double epsilon) {
  if (epsilon <= 0.0) throw std::domain_error("weight_flat: epsilon must be positive");
  if (f.direction.dim() != space.dim() - k)
    throw std::invalid_argument("weight_flat: direction dimension != p+q-k");
  lin::VecD mu = x0_eigenvalues(f.direction, space);
  return weight_flat_from_eigs(mu, space.dim(), epsilon);
}

std::optional<Subspace> intersect(const Subspace& e, const std::vector<int>& u_axes,
                                  double tol) {
  const int d = e.ambient_dim();
  const int m = e.dim();
  const int u_dim = static_cast<int>(u_axes.size());
  if (u_dim < 1 || u_dim > d) throw std::invalid_argument("intersect: bad U dimension");
  const int expected = m + u_dim - d;
  if (expected < 1) throw std::invalid_argument("intersect: generic intersection empty");

  // x = E alpha lies in U iff the rows of E alpha off the U axes vanish.
  std::vector<bool> in_u(d, false);
  for (int a : u_axes) {
    if (a < 0 || a >= d) throw std::invalid_argument("intersect: axis out of range");
    in_u[a] = true;
  }
  Eigen::MatrixXd tail(d - u_dim, m);
  int row = 0;
  for (int i = 0; i < d; ++i)
    if (!in_u[i]) tail.row(row++) = e.frame.row(i);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(tail, Eigen::ComputeFullV);
  int rank = 0;
  double thresh = tol * std::max(1.0, svd.singularValues().size() > 0
                                          ? svd.singularValues()(0)
                                          : 0.0);
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > thresh) ++rank;
  int null_dim = m - rank;
  if (null_dim != expected) return std::nullopt;  // non-generic; resample

  Subspace out;
  out.frame = e.frame * svd.matrixV().rightCols(null_dim);
  lin::MatD frame = out.frame;
  // Columns are already orthonormal (V orthogonal, E orthonormal), but tidy up.
  for (Eigen::Index j = 0; j < frame.cols(); ++j) frame.col(j).normalize();
  out.frame = frame;
  return out;
}

double nullity_gap(const Subspace& e, const lin::QuadraticSpace& space) {
  return x0_eigenvalues(e, space).cwiseAbs().minCoeff();
}

}  // namespace crofton::gr
