#include "crofton/branched.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace crofton::br {

BranchAnchor::BranchAnchor(std::vector<cplx> vertices, double max_step_arg)
    : vertices_(std::move(vertices)), max_step_arg_(max_step_arg) {
  if (vertices_.empty() || std::abs(vertices_.front() - 1.0) > 1e-12)
    throw std::invalid_argument("BranchAnchor: path must start at zeta = 1");
  if (max_step_arg_ <= 0.0 || max_step_arg_ >= kPi)
    throw std::invalid_argument("BranchAnchor: max_step_arg must be in (0, pi)");
  for (cplx v : vertices_)
    if (!lin::in_domain(v) && std::abs(v - vertices_.back()) > 0.0)
      throw std::domain_error("BranchAnchor: vertex outside U_C");
  // The endpoint itself may sit on the boundary of U_C (e.g. a real point
  // approached from above); interior vertices may not.
  for (size_t i = 0; i + 1 < vertices_.size(); ++i)
    if (!lin::in_domain(vertices_[i]))
      throw std::domain_error("BranchAnchor: interior vertex outside U_C");
}

BranchAnchor BranchAnchor::to(cplx end, double max_step_arg) {
  if (end.imag() == 0.0 && end.real() > 0.5)
    return BranchAnchor({cplx(1.0, 0.0), end}, max_step_arg);
  return BranchAnchor({cplx(1.0, 0.0), cplx(1.0, 1.0), end}, max_step_arg);
}

BranchTracker::BranchTracker(cplx start_value)
    : value_(start_value), total_arg_(std::arg(start_value)) {}

void BranchTracker::step(cplx next_value, double max_step_arg, double vanish_tol) {
  if (std::abs(next_value) < vanish_tol)
    throw std::domain_error("branch continuation: tracked scalar vanished on the path");
  double delta = std::arg(next_value / value_);
  if (std::abs(delta) >= max_step_arg)
    throw std::domain_error("branch continuation: step argument increment too large");
  total_arg_ += delta;
  value_ = next_value;
}

namespace {

// Continue f over one straight segment, bisecting until every increment is
// below the step bound.
void continue_segment(BranchTracker& tracker, const std::function<cplx(cplx)>& f,
                      cplx a, cplx b, double max_step_arg, double vanish_tol,
                      int depth = 0) {
  cplx fb = f(b);
  if (std::abs(fb) < vanish_tol)
    throw std::domain_error("branch continuation: f vanishes on the path");
  cplx cur = tracker.current().value;
  double delta = std::arg(fb / cur);
  if (std::abs(delta) < max_step_arg) {
    tracker.step(fb, max_step_arg, vanish_tol);
    return;
  }
  if (depth > 48)
    throw std::domain_error("branch continuation: refinement limit hit (f vanishing?)");
  cplx mid = 0.5 * (a + b);
  continue_segment(tracker, f, a, mid, max_step_arg, vanish_tol, depth + 1);
  continue_segment(tracker, f, mid, b, max_step_arg, vanish_tol, depth + 1);
}

}  // namespace

BranchedScalar branch_continue(const BranchAnchor& anchor,
                               const std::function<cplx(cplx)>& f,
                               double vanish_tol) {
  const auto& v = anchor.vertices();
  cplx f0 = f(v.front());
  if (std::abs(f0) < vanish_tol)
    throw std::domain_error("branch continuation: f vanishes at the anchor");
  BranchTracker tracker(f0);
  for (size_t i = 0; i + 1 < v.size(); ++i)
    continue_segment(tracker, f, v[i], v[i + 1], anchor.max_step_arg(), vanish_tol);
  return tracker.current();
}

cplx siegel_det_pow(const Eigen::Ref<const Eigen::MatrixXcd>& z, cplx lambda,
                    double tol) {
  const auto r = z.rows();
  if (r != z.cols()) throw std::invalid_argument("siegel_det_pow: matrix not square");
  double scale = std::max(1.0, z.norm());
  if (!z.isApprox(z.transpose(), 1e-10 * scale))
    throw std::invalid_argument("siegel_det_pow: matrix not symmetric");

  // Im Z must be positive semidefinite.
  Eigen::MatrixXd im = z.imag();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ies(im, Eigen::EigenvaluesOnly);
  if (ies.eigenvalues().minCoeff() < -1e-9 * scale)
    throw std::domain_error("siegel_det_pow: Im Z not positive semidefinite");

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(z, false);
  cplx logdet(0.0, 0.0);
  const double arg_tol = 1e-7;
  for (Eigen::Index j = 0; j < r; ++j) {
    cplx mu = es.eigenvalues()(j);
    if (std::abs(mu) < tol * scale)
      throw std::domain_error("siegel_det_pow: singular input");
    double a = std::arg(mu);
    if (a < -arg_tol && a > -kPi + arg_tol)
      throw std::domain_error("siegel_det_pow: eigenvalue argument outside [0, pi]");
    logdet += log_upper(mu, arg_tol + 1e-9);
  }
  return std::exp(lambda * logdet);
}

cplx f_lambda(const Eigen::Ref<const Eigen::MatrixXd>& x, cplx lambda, double tol) {
  auto [pos, neg, null] = lin::signature_of(x, tol);
  if (null > 0)
    throw std::domain_error("f_lambda: degenerate matrix (pointwise value undefined)");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x, Eigen::EigenvaluesOnly);
  double logabsdet = 0.0;
  for (double ev : es.eigenvalues()) logabsdet += std::log(std::abs(ev));
  return std::exp(lambda * logabsdet + cplx(0.0, kPi) * static_cast<double>(neg) * lambda);
}

bool is_admissible_pole(double s) {
  double two_s = 2.0 * s;
  if (std::abs(two_s - std::round(two_s)) > 1e-12) return false;
  long n = static_cast<long>(std::llround(two_s));
  return n <= -2;  // covers -1, -3/2, -2, ...
}

std::vector<CoeffVector> muro_d_vectors(const CoeffVector& a, double s, int depth) {
  if (!is_admissible_pole(s))
    throw std::invalid_argument("muro_d_vectors: s not in the admissible pole set");
  const int r = static_cast<int>(a.size()) - 1;
  if (depth < 0 || depth > r + 1)
    throw std::invalid_argument("muro_d_vectors: depth out of range");

  bool even_integer =
      std::abs(s - std::round(s)) < 1e-12 && (std::llround(s) % 2 == 0);
  cplx eps = even_integer ? cplx(-1.0) : cplx(1.0);

  std::vector<CoeffVector> out;
  out.push_back(a);
  if (depth == 0) return out;

  CoeffVector d1(std::max(r, 0));
  for (int h = 0; h < r; ++h) d1(h) = a(h) + eps * a(h + 1);
  out.push_back(d1);

  // Even chain grows from d^(0), odd chain from d^(1); each step drops two
  // entries off the tail.
  for (int m = 2; m <= depth; ++m) {
    const CoeffVector& prev = out[m - 2];
    int len = r + 1 - m;
    CoeffVector d(std::max(len, 0));
    cplx sign = (m % 2 == 0) ? cplx(1.0) : cplx(-1.0);
    for (int h = 0; h < len; ++h) d(h) = prev(h) + sign * prev(h + 2);
    out.push_back(d);
  }
  return out;
}

int muro_pole_order(const CoeffVector& a, double s, double tol) {
  const int r = static_cast<int>(a.size()) - 1;
  bool half = std::abs(s - std::round(s)) > 1e-12;
  auto d = muro_d_vectors(a, s, r + 1);
  auto nonzero = [&](int m) {
    if (m < 0) return true;  // d^(m<0) treated as the full vector: nonzero input
    if (m >= static_cast<int>(d.size())) return false;
    return d[m].size() > 0 && d[m].cwiseAbs().maxCoeff() > tol;
  };
  for (int p = (r + 2) / 2; p >= 0; --p) {
    int idx = half ? 2 * p : 2 * p - 1;
    if (nonzero(idx)) return p;
  }
  return 0;
}

double analyticity_check(double s, int j, int r) {
  if (!is_admissible_pole(s))
    throw std::invalid_argument("analyticity_check: s not admissible");
  // a^(j)_h(s) = (i pi h)^j e^{i pi h s}
  CoeffVector aj(r + 1);
  for (int h = 0; h <= r; ++h)
    aj(h) = std::pow(cplx(0.0, kPi * h), j) * std::exp(cplx(0.0, kPi * h * s));
  bool half = std::abs(s - std::round(s)) > 1e-12;
  int m = half ? 2 * j + 2 : 2 * j + 1;
  if (m > r + 1) return 0.0;  // vector is empty by convention
  auto d = muro_d_vectors(aj, s, m);
  const CoeffVector& v = d[m];
  return v.size() > 0 ? v.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace crofton::br
