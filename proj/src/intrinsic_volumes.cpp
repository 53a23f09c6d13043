#include "crofton/intrinsic_volumes.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace crofton::iv {

double omega(int n) {
  if (n < 0) throw std::invalid_argument("omega: negative index");
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double binom(double x, int j) {
  double out = 1.0;
  for (int i = 0; i < j; ++i) out *= (x - i) / (i + 1);
  return out;
}

CoeffTable crofton_coeffs(int k, int n, double sigma) {
  if (k < 1 || k > n) throw std::invalid_argument("crofton_coeffs: need 1 <= k <= n");
  CoeffTable t;
  t.k = k;
  t.n = n;
  t.sigma = sigma;
  const int jmax = (n - k) / 2;
  t.c.resize(jmax + 1);
  for (int j = 0; j <= jmax; ++j)
    t.c(j) = omega(k - 1) / omega(k + 2 * j - 1) * binom(-0.5 * k, j) *
             std::pow(sigma, j);
  return t;
}

MuVector mu_band_riemannian(int p, double eps) {
  if (p != 2 && p != 3)
    throw std::invalid_argument("mu_band_riemannian: p must be 2 or 3");
  if (!(eps > 0.0 && eps < kPi / 4.0))
    throw std::domain_error("mu_band_riemannian: half-width outside (0, pi/4)");
  MuVector mu;
  mu.values = Eigen::VectorXcd::Zero(p + 1);
  mu.prov.assign(p + 1, MuVector::Provenance::ClosedForm);
  if (p == 2) {
    mu.values(0) = 0.0;                        // chi(S^1 x I)
    mu.values(1) = 2.0 * kPi * std::cos(eps);  // half the boundary length
    mu.values(2) = 4.0 * kPi * std::sin(eps);  // area
  } else {
    mu.values(0) = 2.0;  // chi(S^2 x I)
    mu.prov[1] = MuVector::Provenance::Absent;  // no elementary form
    mu.values(2) = 4.0 * kPi * std::cos(eps) * std::cos(eps);
    mu.values(3) = 4.0 * kPi * (eps + std::sin(eps) * std::cos(eps));
  }
  return mu;
}

MuVector mu_cap_riemannian(int n, double r) {
  if (n != 2 && n != 3) throw std::invalid_argument("mu_cap_riemannian: n must be 2 or 3");
  if (!(r > 0.0 && r < kPi / 2.0))
    throw std::domain_error("mu_cap_riemannian: radius outside (0, pi/2)");
  MuVector mu;
  mu.values = Eigen::VectorXcd::Zero(n + 1);
  mu.prov.assign(n + 1, MuVector::Provenance::ClosedForm);
  if (n == 2) {
    mu.values(0) = 1.0;
    mu.values(1) = kPi * std::sin(r);              // half the boundary circle
    mu.values(2) = 2.0 * kPi * (1.0 - std::cos(r));  // area
  } else {
    // Tube-formula coefficients of the solid cap in S^3 c R^4.
    mu.values(0) = 1.0;
    mu.values(1) = 3.0 * r + 0.5 * std::sin(2.0 * r);
    mu.values(2) = 2.0 * kPi * std::sin(r) * std::sin(r);
    mu.values(3) = 2.0 * kPi * r - kPi * std::sin(2.0 * r);
  }
  return mu;
}

MuVector mu_equator_template(int p) {
  if (p != 2 && p != 3)
    throw std::invalid_argument("mu_equator_template: p must be 2 or 3");
  MuVector mu;
  mu.values = Eigen::VectorXcd::Zero(p + 1);
  mu.prov.assign(p + 1, MuVector::Provenance::ClosedForm);
  if (p == 2) {
    mu.values(0) = 0.0;        // chi(S^1)
    mu.values(1) = 2.0 * kPi;  // length
    mu.values(2) = 0.0;
  } else {
    mu.values(0) = 2.0;        // chi(S^2)
    mu.values(1) = 0.0;
    mu.values(2) = 4.0 * kPi;  // area
    mu.values(3) = 0.0;
  }
  return mu;
}

namespace {

// Branched quantities of the template substitution at the end of the anchor.
struct TemplateScalars {
  cplx sin_eps;      // sqrt(xi) tan(theta) / sqrt(1 + xi tan^2 theta)
  cplx cos_eps;      // 1 / sqrt(1 + xi tan^2 theta)
  cplx eps;          // arctan(sqrt(xi) tan(theta)), branch-tracked
};

TemplateScalars continue_template(double theta, const br::BranchAnchor& anchor) {
  const double tt = std::tan(theta);
  const auto& verts = anchor.vertices();

  auto xi_of = [](cplx z) { return (2.0 * z - 1.0) / (2.0 * z + 1.0); };

  cplx z0 = verts.front();
  br::BranchTracker tr_plus(2.0 * z0 + 1.0);
  br::BranchTracker tr_minus(2.0 * z0 - 1.0);
  br::BranchTracker tr_h(1.0 + xi_of(z0) * tt * tt);
  auto sqrt_xi_at = [&]() {
    return std::exp(0.5 * (tr_minus.current().log() - tr_plus.current().log()));
  };
  cplx w0 = (1.0 + cplx(0, 1) * sqrt_xi_at() * tt) /
            (1.0 - cplx(0, 1) * sqrt_xi_at() * tt);
  br::BranchTracker tr_w(w0);

  const double max_arg = anchor.max_step_arg();
  // Walk each segment with fixed fine subdivision, refining on demand.
  for (size_t i = 0; i + 1 < verts.size(); ++i) {
    int steps = 64;
    for (int attempt = 0; attempt < 8; ++attempt) {
      br::BranchTracker p = tr_plus, m = tr_minus, h = tr_h, w = tr_w;
      try {
        for (int sgm = 1; sgm <= steps; ++sgm) {
          cplx z = verts[i] + (verts[i + 1] - verts[i]) * (double(sgm) / steps);
          p.step(2.0 * z + 1.0, max_arg);
          m.step(2.0 * z - 1.0, max_arg);
          cplx xi = xi_of(z);
          h.step(1.0 + xi * tt * tt, max_arg);
          cplx sq = std::exp(0.5 * (m.current().log() - p.current().log()));
          w.step((1.0 + cplx(0, 1) * sq * tt) / (1.0 - cplx(0, 1) * sq * tt), max_arg);
        }
        tr_plus = p;
        tr_minus = m;
        tr_h = h;
        tr_w = w;
        break;
      } catch (const std::domain_error&) {
        if (attempt == 7) throw;
        steps *= 4;
      }
    }
  }

  TemplateScalars out;
  cplx sqrt_xi = sqrt_xi_at();
  cplx inv_sqrt_h = std::exp(-0.5 * tr_h.current().log());
  out.cos_eps = inv_sqrt_h;
  out.sin_eps = sqrt_xi * tt * inv_sqrt_h;
  out.eps = tr_w.current().log() / cplx(0.0, 2.0);
  return out;
}

}  // namespace

MuVector mu_template_continued(int p, int s, double theta, cplx zeta_end,
                               const br::BranchAnchor& anchor) {
  if (s != 0 && s != 1) throw std::invalid_argument("mu_template_continued: s in {0,1}");
  if (s == 0) return mu_equator_template(p);
  if (p != 2 && p != 3)
    throw std::invalid_argument("mu_template_continued: p must be 2 or 3");
  if (!(theta > 0.0 && theta < kPi / 4.0))
    throw std::domain_error("mu_template_continued: theta outside (0, pi/4)");
  if (std::abs(anchor.endpoint() - zeta_end) > 1e-12)
    throw std::invalid_argument("mu_template_continued: anchor does not end at zeta_end");

  TemplateScalars ts = continue_template(theta, anchor);
  MuVector mu;
  mu.values = Eigen::VectorXcd::Zero(p + 1);
  mu.prov.assign(p + 1, MuVector::Provenance::Continued);
  if (p == 2) {
    mu.values(0) = 0.0;
    mu.values(1) = 2.0 * kPi * ts.cos_eps;
    mu.values(2) = 4.0 * kPi * ts.sin_eps;
  } else {
    mu.values(0) = 2.0;
    mu.prov[1] = MuVector::Provenance::Absent;
    mu.values(2) = 4.0 * kPi * ts.cos_eps * ts.cos_eps;
    mu.values(3) = 4.0 * kPi * (ts.eps + ts.sin_eps * ts.cos_eps);
  }
  return mu;
}

namespace {

// tanh-sinh quadrature over [a, b]; handles sqrt-type endpoint zeros.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 int level) {
  const double h = std::pow(2.0, -level + 2);  // level 7 -> h = 1/32
  const double t_max = 6.5;
  double c = 0.5 * (a + b), w = 0.5 * (b - a);
  KahanSum sum;
  sum.add(0.5 * kPi * f(c));
  for (int j = 1; j * h <= t_max; ++j) {
    double t = j * h;
    double s = std::sinh(t);
    double x = std::tanh(0.5 * kPi * s);
    if (1.0 - std::abs(x) < 1e-17) break;
    double dx = 0.5 * kPi * std::cosh(t) / std::pow(std::cosh(0.5 * kPi * s), 2);
    sum.add(dx * (f(c + w * x) + f(c - w * x)));
  }
  return sum.value() * w * h;
}

// Zeros of g on [0, T): grid scan plus bisection.
std::vector<double> isolate_zeros(const std::function<double(double)>& g, double period,
                                  int grid) {
  std::vector<double> roots;
  double h = period / grid;
  double prev = g(0.0);
  for (int i = 1; i <= grid; ++i) {
    double cur = g(i * h);
    if ((prev < 0.0) != (cur < 0.0)) {
      double lo = (i - 1) * h, hi = i * h, flo = prev;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi), fm = g(mid);
        if ((flo < 0.0) != (fm < 0.0))
          hi = mid;
        else {
          lo = mid;
          flo = fm;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev = cur;
  }
  return roots;
}

cplx mu1_curve_flat_impl(const body::PlanarCurve& curve,
                         const lin::QuadraticSpace& space, int levels) {
  if (space.dim() != 2)
    throw std::invalid_argument("mu1_curve_flat: planar curves only");
  auto qv = [&](double t) {
    Eigen::Vector2d v = curve.velocity(t);
    return space.q_diag(0) * v.x() * v.x() + space.q_diag(1) * v.y() * v.y();
  };
  auto roots = isolate_zeros(qv, curve.period, 4096);

  // Integration arcs between consecutive light-like parameters.
  std::vector<std::pair<double, double>> arcs;
  if (roots.empty()) {
    arcs.emplace_back(0.0, curve.period);
  } else {
    for (size_t i = 0; i < roots.size(); ++i) {
      double a = roots[i];
      double b = (i + 1 < roots.size()) ? roots[i + 1] : roots[0] + curve.period;
      arcs.emplace_back(a, b);
    }
  }

  double space_len = 0.0, time_len = 0.0;
  for (auto [a, b] : arcs) {
    double mid = 0.5 * (a + b);
    bool spacelike = qv(mid) > 0.0;
    double len = tanh_sinh([&](double t) { return std::sqrt(std::abs(qv(t))); }, a, b,
                           levels);
    (spacelike ? space_len : time_len) += len;
  }
  return {space_len, time_len};
}

}  // namespace

cplx mu1_curve_flat(const body::PlanarCurve& curve, const lin::QuadraticSpace& space,
                    bool refined) {
  return mu1_curve_flat_impl(curve, space, refined ? 9 : 7);
}

double mu1_curve_flat_error(const body::PlanarCurve& curve,
                            const lin::QuadraticSpace& space) {
  return std::abs(mu1_curve_flat_impl(curve, space, 9) -
                  mu1_curve_flat_impl(curve, space, 7));
}

double mu_ball_euclidean(int n, int k, double R) {
  if (n < 1 || n > 6) throw std::invalid_argument("mu_ball_euclidean: n must be 1..6");
  if (k < 0 || k > n) throw std::invalid_argument("mu_ball_euclidean: need 0 <= k <= n");
  // vol(B_{R+t}) = sum_j mu_j(B_R) omega_{n-j} t^{n-j}, fitted at n+1 nodes.
  Eigen::MatrixXd a(n + 1, n + 1);
  Eigen::VectorXd b(n + 1);
  for (int row = 0; row <= n; ++row) {
    double t = 0.2 + 0.8 * row / std::max(1, n);  // spread nodes in [0.2, 1]
    for (int j = 0; j <= n; ++j) a(row, j) = omega(n - j) * std::pow(t, n - j);
    b(row) = omega(n) * std::pow(R + t, n);
  }
  Eigen::VectorXd mu = a.colPivHouseholderQr().solve(b);
  return mu(k);
}

std::string coeff_table_csv(int k_max, int n_max) {
  if (k_max > n_max || n_max > 10)
    throw std::invalid_argument("coeff_table_csv: need k_max <= n_max <= 10");
  std::ostringstream os;
  os << "k,n,sigma,j,c_j_real,c_j_imag\n";
  os.precision(17);
  for (double sigma : {-1.0, 0.0, 1.0})
    for (int n = 1; n <= n_max; ++n)
      for (int k = 1; k <= std::min(k_max, n); ++k) {
        auto t = crofton_coeffs(k, n, sigma);
        for (int j = 0; j < t.c.size(); ++j)
          os << k << ',' << n << ',' << sigma << ',' << j << ',' << t.c(j) << ",0\n";
      }
  return os.str();
}

}  // namespace crofton::iv
