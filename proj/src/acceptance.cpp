#include "crofton/acceptance.hpp"

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "crofton/engine.hpp"
#include "crofton/oracles.hpp"

namespace crofton::acceptance {

namespace {

using body::SpaceForm;
using lin::Signature;

struct Ctx {
  int workers = 0;
  std::vector<CheckResult> results;

  void check(const std::string& id, const std::string& name,
             const std::function<bool(std::ostringstream&)>& fn) {
    CheckResult r;
    r.id = id;
    r.name = name;
    std::ostringstream detail;
    auto t0 = std::chrono::steady_clock::now();
    try {
      r.pass = fn(detail);
    } catch (const std::exception& e) {
      r.pass = false;
      detail << "exception: " << e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    r.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    r.detail = detail.str();
    results.push_back(std::move(r));
  }

  mc::McOptions opts(bool stratified = false) const {
    mc::McOptions o;
    o.workers = workers;
    o.stratified = stratified;
    return o;
  }
};

std::string fmt(cplx z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

// ---------------------------------------------------------------------------
// 1. Coefficient reproduction
// ---------------------------------------------------------------------------
void check_coefficients(Ctx& ctx) {
  ctx.check("A1", "coefficient table matches the spherical Crofton formula", [&](auto& out) {
    bool ok = true;
    double worst = 0.0;
    // Spherical route: integral form coefficients 1/(pi omega_{k+2j-1})
    // binom(-k/2, j), rescaled by pi omega_{k-1}.
    for (int n = 1; n <= 10 && ok; ++n)
      for (int k = 1; k <= n && ok; ++k) {
        auto table = iv::crofton_coeffs(k, n, 1.0);
        for (int j = 0; j < table.c.size(); ++j) {
          double spherical = 1.0 / (kPi * iv::omega(k + 2 * j - 1)) * iv::binom(-0.5 * k, j);
          double rescaled = kPi * iv::omega(k - 1) * spherical;
          worst = std::max(worst, std::abs(table.c(j) - rescaled));
        }
        for (double sigma : {-1.0, 0.0, 1.0}) {
          auto t2 = iv::crofton_coeffs(k, n, sigma);
          worst = std::max(worst, std::abs(t2.c(0) - 1.0));
          if (sigma == 0.0)
            for (int j = 1; j < t2.c.size(); ++j)
              worst = std::max(worst, std::abs(t2.c(j)));
        }
      }
    std::string csv = iv::coeff_table_csv(6, 8);
    ok = worst <= 1e-12 && csv.size() > 100;
    out << "max coefficient deviation " << worst;
    return ok;
  });
}

// ---------------------------------------------------------------------------
// 2. Normalization: MC mean of the density weight is 1
// ---------------------------------------------------------------------------
void check_normalization(Ctx& ctx) {
  ctx.check("A2", "weight normalization: mean dm_k^zeta = 1 over the grid", [&](auto& out) {
    const std::vector<std::tuple<int, int, int>> combos = {
        {2, 0, 1}, {1, 1, 1}, {2, 1, 1}, {2, 1, 2}, {3, 1, 2}};
    const std::vector<cplx> zetas = {{1.0, 0.0}, {1.0, 1.0}, {0.0, 0.1}};
    bool ok = true;
    double worst_dev = 0.0;
    for (auto [p, q, k] : combos) {
      auto space = lin::standard_form({p, q});
      for (size_t zi = 0; zi < zetas.size(); ++zi) {
        uint64_t seed = 1000 + 10 * p + 7 * q + 3 * k + zi;
        auto est = mc::weight_mean(space, k, zetas[zi], 1000000, seed, ctx.opts());
        double tol = std::max(5.0 * est.stderr_, 1e-9);
        double dev = std::abs(est.value - cplx(1.0, 0.0));
        worst_dev = std::max(worst_dev, est.stderr_ > 1e-12 ? dev / est.stderr_ : 0.0);
        if (dev > tol) {
          out << "(" << p << "," << q << "," << k << ") zeta=" << fmt(zetas[zi])
              << ": mean " << fmt(est.value) << " dev " << dev << " > " << tol << "; ";
          ok = false;
        }
      }
    }
    out << "worst deviation " << worst_dev << " stderr units";
    return ok;
  });
}

// ---------------------------------------------------------------------------
// 3 & 4. Round S^2 cap and band
// ---------------------------------------------------------------------------
void check_riemannian_sphere(Ctx& ctx) {
  ctx.check("A3", "round S^2 cap r=pi/3, k=1: Cr = pi sin(pi/3)", [&](auto& out) {
    body::Cap cap;
    cap.axis = lin::VecD::Zero(3);
    cap.axis(2) = 1.0;
    cap.radius = kPi / 3.0;
    auto est = mc::estimate_sphere(body::pseudosphere(2, 0), cap, 1, cplx(1.0, 0.0),
                                   1000000, 42, ctx.opts());
    double target = kPi * std::sin(kPi / 3.0);
    double err = std::abs(est.value - cplx(target, 0.0));
    out << "estimate " << fmt(est.value) << " target " << target << " err " << err
        << " stderr " << est.stderr_;
    return err <= 3.0 * est.stderr_ && err <= 0.01 * target;
  });

  ctx.check("A4", "round S^2 band eps=pi/6: k=1 and k=2", [&](auto& out) {
    body::Band band{kPi / 6.0, 2};
    auto form = body::pseudosphere(2, 0);
    auto est1 = mc::estimate_sphere(form, band, 1, cplx(1.0, 0.0), 1000000, 43,
                                    ctx.opts());
    double target1 = 2.0 * kPi * std::cos(kPi / 6.0);
    double err1 = std::abs(est1.value - cplx(target1, 0.0));
    auto est2 = mc::estimate_sphere(form, band, 2, cplx(1.0, 0.0), 1000000, 44,
                                    ctx.opts());
    auto mu = iv::mu_band_riemannian(2, kPi / 6.0);
    double target2 = mc::rhs_prediction(mu, 2, 2, 1.0).real();  // = mu_2
    double err2 = std::abs(est2.value - cplx(target2, 0.0));
    out << "k=1: " << fmt(est1.value) << " vs " << target1 << " (err " << err1
        << ", se " << est1.stderr_ << "); k=2: " << fmt(est2.value) << " vs "
        << target2 << " (err " << err2 << ", se " << est2.stderr_ << ")";
    return err1 <= 3.0 * est1.stderr_ && err2 <= 3.0 * est2.stderr_;
  });
}

// ---------------------------------------------------------------------------
// 5 & 6. De Sitter band sweeps
// ---------------------------------------------------------------------------
const std::vector<double> kSweepEps = {0.2, 0.1, 0.05, 0.025};

void check_desitter_band(Ctx& ctx) {
  const double theta = 0.5;
  const double rho = std::atanh(std::tan(theta));

  ctx.check("A5", "de Sitter S^{1,1} band theta=0.5, k=1 sweep -> 2 pi cosh(rho)",
            [&](auto& out) {
    body::Band band{theta, 2};
    auto sweep = mc::epsilon_sweep_sphere(body::pseudosphere(1, 1), band, 1, kSweepEps,
                                          4000000, 2024, ctx.opts(true));
    double target = 2.0 * kPi * std::cosh(rho);
    double err = std::abs(sweep.extrapolated - cplx(target, 0.0));
    out << "extrapolated " << fmt(sweep.extrapolated) << " target " << target
        << " rel err " << err / target << " order " << sweep.order_used
        << " im se " << sweep.extrap_se_im;
    bool im_ok = std::abs(sweep.extrapolated.imag()) <= 2.0 * sweep.extrap_se_im + 1e-9;
    return err <= 0.02 * target && im_ok;
  });

  ctx.check("A6", "de Sitter S^{1,1} band theta=0.5, k=2 sweep -> i 4 pi sinh(rho)",
            [&](auto& out) {
    body::Band band{theta, 2};
    auto sweep = mc::epsilon_sweep_sphere(body::pseudosphere(1, 1), band, 2, kSweepEps,
                                          4000000, 2025, ctx.opts(true));
    cplx target(0.0, 4.0 * kPi * std::sinh(rho));
    double err = std::abs(sweep.extrapolated - target);
    out << "extrapolated " << fmt(sweep.extrapolated) << " target " << fmt(target)
        << " rel err " << err / std::abs(target) << " re se " << sweep.extrap_se_re;
    bool re_ok =
        std::abs(sweep.extrapolated.real()) <= 2.0 * sweep.extrap_se_re + 1e-9;
    return err <= 0.02 * std::abs(target) && re_ok;
  });

  ctx.check("A7", "anti-de Sitter via the swap map: H-side = i^k conj(S-side)",
            [&](auto& out) {
    bool ok = true;
    for (int k = 1; k <= 2; ++k) {
      body::Band band{theta, 2};
      auto s_side = mc::epsilon_sweep_sphere(body::pseudosphere(1, 1), band, k,
                                             kSweepEps, 1000000, 77, ctx.opts());
      // j : R^{2,1} -> R^{1,2} maps S^{1,1} to H^{1,1} and the band cone along.
      auto swapped = body::swap_body(band, {2, 1});
      auto h_side = mc::epsilon_sweep_sphere(body::pseudohyperbolic(1, 1), swapped, k,
                                             kSweepEps, 1000000, 78, ctx.opts());
      cplx ik = k % 2 ? cplx(0, 1) : cplx(-1, 0);
      cplx expect = ik * std::conj(s_side.extrapolated);
      cplx diff = h_side.extrapolated - expect;
      // conj and i^k swap/rotate the components; bound each by the combined se
      double se_re = std::hypot(h_side.extrap_se_re,
                                k % 2 ? s_side.extrap_se_im : s_side.extrap_se_re);
      double se_im = std::hypot(h_side.extrap_se_im,
                                k % 2 ? s_side.extrap_se_re : s_side.extrap_se_im);
      double budget_re = 2.0 * se_re + s_side.extrapolation_error +
                         h_side.extrapolation_error;
      double budget_im = 2.0 * se_im + s_side.extrapolation_error +
                         h_side.extrapolation_error;
      out << "k=" << k << ": H " << fmt(h_side.extrapolated) << " vs i^k conj(S) "
          << fmt(expect) << " diff (" << std::abs(diff.real()) << ", "
          << std::abs(diff.imag()) << ") budget (" << budget_re << ", " << budget_im
          << "); ";
      if (std::abs(diff.real()) > budget_re || std::abs(diff.imag()) > budget_im)
        ok = false;
    }
    return ok;
  });
}

// ---------------------------------------------------------------------------
// 8 & 9. Flat space
// ---------------------------------------------------------------------------
void check_flat(Ctx& ctx) {
  ctx.check("A8", "flat R^2 unit circle, k=1: calibrated estimate = 2 pi", [&](auto& out) {
    auto space = lin::standard_form({2, 0});
    body::FlatBody circle = body::make_circle();
    auto est = mc::estimate_flat(space, circle, 1, 0.001, 2000000, 0.0, 321, ctx.opts());
    double err = std::abs(est.value - cplx(2.0 * kPi, 0.0));
    out << "estimate " << fmt(est.value) << " err " << err << " stderr " << est.stderr_;
    return err <= 0.01 * 2.0 * kPi;
  });

  ctx.check("A9", "flat R^{1,1} unit circle, k=1 sweep = quadrature oracle", [&](auto& out) {
    auto space = lin::standard_form({1, 1});
    body::PlanarCurve circle = body::make_circle();
    double oracle_err = iv::mu1_curve_flat_error(circle, space);
    cplx target = iv::mu1_curve_flat(circle, space);
    body::FlatBody bdy = circle;
    auto sweep = mc::epsilon_sweep_flat(space, bdy, 1, {0.1, 0.05, 0.025, 0.0125},
                                        4000000, 0.0, 654, ctx.opts());
    double err = std::abs(sweep.extrapolated - target);
    double symm = std::abs(sweep.extrapolated.real() - sweep.extrapolated.imag());
    double symm_budget = 2.0 * std::hypot(sweep.extrap_se_re, sweep.extrap_se_im) +
                         sweep.extrapolation_error;
    out << "extrapolated " << fmt(sweep.extrapolated) << " oracle " << fmt(target)
        << " (oracle self-agreement " << oracle_err << ") rel err "
        << err / std::abs(target) << " |Re-Im| " << symm;
    return oracle_err <= 1e-8 && err <= 0.02 * std::abs(target) && symm <= symm_budget;
  });
}

// ---------------------------------------------------------------------------
// 10. S^3 cap, two-term Crofton formula
// ---------------------------------------------------------------------------
void check_s3_cap(Ctx& ctx) {
  ctx.check("A10", "S^3 cap r=pi/3, k=1: estimate = mu_1 - mu_3/(2 pi)", [&](auto& out) {
    const double r = kPi / 3.0;
    body::Cap cap;
    cap.axis = lin::VecD::Zero(4);
    cap.axis(3) = 1.0;
    cap.radius = r;
    auto est = mc::estimate_sphere(body::pseudosphere(3, 0), cap, 1, cplx(1.0, 0.0),
                                   2000000, 99, ctx.opts());
    auto mu = iv::mu_cap_riemannian(3, r);
    cplx target = mc::rhs_prediction(mu, 1, 3, 1.0);
    double err = std::abs(est.value - target);
    out << "estimate " << fmt(est.value) << " target " << fmt(target) << " rel err "
        << err / std::abs(target) << " stderr " << est.stderr_;
    return err <= 0.02 * std::abs(target);
  });
}

// ---------------------------------------------------------------------------
// 11. Property suites
// ---------------------------------------------------------------------------
void check_properties(Ctx& ctx) {
  ctx.check("A11a", "f_lambda reflection identity", [&](auto& out) {
    // The bar in f_lambda(-X) = e^{i pi r lambda} conj(f_lambda(X)) is the
    // conjugate-analytic family: conj(f_{conj lambda}(X)).  At real lambda
    // this is the plain complex conjugate.
    rng::Stream stream(7771, 0);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      int r = 1 + static_cast<int>(stream.uniform() * 4);
      Eigen::MatrixXd x(r, r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j <= i; ++j) x(i, j) = x(j, i) = stream.gauss();
      auto [pos, neg, nul] = lin::signature_of(x);
      if (nul > 0) continue;
      cplx lambda(stream.uniform(-5, 5), stream.uniform(-5, 5));
      cplx lhs = br::f_lambda(-x, lambda);
      cplx rhs = std::exp(cplx(0, kPi) * static_cast<double>(r) * lambda) *
                 std::conj(br::f_lambda(x, std::conj(lambda)));
      worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
      double lr = stream.uniform(-5, 5);
      cplx lhs_r = br::f_lambda(-x, lr);
      cplx rhs_r = std::exp(cplx(0, kPi * r * lr)) * std::conj(br::f_lambda(x, lr));
      worst = std::max(worst, std::abs(lhs_r - rhs_r) / std::abs(rhs_r));
    }
    out << "max relative deviation " << worst;
    return worst <= 1e-10;
  });

  ctx.check("A11b", "Siegel half-space eigenvalue arguments in (0, pi)", [&](auto& out) {
    rng::Stream stream(7772, 0);
    double lo = kPi, hi = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      int r = 1 + static_cast<int>(stream.uniform() * 5);
      Eigen::MatrixXd x(r, r), a(r, r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j <= i; ++j) x(i, j) = x(j, i) = stream.gauss();
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) a(i, j) = stream.gauss();
      Eigen::MatrixXd y = a * a.transpose() + 1e-6 * Eigen::MatrixXd::Identity(r, r);
      Eigen::MatrixXcd z = x.cast<cplx>() + cplx(0, 1) * y.cast<cplx>();
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(z, false);
      for (int i = 0; i < r; ++i) {
        double arg = std::arg(es.eigenvalues()(i));
        lo = std::min(lo, arg);
        hi = std::max(hi, arg);
      }
    }
    out << "eigenvalue argument range [" << lo << ", " << hi << "]";
    return lo > 0.0 && hi < kPi;
  });

  ctx.check("A11c", "Siegel growth bound on the cone", [&](auto& out) {
    rng::Stream stream(7773, 0);
    int violations = 0;
    for (int trial = 0; trial < 10000; ++trial) {
      int r = 1 + static_cast<int>(stream.uniform() * 3);
      Eigen::MatrixXd x(r, r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j <= i; ++j) x(i, j) = x(j, i) = 3.0 * stream.gauss();
      // Y with spectral condition number <= 10
      Eigen::MatrixXd g(r, r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) g(i, j) = stream.gauss();
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
      Eigen::MatrixXd qmat = qr.householderQ();
      double scale = std::exp(stream.uniform(-2.0, 2.0));
      Eigen::VectorXd evals(r);
      for (int i = 0; i < r; ++i) evals(i) = scale * stream.uniform(0.1, 1.0);
      Eigen::MatrixXd y = qmat * evals.asDiagonal() * qmat.transpose();
      cplx lambda(stream.uniform(-3.0, -0.1), stream.uniform(-2, 2));

      Eigen::MatrixXcd z = x.cast<cplx>() + cplx(0, 1) * y.cast<cplx>();
      double val = std::abs(br::siegel_det_pow(z, lambda));
      double c_cone = std::pow(10.0, r - 1);  // ||Y||^r / det Y on the cone
      double det_y = y.determinant();
      double bound = std::pow(c_cone, -lambda.real()) *
                     std::exp(kPi * r * std::abs(lambda.imag())) *
                     std::pow(det_y, lambda.real());
      if (val > bound * (1.0 + 1e-9)) ++violations;
    }
    out << violations << " violations of 10000";
    return violations == 0;
  });

  ctx.check("A11d", "Muro vanishing identities d^{2j+2}(a^{(j)}) = 0", [&](auto& out) {
    double worst = 0.0;
    for (int r = 1; r <= 4; ++r)
      for (int j = 0; j <= 2; ++j) {
        for (int m = 1; m <= 4; ++m) {
          worst = std::max(worst, br::analyticity_check(-m, j, r));
          worst = std::max(worst, br::analyticity_check(-(2.0 * m + 1.0) / 2.0, j, r));
        }
      }
    out << "max |d entry| " << worst;
    return worst <= 1e-10;
  });

  ctx.check("A11e", "branch continuation path independence", [&](auto& out) {
    rng::Stream stream(7774, 0);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      cplx end(stream.uniform(-2, 2), stream.uniform(0.05, 2.0));
      br::BranchAnchor direct = br::BranchAnchor::to(end);
      br::BranchAnchor detour({cplx(1, 0), cplx(2.0, 2.0), cplx(-1.0, 2.5), end});
      auto f = [](cplx z) { return (2.0 * z - 1.0) / (2.0 * z + 1.0); };
      cplx a = br::branch_continue(direct, f).pow(0.5);
      cplx b = br::branch_continue(detour, f).pow(0.5);
      worst = std::max(worst, std::abs(a - b));
    }
    out << "max sqrt mismatch " << worst;
    return worst <= 1e-10;
  });

  ctx.check("A11f", "pointwise boundary value convergence order", [&](auto& out) {
    rng::Stream stream(7775, 0);
    bool ok = true;
    for (int trial = 0; trial < 20; ++trial) {
      int r = 1 + static_cast<int>(stream.uniform() * 3);
      Eigen::MatrixXd x(r, r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j <= i; ++j) x(i, j) = x(j, i) = stream.gauss();
      auto [pos, neg, nul] = lin::signature_of(x);
      if (nul > 0) continue;
      cplx lambda(-0.5 * (r + 1), 0.0);
      cplx exact = br::f_lambda(x, lambda);
      auto err = [&](double eps) {
        Eigen::MatrixXcd z =
            x.cast<cplx>() + cplx(0, eps) * Eigen::MatrixXcd::Identity(r, r);
        return std::abs(br::siegel_det_pow(z, lambda) - exact);
      };
      double e1 = err(1e-2), e2 = err(5e-3);
      if (e2 > 0.75 * e1 + 1e-12) ok = false;
    }
    out << (ok ? "error at eps/2 below 0.75x error at eps" : "slope violation");
    return ok;
  });

  ctx.check("A11g", "nullity gap: P(gap < delta) has log-log slope 1", [&](auto& out) {
    auto space = lin::standard_form({2, 1});
    rng::Stream stream(7776, 0);
    const long n = 1000000;
    std::vector<double> gaps(n);
    for (long i = 0; i < n; ++i) {
      auto e = gr::sample_linear(3, 2, stream);
      gaps[i] = gr::nullity_gap(e, space);
    }
    std::sort(gaps.begin(), gaps.end());
    std::vector<double> logd, logp;
    for (double delta = 1e-4; delta <= 0.1 + 1e-12; delta *= std::pow(10.0, 0.25)) {
      auto it = std::lower_bound(gaps.begin(), gaps.end(), delta);
      double p = static_cast<double>(it - gaps.begin()) / n;
      if (p <= 0.0) continue;
      logd.push_back(std::log(delta));
      logp.push_back(std::log(p));
    }
    double mx = 0, my = 0;
    for (size_t i = 0; i < logd.size(); ++i) {
      mx += logd[i];
      my += logp[i];
    }
    mx /= logd.size();
    my /= logp.size();
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < logd.size(); ++i) {
      sxy += (logd[i] - mx) * (logp[i] - my);
      sxx += (logd[i] - mx) * (logd[i] - mx);
    }
    double slope = sxy / sxx;
    out << "slope " << slope;
    return std::abs(slope - 1.0) <= 0.2;
  });

  ctx.check("A11h", "chi locally constant under frame perturbations", [&](auto& out) {
    rng::Stream stream(7777, 0);
    body::Band band{0.5, 2};
    body::Cap cap;
    cap.axis = lin::VecD::Zero(3);
    cap.axis(2) = 1.0;
    cap.radius = kPi / 3.0;
    int checked = 0, stable = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      auto e = gr::sample_linear(3, 2, stream);
      for (const body::SphereBody& bdy :
           {body::SphereBody(band), body::SphereBody(cap)}) {
        auto base = body::chi_sphere(bdy, e);
        if (!base.generic) continue;
        gr::Subspace pert = e;
        for (int i = 0; i < pert.frame.rows(); ++i)
          for (int j = 0; j < pert.frame.cols(); ++j)
            pert.frame(i, j) += 1e-6 * stream.gauss();
        // re-orthonormalize
        Eigen::HouseholderQR<Eigen::MatrixXd> qr = Eigen::MatrixXd(pert.frame).householderQr();
        Eigen::MatrixXd qmat = qr.householderQ();
        pert.frame = qmat.leftCols(pert.frame.cols());
        auto moved = body::chi_sphere(bdy, pert);
        ++checked;
        if (moved.chi == base.chi) ++stable;
      }
    }
    out << stable << "/" << checked << " stable";
    return checked > 0 && stable == checked;
  });

  ctx.check("A11i", "band chi rule vs brute-force counting (p <= 3)", [&](auto& out) {
    rng::Stream stream(7778, 0);
    long agree = 0, total = 0, skipped = 0;
    for (int p : {2, 3}) {
      body::Band band{0.4, p};
      const int d = p + 1;
      for (int k = 1; k <= std::min(3, d - 1); ++k) {
        int m = d - k;
        if (m > 3) continue;
        for (int trial = 0; trial < 1000; ++trial) {
          auto e = gr::sample_linear(d, m, stream);
          auto rule = body::euler_band(band, e);
          if (!rule.generic) {
            ++skipped;
            continue;
          }
          int brute = oracle::chi_brute_sphere(band, e);
          ++total;
          if (brute == rule.chi) ++agree;
        }
      }
    }
    out << agree << "/" << total << " exact (skipped " << skipped << " non-generic)";
    return total > 0 && agree == total && skipped < total / 100;
  });

  ctx.check("A11j", "restriction: e* m_k = m_k (uniform and weighted moments)",
            [&](auto& out) {
    // Real zeta: pushforward of the uniform measure under E -> E cap U is
    // uniform on the smaller Grassmannian (line angles uniform on [0, pi)).
    rng::Stream stream(7779, 0);
    std::vector<double> angles;
    for (int i = 0; i < 20000; ++i) {
      auto e = gr::sample_linear(3, 2, stream);
      auto f = gr::intersect(e, {0, 1});
      if (!f) continue;
      double ang = std::atan2((*f).frame(1, 0), (*f).frame(0, 0));
      if (ang < 0) ang += kPi;
      if (ang >= kPi) ang -= kPi;
      angles.push_back(ang);
    }
    double p_ks = oracle::ks_p_value(angles, [](double x) { return x / kPi; });

    // zeta = i eps: weighted moments of E cap U match the small-space weights.
    bool moments_ok = true;
    auto big = lin::standard_form({2, 1});
    auto small = lin::standard_form({1, 1});
    std::vector<std::function<double(double)>> tests = {
        [](double) { return 1.0; },
        [](double a) { return std::cos(2 * a); },
        [](double a) { return std::sin(2 * a); },
        [](double a) { return std::cos(4 * a); },
        [](double a) { return std::abs(std::cos(a)); }};
    for (double eps : {0.1, 0.05}) {
      cplx zeta(0.0, eps);
      const long n = 200000;
      std::vector<std::vector<cplx>> big_vals(tests.size()), small_vals(tests.size());
      rng::Stream sb(7780, 0), ss(7781, 0);
      for (long i = 0; i < n; ++i) {
        auto e = gr::sample_linear(3, 2, sb);
        // restriction to the (1,1) coordinate subspace span(e1, e3)
        auto f = gr::intersect(e, {0, 2});
        if (!f) continue;
        lin::VecD mu = gr::x0_eigenvalues(e, big);
        cplx w = gr::weight_from_eigs(mu, big.sig, zeta);
        double ang = std::atan2((*f).frame(2, 0), (*f).frame(0, 0));
        for (size_t t = 0; t < tests.size(); ++t)
          big_vals[t].push_back(w * tests[t](ang));

        auto fs = gr::sample_linear(2, 1, ss);
        lin::VecD mus = gr::x0_eigenvalues(fs, small);
        cplx ws = gr::weight_from_eigs(mus, small.sig, zeta);
        double angs = std::atan2(fs.frame(1, 0), fs.frame(0, 0));
        for (size_t t = 0; t < tests.size(); ++t)
          small_vals[t].push_back(ws * tests[t](angs));
      }
      for (size_t t = 0; t < tests.size(); ++t) {
        auto stats = [](const std::vector<cplx>& v) {
          cplx mean{};
          for (cplx x : v) mean += x;
          mean /= static_cast<double>(v.size());
          double var = 0;
          for (cplx x : v) var += std::norm(x - mean);
          return std::pair<cplx, double>(mean,
                                         std::sqrt(var / v.size() / v.size()));
        };
        auto [mb, seb] = stats(big_vals[t]);
        auto [msm, ses] = stats(small_vals[t]);
        if (std::abs(mb - msm) > 3.0 * std::hypot(seb, ses) + 1e-9) moments_ok = false;
      }
    }
    out << "KS p " << p_ks << (moments_ok ? ", moments match" : ", moment mismatch");
    return p_ks > 0.01 && moments_ok;
  });

  ctx.check("A11k", "holomorphy: Cauchy mean reproduces the center value", [&](auto& out) {
    const cplx center(0.3, 0.3);
    const double radius = 0.05;
    const int n_pts = 32;
    auto eval = [&](cplx z) {
      auto anchor = br::BranchAnchor::to(z);
      return iv::mu_template_continued(2, 1, 0.5, z, anchor);
    };
    auto f0 = eval(center);
    cplx mean1{}, mean2{};
    for (int i = 0; i < n_pts; ++i) {
      cplx z = center + radius * std::exp(cplx(0, 2.0 * kPi * i / n_pts));
      auto f = eval(z);
      mean1 += f.values(1);
      mean2 += f.values(2);
    }
    mean1 /= static_cast<double>(n_pts);
    mean2 /= static_cast<double>(n_pts);
    double dev = std::max(std::abs(mean1 - f0.values(1)), std::abs(mean2 - f0.values(2)));
    out << "Cauchy deviation " << dev;
    return dev <= 1e-8;
  });
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& suite, int workers) {
  Ctx ctx;
  ctx.workers = workers;
  bool all = suite == "all";
  if (all || suite == "coeffs") check_coefficients(ctx);
  if (all || suite == "normalization") check_normalization(ctx);
  if (all || suite == "riemannian") {
    check_riemannian_sphere(ctx);
    check_s3_cap(ctx);
  }
  if (all || suite == "desitter") check_desitter_band(ctx);
  if (all || suite == "flat") check_flat(ctx);
  if (all || suite == "properties") check_properties(ctx);
  if (ctx.results.empty())
    throw std::invalid_argument("unknown suite: " + suite +
                                " (coeffs|normalization|riemannian|desitter|flat|"
                                "properties|all)");
  return ctx.results;
}

}  // namespace crofton::acceptance
