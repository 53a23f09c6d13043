#include "crofton/bodies.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace crofton::body {

namespace {

// Phase-1 simplex feasibility for {A x = b, x >= 0}: minimizes the sum of
// artificial variables with Bland's rule.  Small dense problems only.
bool lp_feasible(Eigen::MatrixXd a, Eigen::VectorXd b, double tol = 1e-10) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  for (int i = 0; i < m; ++i)
    if (b(i) < 0) {
      a.row(i) = -a.row(i);
      b(i) = -b(i);
    }

  // Tableau over [x | s], s artificial basis.
  Eigen::MatrixXd t(m + 1, n + m + 1);
  t.setZero();
  t.block(0, 0, m, n) = a;
  t.block(0, n, m, m).setIdentity();
  t.col(n + m).head(m) = b;
  // Objective row: minimize sum s  ->  reduced costs after pricing out basis.
  for (int j = 0; j < n; ++j) t(m, j) = -a.col(j).sum();
  t(m, n + m) = -b.sum();

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  for (int iter = 0; iter < 2000; ++iter) {
    int piv_col = -1;
    for (int j = 0; j < n + m; ++j)
      if (t(m, j) < -tol) {
        piv_col = j;
        break;  // Bland
      }
    if (piv_col < 0) break;
    int piv_row = -1;
    double best = 0.0;
    for (int i = 0; i < m; ++i)
      if (t(i, piv_col) > tol) {
        double ratio = t(i, n + m) / t(i, piv_col);
        if (piv_row < 0 || ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 && basis[i] < basis[piv_row])) {
          piv_row = i;
          best = ratio;
        }
      }
    if (piv_row < 0) break;  // unbounded below cannot happen in phase 1
    t.row(piv_row) /= t(piv_row, piv_col);
    for (int i = 0; i <= m; ++i)
      if (i != piv_row && std::abs(t(i, piv_col)) > 0)
        t.row(i) -= t(i, piv_col) * t.row(piv_row);
    basis[piv_row] = piv_col;
  }
  return -t(m, n + m) < 1e-8;  // optimum ~ 0 means feasible
}

// E meets the set {G lambda : lambda >= 1 componentwise}?  Every interior
// point of a full-dimensional cone is such a combination after scaling.
bool meets_open_cone(const lin::MatD& g, const lin::MatD& frame) {
  const int d = static_cast<int>(g.rows());
  const int s = static_cast<int>(g.cols());
  const int m = static_cast<int>(frame.cols());
  // G(1 + l') - E(a+ - a-) = 0, l' >= 0  =>  [G, -E, E] x = -G 1
  Eigen::MatrixXd a(d, s + 2 * m);
  a.leftCols(s) = g;
  a.middleCols(s, m) = -frame;
  a.rightCols(m) = frame;
  Eigen::VectorXd b = -g.rowwise().sum();
  return lp_feasible(a, b);
}

// E meets the closed cone nontrivially: {G lambda = E alpha, lambda >= 0,
// sum lambda = 1} feasible.
bool meets_closed_cone(const lin::MatD& g, const lin::MatD& frame) {
  const int d = static_cast<int>(g.rows());
  const int s = static_cast<int>(g.cols());
  const int m = static_cast<int>(frame.cols());
  Eigen::MatrixXd a(d + 1, s + 2 * m);
  a.setZero();
  a.block(0, 0, d, s) = g;
  a.block(0, s, d, m) = -frame;
  a.block(0, s + m, d, m) = frame;
  a.row(d).head(s).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d + 1);
  b(d) = 1.0;
  return lp_feasible(a, b);
}

}  // namespace

ConeBody make_cone_body(const lin::MatD& generators) {
  const int d = static_cast<int>(generators.rows());
  const int s = static_cast<int>(generators.cols());
  if (s < d) throw std::invalid_argument("cone body: too few generators for interior");
  lin::MatD g = generators;
  for (int j = 0; j < s; ++j) {
    double n = g.col(j).norm();
    if (n < 1e-12) throw std::invalid_argument("cone body: zero generator");
    g.col(j) /= n;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu((Eigen::MatrixXd(g)));
  if (lu.rank() < d) throw std::invalid_argument("cone body: empty interior");
  // Pointed iff no nonzero nonnegative combination vanishes.
  Eigen::MatrixXd a(d + 1, s);
  a.topRows(d) = g;
  a.row(d).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d + 1);
  b(d) = 1.0;
  if (lp_feasible(a, b)) throw std::invalid_argument("cone body: cone not pointed");
  return ConeBody{g, true};
}

bool cone_contains(const ConeBody& cone, const lin::VecD& x) {
  const int d = static_cast<int>(cone.generators.rows());
  const int s = static_cast<int>(cone.generators.cols());
  Eigen::MatrixXd a = cone.generators;
  Eigen::VectorXd b = x;
  (void)d;
  (void)s;
  return lp_feasible(a, b);
}

ChiValue euler_convex(const Cap& cap, const gr::Subspace& e, double tol) {
  double proj = (e.frame.transpose() * cap.axis).norm();
  double threshold = std::cos(cap.radius);
  ChiValue out;
  out.chi = proj >= threshold ? 1 : 0;
  out.generic = std::abs(proj - threshold) > tol;
  return out;
}

ChiValue euler_convex(const ConeBody& cone, const gr::Subspace& e, double tol) {
  (void)tol;
  ChiValue out;
  if (meets_open_cone(cone.generators, e.frame)) {
    out.chi = 1;
    return out;
  }
  out.chi = 0;
  if (meets_closed_cone(cone.generators, e.frame)) out.generic = false;  // tangent
  return out;
}

ChiValue euler_band(const Band& band, const gr::Subspace& e, double tol) {
  const int d = e.ambient_dim();
  lin::VecD diag = lin::VecD::Constant(d, -std::tan(band.theta) * std::tan(band.theta));
  diag(band.time_axis) = 1.0;
  lin::MatD restricted = e.frame.transpose() * diag.asDiagonal() * e.frame;
  Eigen::SelfAdjointEigenSolver<lin::MatD> es(restricted, Eigen::EigenvaluesOnly);
  int b = 0, nul = 0;
  double thresh = tol * std::max(1.0, restricted.norm());
  for (double ev : es.eigenvalues()) {
    if (ev < -thresh)
      ++b;
    else if (ev <= thresh)
      ++nul;
  }
  ChiValue out;
  out.generic = (nul == 0);
  // {q <= 0} on the sphere of E retracts onto the sphere of the negative
  // eigenspace: chi = chi(S^{b-1}).
  out.chi = (b == 0) ? 0 : 1 + ((b - 1) % 2 == 0 ? 1 : -1);
  return out;
}

ChiValue euler_equator(const Equator& eq, const gr::Subspace& e, double tol) {
  const int m = e.dim();
  double proj = e.frame.row(eq.axis).norm();
  ChiValue out;
  out.generic = proj > tol;  // E within tolerance of lying inside the hyperplane
  // E cap {x_axis = 0} has dimension m-1 generically; intersection with the
  // sphere is S^{m-2}.
  out.chi = (m % 2 == 0) ? 2 : 0;
  return out;
}

ChiValue chi_sphere(const SphereBody& bdy, const gr::Subspace& e, double tol) {
  return std::visit(
      [&](const auto& b) -> ChiValue {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Cap>)
          return euler_convex(b, e, tol);
        else if constexpr (std::is_same_v<T, ConeBody>)
          return euler_convex(b, e, tol);
        else if constexpr (std::is_same_v<T, Band>)
          return euler_band(b, e, tol);
        else
          return euler_equator(b, e, tol);
      },
      bdy);
}

SphereBody radial_project(const SphereBody& bdy, const SpaceForm& form) {
  // The descriptors are already cone data; validate the cone sits inside the
  // radially parametrized region of the space form.
  if (form.kind == SpaceForm::Kind::Flat)
    throw std::invalid_argument("radial_project: flat space has no radial picture");
  if (auto band = std::get_if<Band>(&bdy)) {
    if (!(band->theta > 0.0 && band->theta < kPi / 4.0))
      throw std::domain_error("radial_project: band angle outside (0, pi/4)");
  }
  if (auto cap = std::get_if<Cap>(&bdy)) {
    if (!(cap->radius > 0.0 && cap->radius < kPi / 2.0))
      throw std::domain_error("radial_project: cap radius outside (0, pi/2)");
  }
  return bdy;
}

SphereBody swap_body(const SphereBody& bdy, const lin::Signature& sig) {
  const int p = sig.p, q = sig.q, d = p + q;
  auto perm = [&](int i) { return i < p ? i + q : i - p; };
  return std::visit(
      [&](const auto& b) -> SphereBody {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Cap>) {
          Cap out = b;
          out.axis = lin::VecD::Zero(d);
          for (int i = 0; i < d; ++i) out.axis(perm(i)) = b.axis(i);
          return out;
        } else if constexpr (std::is_same_v<T, Equator>) {
          return Equator{perm(b.axis)};
        } else if constexpr (std::is_same_v<T, Band>) {
          return Band{b.theta, perm(b.time_axis)};
        } else {
          ConeBody out = b;
          out.generators = lin::MatD::Zero(d, b.generators.cols());
          for (int i = 0; i < d; ++i) out.generators.row(perm(i)) = b.generators.row(i);
          return out;
        }
      },
      bdy);
}

PlanarCurve make_circle(double radius, Eigen::Vector2d center) {
  PlanarCurve c;
  c.point = [=](double t) {
    return Eigen::Vector2d(center.x() + radius * std::cos(t),
                           center.y() + radius * std::sin(t));
  };
  c.velocity = [=](double t) {
    return Eigen::Vector2d(-radius * std::sin(t), radius * std::cos(t));
  };
  c.period = 2.0 * kPi;
  c.circumradius = center.norm() + radius;
  return c;
}

PlanarCurve make_ellipse(double a, double b) {
  PlanarCurve c;
  c.point = [=](double t) { return Eigen::Vector2d(a * std::cos(t), b * std::sin(t)); };
  c.velocity = [=](double t) {
    return Eigen::Vector2d(-a * std::sin(t), b * std::cos(t));
  };
  c.period = 2.0 * kPi;
  c.circumradius = std::max(a, b);
  return c;
}

ChiValue chi_curve_flat(const PlanarCurve& curve, const gr::AffineSubspace& line,
                        double tol, int grid) {
  if (line.direction.dim() != 1 || line.direction.ambient_dim() != 2)
    throw std::invalid_argument("chi_curve_flat: need an affine line in the plane");
  Eigen::Vector2d u = line.direction.frame.col(0);
  Eigen::Vector2d n(-u.y(), u.x());
  double c = n.dot(Eigen::Vector2d(line.offset(0), line.offset(1)));

  auto g = [&](double t) { return n.dot(curve.point(t)) - c; };
  auto dg = [&](double t) { return n.dot(curve.velocity(t)); };

  ChiValue out;
  const double h = curve.period / grid;
  double prev = g(0.0);
  double min_abs = std::abs(prev);
  int count = 0;
  for (int i = 1; i <= grid; ++i) {
    double t1 = i * h;
    double cur = g(t1);
    min_abs = std::min(min_abs, std::abs(cur));
    if ((prev < 0.0) != (cur < 0.0)) {
      // bisect to the root
      double lo = (i - 1) * h, hi = t1, flo = prev;
      for (int it = 0; it < 70; ++it) {
        double mid = 0.5 * (lo + hi), fm = g(mid);
        if ((flo < 0.0) != (fm < 0.0))
          hi = mid;
        else {
          lo = mid;
          flo = fm;
        }
      }
      double root = 0.5 * (lo + hi);
      if (std::abs(dg(root)) < tol) out.generic = false;
      ++count;
    }
    prev = cur;
  }
  // A grazing line can pass near the curve without a sign change.
  if (min_abs < tol && out.generic) {
    bool near_counted = false;
    (void)near_counted;
    out.generic = count > 0 ? out.generic : false;
  }
  out.chi = count;
  return out;
}

ChiValue chi_flat(const FlatBody& bdy, const gr::AffineSubspace& plane, double tol) {
  if (auto ball = std::get_if<FlatBall>(&bdy)) {
    // Distance from the center to the affine plane, in the normal complement.
    lin::VecD diff = ball->center - plane.offset;
    lin::VecD tangential = plane.direction.frame.transpose() * diff;
    double dist2 = diff.squaredNorm() - tangential.squaredNorm();
    double dist = std::sqrt(std::max(0.0, dist2));
    ChiValue out;
    out.chi = dist <= ball->radius ? 1 : 0;
    out.generic = std::abs(dist - ball->radius) > tol;
    return out;
  }
  return chi_curve_flat(std::get<PlanarCurve>(bdy), plane, tol);
}

double circumradius(const FlatBody& bdy) {
  if (auto ball = std::get_if<FlatBall>(&bdy)) return ball->center.norm() + ball->radius;
  return std::get<PlanarCurve>(bdy).circumradius;
}

}  // namespace crofton::body
