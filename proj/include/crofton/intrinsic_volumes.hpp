#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "crofton/bodies.hpp"
#include "crofton/branched.hpp"
#include "crofton/numeric.hpp"

namespace crofton::iv {

/// Volume of the n-dimensional unit ball.
double omega(int n);

/// Generalized binomial (x choose j) = prod_{i<j} (x - i) / j!.
double binom(double x, int j);

/// Coefficients of the Crofton formula Cr_k = sum_j c_j mu_{k+2j}:
/// c_j = (omega_{k-1} / omega_{k+2j-1}) * binom(-k/2, j) * sigma^j,
/// j = 0 .. floor((n-k)/2).  c_0 = 1 always.
struct CoeffTable {
  int k = 0;
  int n = 0;
  double sigma = 0.0;
  Eigen::VectorXd c;
};

CoeffTable crofton_coeffs(int k, int n, double sigma);

/// Intrinsic-volume vector mu_0..mu_n of a body, with per-entry provenance.
struct MuVector {
  enum class Provenance { ClosedForm, Continued, Calibrated, Absent };

  Eigen::VectorXcd values;
  std::vector<Provenance> prov;

  int n() const { return static_cast<int>(values.size()) - 1; }
  bool has(int k) const {
    return k >= 0 && k <= n() && prov[k] != Provenance::Absent;
  }
};

/// Band of geodesic half-width eps around the equator of the round S^p,
/// p in {2, 3}.  mu_1 of the S^3 band has no elementary form and is absent.
MuVector mu_band_riemannian(int p, double eps_width);

/// Geodesic cap of radius r in round S^n, n in {2, 3}.
MuVector mu_cap_riemannian(int n, double r);

/// The totally geodesic unit (p-1)-sphere template, p in {2, 3}.
MuVector mu_equator_template(int p);

/// Holomorphic continuation of the template intrinsic volumes: substitutes
/// eps(zeta) = arctan(sqrt(xi) tan(theta)), xi = (2 zeta - 1)/(2 zeta + 1),
/// into the Riemannian closed forms, every square root and logarithm
/// branch-continued along the anchor.  s = 0 is the equator (zeta-free),
/// s = 1 the band.  zeta_end may be 0 approached from inside U_C.
MuVector mu_template_continued(int p, int s, double theta, cplx zeta_end,
                               const br::BranchAnchor& anchor);

/// First intrinsic volume of a closed planar curve in a flat space of the
/// given signature: integral of sqrt(|Q(gamma')|) over spacelike arcs plus i
/// times the same over timelike arcs.  `refined` toggles the finer of the two
/// quadrature levels (both agree to ~1e-10 for the supported curves).
cplx mu1_curve_flat(const body::PlanarCurve& curve, const lin::QuadraticSpace& space,
                    bool refined = true);

/// Quadrature agreement |coarse - fine| for the curve integral.
double mu1_curve_flat_error(const body::PlanarCurve& curve,
                            const lin::QuadraticSpace& space);

/// mu_k of the Euclidean ball of radius R in R^n, from a Steiner-polynomial
/// fit at n+1 nodes (n <= 6).
double mu_ball_euclidean(int n, int k, double R);

/// CSV rows (k, n, sigma, j, c_j_real, c_j_imag) for the coefficient table.
std::string coeff_table_csv(int k_max, int n_max);

}  // namespace crofton::iv
