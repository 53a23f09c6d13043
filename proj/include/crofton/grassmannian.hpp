#pragma once

#include <optional>

#include "crofton/branched.hpp"
#include "crofton/pseudo_linalg.hpp"
#include "crofton/rng.hpp"

namespace crofton::gr {

/// Linear subspace carried as a P0-orthonormal frame (columns).
struct Subspace {
  lin::MatD frame;  // d x m, frame^T frame = I

  int ambient_dim() const { return static_cast<int>(frame.rows()); }
  int dim() const { return static_cast<int>(frame.cols()); }
};

/// Affine subspace w + F with the offset P0-orthogonal to the direction.
struct AffineSubspace {
  Subspace direction;
  lin::VecD offset;
};

/// Radon-Nikodym density of m_k^zeta against the uniform probability measure,
/// with the branched factors kept for audit.
struct DensityWeight {
  cplx value;
  cplx zeta;
  int k = 0;
  cplx log_pref_plus;   // log (2*zeta+1)^{p(n+1-k)/2}
  cplx log_pref_minus;  // log (2*zeta-1)^{q(n+1-k)/2}
  cplx log_det;         // log det(X_zeta)^{-(n+1)/2}
};

/// Uniform (O(P0)-invariant) subspace: orthonormalized standard Gaussian frame.
Subspace sample_linear(int d, int m, rng::Stream& stream);

/// Gram matrix of Q_zeta on E in the frame basis: X0(E) + 2*zeta*I.
lin::MatC gram_zeta(const Subspace& e, const lin::QuadraticSpace& space, cplx zeta);

/// Gram matrix of Q itself (real part of the family).
lin::MatD gram_q(const Subspace& e, const lin::QuadraticSpace& space);

/// Eigenvalues of X0(E); all lie in [-1, 1].
lin::VecD x0_eigenvalues(const Subspace& e, const lin::QuadraticSpace& space);

/// Density of m_k^zeta at E from precomputed eigenvalues of X0(E).
/// Fast path used by the Monte Carlo engine; equals the branch continuation
/// along any anchor path because every factor stays in the closed upper half
/// plane on U_C.
cplx weight_from_eigs(const lin::VecD& mu, const lin::Signature& sig, cplx zeta);

/// Full density with audit trail.  nullopt on a singular sample (real zeta
/// only; the caller resamples or reports).
std::optional<DensityWeight> weight_m_zeta(const Subspace& e,
                                           const lin::QuadraticSpace& space, int k,
                                           cplx zeta,
                                           const br::BranchAnchor& anchor);

/// Affine sampler: uniform direction, offset uniform in the radius-R ball of
/// the P0-orthogonal complement.  Averaging f * lebesgue_factor estimates the
/// affine integral up to the global flat calibration constant.
struct AffineSample {
  AffineSubspace plane;
  double lebesgue_factor;  // vol_k of the offset ball
};
AffineSample sample_affine(const lin::QuadraticSpace& space, int k, double window_radius,
                           rng::Stream& stream);

/// Flat density: the eps-regularization of f_{-(p+q+1)/2} at the direction
/// Gram matrix.  Translation invariant; no (2*zeta+-1) prefactors.
cplx weight_flat(const AffineSubspace& f, const lin::QuadraticSpace& space, int k,
                 double epsilon);

/// Same from precomputed direction eigenvalues.
cplx weight_flat_from_eigs(const lin::VecD& mu, int ambient_dim, double epsilon);

/// Orthonormal frame of E intersected with the coordinate subspace spanned by
/// the given axes.  nullopt when the intersection is non-generic (rank drop).
std::optional<Subspace> intersect(const Subspace& e, const std::vector<int>& u_axes,
                                  double tol = 1e-9);

/// Smallest |eigenvalue| of X0(E); zero exactly on the degenerate stratum.
double nullity_gap(const Subspace& e, const lin::QuadraticSpace& space);

/// Orthonormal basis of the P0-orthogonal complement of E.
lin::MatD orthogonal_complement(const Subspace& e);

}  // namespace crofton::gr
