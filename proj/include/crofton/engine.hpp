#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "crofton/bodies.hpp"
#include "crofton/grassmannian.hpp"
#include "crofton/intrinsic_volumes.hpp"

namespace crofton::mc {

struct McOptions {
  int workers = 0;  // 0: CROFTON_WORKERS env var, else hardware concurrency
  bool stratified = false;
  int n_strata = 8;
  double low_gap_boost = 4.0;
};

/// One complex Monte Carlo estimate.  Group means (fixed partitions of the
/// sample stream) are retained so sweeps can extrapolate with honest errors.
struct CroftonEstimate {
  cplx value{};
  double stderr_ = 0.0;  // componentwise max
  double se_re = 0.0, se_im = 0.0;
  long samples = 0;
  cplx zeta{};
  double epsilon = 0.0;
  long rejected = 0;
  long flagged = 0;
  std::vector<cplx> group_means;
};

struct SweepResult {
  std::vector<double> epsilons;
  std::vector<CroftonEstimate> estimates;
  cplx extrapolated{};
  double extrapolation_error = 0.0;  // model spread + statistical error
  double extrap_se_re = 0.0;         // statistical error of the extrapolated value
  double extrap_se_im = 0.0;
  double order_used = 1.0;
  bool monotone = true;
};

/// pi * omega_{k-1} * sqrt(sigma^{-1})^k; the sigma = -1 branch is i^k.
cplx normalization_prefactor(int k, double sigma);

/// The constant phase of the flat Crofton density when the full direction
/// Gram matrix is used: i^{q (p+q+1-k)} (the limit of the sphere prefactor
/// one dimension up).
cplx flat_phase(const lin::Signature& sig, int k);

/// Global flat calibration constant: fixed by requiring the Euclidean
/// Cr_k(unit ball) = mu_k(unit ball) under the factorized affine sampler.
double flat_calibration(int n, int k);

/// Crofton estimate on a curved space form at a single zeta in U_C.
CroftonEstimate estimate_sphere(const body::SpaceForm& form, const body::SphereBody& bdy,
                                int k, cplx zeta, long n_samples, uint64_t seed,
                                const McOptions& opts = {});

/// Mean of the density weight alone (chi == 1): the normalization check
/// integral dm_k^zeta = 1.
CroftonEstimate weight_mean(const lin::QuadraticSpace& space, int k, cplx zeta,
                            long n_samples, uint64_t seed, const McOptions& opts = {});

/// Flat-space Crofton estimate at regularization eps.  window_radius <= 0
/// selects 1.5 x the body's circumradius.
CroftonEstimate estimate_flat(const lin::QuadraticSpace& space, const body::FlatBody& bdy,
                              int k, double epsilon, long n_samples,
                              double window_radius, uint64_t seed,
                              const McOptions& opts = {});

/// eps-sweep with common random numbers (one subspace stream, weights vary)
/// and componentwise extrapolation to eps -> 0.
SweepResult epsilon_sweep_sphere(const body::SpaceForm& form, const body::SphereBody& bdy,
                                 int k, const std::vector<double>& eps_list,
                                 long n_samples, uint64_t seed,
                                 const McOptions& opts = {});

SweepResult epsilon_sweep_flat(const lin::QuadraticSpace& space,
                               const body::FlatBody& bdy, int k,
                               const std::vector<double>& eps_list, long n_samples,
                               double window_radius, uint64_t seed,
                               const McOptions& opts = {});

/// Right-hand side of the Crofton formula: sum_j c_j mu_{k+2j}.
/// Throws with the list of absent entries when the mu oracle is incomplete.
cplx rhs_prediction(const iv::MuVector& mu, int k, int n, double sigma);

}  // namespace crofton::mc
