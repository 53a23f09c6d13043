#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "crofton/numeric.hpp"
#include "crofton/pseudo_linalg.hpp"

namespace crofton::br {

/// A declared continuation path in U_C starting at the real anchor zeta = 1.
/// Every fractional power in the toolkit is continued along such a path; the
/// anchor is where all tracked scalars are positive real.
class BranchAnchor {
 public:
  /// Path through the given vertices; the first must be 1 and all vertices
  /// must lie in U_C.
  explicit BranchAnchor(std::vector<cplx> vertices, double max_step_arg = kPi / 8.0);

  /// Default path to an endpoint: 1 -> 1+i -> end for endpoints with
  /// Im > 0, and the straight segment for real endpoints > 1/2.
  static BranchAnchor to(cplx end, double max_step_arg = kPi / 8.0);

  const std::vector<cplx>& vertices() const { return vertices_; }
  double max_step_arg() const { return max_step_arg_; }
  cplx endpoint() const { return vertices_.back(); }

 private:
  std::vector<cplx> vertices_;
  double max_step_arg_;
};

/// A nonzero complex value together with its continuously accumulated
/// argument, so fractional powers are single-valued.
struct BranchedScalar {
  cplx value;
  double total_arg = 0.0;

  cplx log() const { return {std::log(std::abs(value)), total_arg}; }
  cplx pow(cplx lambda) const { return std::exp(lambda * log()); }
  cplx sqrt() const { return pow(0.5); }
};

/// Continue f along the anchor path, accumulating the argument step by step.
/// Each step's principal-branch increment must stay below max_step_arg; steps
/// are bisected adaptively until that holds.  Throws if |f| comes within
/// vanish_tol of zero anywhere on the refined path (branch ambiguity; the
/// caller must reroute inside U_C).
BranchedScalar branch_continue(const BranchAnchor& anchor,
                               const std::function<cplx(cplx)>& f,
                               double vanish_tol = 1e-12);

/// Walks an anchor path once while several dependent scalars are tracked.
/// Used where one continued quantity feeds another (sqrt(xi) inside arctan).
class BranchTracker {
 public:
  explicit BranchTracker(cplx start_value);

  /// Advance to the value at the next path point; the principal increment
  /// must be below the supplied bound (caller refines its own steps).
  void step(cplx next_value, double max_step_arg, double vanish_tol = 1e-12);

  BranchedScalar current() const { return {value_, total_arg_}; }

 private:
  cplx value_;
  double total_arg_;
};

/// det(Z)^lambda on the closed Siegel upper half space, normalized so that
/// det(I + i*eps*I)^lambda -> 1.  Eigenvalue logs take arguments in [0, pi);
/// boundary-value reals are treated as argument 0.
cplx siegel_det_pow(const Eigen::Ref<const Eigen::MatrixXcd>& z, cplx lambda,
                    double tol = 1e-12);

/// f_lambda at a nondegenerate real symmetric point:
/// e^{i pi h lambda} |det X|^lambda with h the number of negative eigenvalues.
cplx f_lambda(const Eigen::Ref<const Eigen::MatrixXd>& x, cplx lambda,
              double tol = -1.0);

/// Coefficient vector (a_0, ..., a_r) of a combination of |det X|^lambda_{r-h}.
using CoeffVector = Eigen::VectorXcd;

/// The admissible pole set {-m, -(2m+1)/2 : m >= 1}.
bool is_admissible_pole(double s);

/// Muro's pole-order recursion: returns d^(0), ..., d^(depth).
/// d^(1)_h = a_h + eps a_{h+1} with eps = -1 iff s is an even integer;
/// d^(2l+1)_h = d^(2l-1)_h - d^(2l-1)_{h+2}; d^(2l)_h = d^(2l-2)_h + d^(2l-2)_{h+2}.
/// Vectors of nonpositive length are empty.
std::vector<CoeffVector> muro_d_vectors(const CoeffVector& a, double s, int depth);

/// Pole order of sum_h a_h |det X|^lambda_{r-h} at the admissible point s:
/// largest P with d^(2P) != 0 (half-integer s) resp. d^(2P-1) != 0 (integer s).
int muro_pole_order(const CoeffVector& a, double s, double tol = 1e-12);

/// Evaluates the vanishing identities behind analyticity of f_lambda:
/// max |entry| of d^(2j+2)(a^(j)(s)) at half-integer s, d^(2j+1)(a^(j)(s)) at
/// integer s, where a_h(lambda) = e^{i pi h lambda}.  Zero when f_lambda is
/// analytic, which is always.
double analyticity_check(double s, int j, int r);

}  // namespace crofton::br
