#pragma once

#include <functional>
#include <optional>
#include <variant>

#include "crofton/grassmannian.hpp"
#include "crofton/pseudo_linalg.hpp"

namespace crofton::body {

/// Constant-curvature model space.  Curved space forms are unit spheres of
/// +-Q in the standard ambient; chi is always evaluated in the radial (cone)
/// picture on the round sphere of P0.
struct SpaceForm {
  enum class Kind { Pseudosphere, PseudoHyperbolic, Flat };
  Kind kind;
  lin::Signature ambient;  // signature of the ambient quadratic space

  double curvature() const {
    switch (kind) {
      case Kind::Pseudosphere: return 1.0;
      case Kind::PseudoHyperbolic: return -1.0;
      default: return 0.0;
    }
  }
  /// Dimension of the space form itself.
  int dim() const { return kind == Kind::Flat ? ambient.dim() : ambient.dim() - 1; }
};

inline SpaceForm pseudosphere(int p, int q) {
  // S^{p,q} sits in R^{p+1,q}
  return {SpaceForm::Kind::Pseudosphere, {p + 1, q}};
}
inline SpaceForm pseudohyperbolic(int p, int q) {
  // H^{p,q} sits in R^{p,q+1}
  return {SpaceForm::Kind::PseudoHyperbolic, {p, q + 1}};
}
inline SpaceForm flat_space(int p, int q) {
  return {SpaceForm::Kind::Flat, {p, q}};
}

/// chi of one intersection, with a genericity flag: false marks samples that
/// fell within tolerance of a tangency or degeneracy (excluded from means).
struct ChiValue {
  int chi = 0;
  bool generic = true;
};

/// Geodesic cap {x in S : <x, axis> >= cos(radius)}, radius in (0, pi/2).
struct Cap {
  lin::VecD axis;  // unit vector
  double radius;
};

/// Totally geodesic equator sphere {x_axis = 0}.
struct Equator {
  int axis;  // 0-based coordinate index
};

/// Quadratic band {x_t^2 <= tan^2(theta) * sum_{i != t} x_i^2}, theta in (0, pi/4).
/// On the round sphere this is the latitude band of geodesic half-width theta
/// around the equator {x_t = 0}.
struct Band {
  double theta;
  int time_axis;
};

/// Intersection of a pointed full-dimensional polyhedral cone with the sphere.
struct ConeBody {
  lin::MatD generators;  // d x s, columns generate the cone
  bool certified = false;  // pointedness + nonempty interior verified
};

ConeBody make_cone_body(const lin::MatD& generators);

/// Membership of a point in the closed cone (small LP).
bool cone_contains(const ConeBody& cone, const lin::VecD& x);

using SphereBody = std::variant<Cap, Equator, Band, ConeBody>;

/// chi(A cap E) for a body on the round sphere and a linear subspace E.
ChiValue euler_convex(const Cap& cap, const gr::Subspace& e, double tol = 1e-9);
ChiValue euler_convex(const ConeBody& cone, const gr::Subspace& e, double tol = 1e-9);
ChiValue euler_band(const Band& band, const gr::Subspace& e, double tol = 1e-9);
ChiValue euler_equator(const Equator& eq, const gr::Subspace& e, double tol = 1e-9);

ChiValue chi_sphere(const SphereBody& body, const gr::Subspace& e, double tol = 1e-9);

/// Radial projection onto the round sphere: supported bodies are cones, so the
/// descriptor is unchanged; this validates that the body's cone stays inside
/// the region where the space form is radially parametrized.
SphereBody radial_project(const SphereBody& body, const SpaceForm& form);

/// The anti-isometry j(x, y) = (y, x) from R^{p,q} to R^{q,p}, applied to a
/// body descriptor (coordinates rotate by q positions).
SphereBody swap_body(const SphereBody& body, const lin::Signature& sig);

/// Closed immersed planar curve, period-parametrized.
struct PlanarCurve {
  std::function<Eigen::Vector2d(double)> point;
  std::function<Eigen::Vector2d(double)> velocity;
  double period;
  double circumradius;  // max |gamma| (for the affine window)
};

PlanarCurve make_circle(double radius = 1.0, Eigen::Vector2d center = {0.0, 0.0});
PlanarCurve make_ellipse(double a, double b);

/// Euclidean ball in flat space (domain body; chi of a plane section is 0/1).
struct FlatBall {
  lin::VecD center;
  double radius;
};

using FlatBody = std::variant<PlanarCurve, FlatBall>;

/// Transversal intersection count of a curve with an affine line in the plane.
ChiValue chi_curve_flat(const PlanarCurve& curve, const gr::AffineSubspace& line,
                        double tol = 1e-7, int grid = 1024);

ChiValue chi_flat(const FlatBody& body, const gr::AffineSubspace& plane,
                  double tol = 1e-7);

double circumradius(const FlatBody& body);

}  // namespace crofton::body
