#pragma once

// Klein-model primitives: points of the open unit ball, ideal points on the
// sphere at infinity, the hyperbolic metric and volume density, and
// isometries realised as Lorentz transformations of the hyperboloid lift.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "hypervol/errors.hpp"

namespace hypervol {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Finite points must satisfy |p| < 1 - kBoundaryTol.
inline constexpr double kBoundaryTol = 1e-12;

/// A point of H^n in Klein coordinates.
class KleinPoint {
 public:
  explicit KleinPoint(Vector coords);

  static KleinPoint origin(int n);

  const Vector& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  double norm() const { return coords_.norm(); }
  double squared_norm() const { return coords_.squaredNorm(); }
  double operator[](int i) const { return coords_[i]; }

  friend bool operator==(const KleinPoint& a, const KleinPoint& b) {
    return a.coords_ == b.coords_;
  }

 private:
  Vector coords_;
};

/// A point of the sphere at infinity; the direction is renormalised on construction.
class IdealPoint {
 public:
  explicit IdealPoint(Vector direction);

  const Vector& direction() const { return direction_; }
  int dim() const { return static_cast<int>(direction_.size()); }

 private:
  Vector direction_;
};

/// Checks that v is a usable Klein coordinate vector (n >= 2, |v| < 1 - kBoundaryTol).
bool is_valid_klein(const Vector& v);

/// Volume density (1 - |p|^2)^{-(n+1)/2} of the Klein model.
double density(const KleinPoint& p);
/// Same density for a raw coordinate vector; throws BoundaryProximityError near |x| = 1.
double density(const Vector& x);

/// Hyperbolic distance acosh((1 - <p,q>) / sqrt((1 - |p|^2)(1 - |q|^2))).
double dist(const KleinPoint& p, const KleinPoint& q);
double dist(const Vector& p, const Vector& q);

/// Hyperbolic distance from the origin, atanh|p|.
double dist_from_origin(const Vector& p);

/// Hyperboloid lift (1, x) / sqrt(1 - |x|^2).
Vector hyperboloid_lift(const KleinPoint& p);
/// Projection of a future-timelike vector of R^{n,1} back to the Klein ball.
Vector klein_from_lift(const Vector& lift);

Vector poincare_to_klein(const Vector& p);
Vector klein_to_poincare(const Vector& k);

/// Orientation-agnostic isometry of H^n stored as an (n+1)x(n+1) matrix that
/// preserves the Minkowski form diag(-1, 1, ..., 1).
class Isometry {
 public:
  explicit Isometry(Matrix lorentz);

  static Isometry identity(int n);
  /// Pure boost that sends the Klein point with coordinates `v` to the origin.
  static Isometry boost_to_origin(const Vector& v);
  /// Rotation about the origin by an orthogonal n x n matrix.
  static Isometry rotation(const Matrix& orthogonal);
  /// Random rotation composed with a boost of rapidity at most max_rapidity.
  static Isometry random(int n, double max_rapidity, std::uint64_t seed);

  const Matrix& lorentz() const { return lorentz_; }
  int dim() const { return static_cast<int>(lorentz_.rows()) - 1; }

  KleinPoint apply(const KleinPoint& p) const;
  IdealPoint apply(const IdealPoint& x) const;
  /// Projective action on the closed ball; no validity check on the result.
  Vector apply(const Vector& x) const;

  Isometry inverse() const;
  /// Returns this ∘ inner.
  Isometry compose(const Isometry& inner) const;

  /// max |L^T J L - J| entry.
  double minkowski_defect() const;

 private:
  Matrix lorentz_;
};

Isometry translate_to_origin(const KleinPoint& p);

/// Surface area of the unit k-sphere S^k in R^{k+1}.
double sphere_area(int k);
/// Volume of the Euclidean unit n-ball.
double unit_ball_volume(int n);

/// Radial volume profile ∫_0^w sinh^{n-1}(t) dt; the hyperbolic volume of a
/// cone of unit solid angle out to hyperbolic radius w.
double radial_profile(int n, double w);
/// Inverse of radial_profile in w for a target value in [0, radial_profile(n, w_max)].
double radial_profile_inverse(int n, double target, double w_max);

/// Volume of the hyperbolic ball of radius r in H^n (2 <= n <= 8).
double ball_volume(int n, double r);

/// `count` points at hyperbolic distance r from `center`, directions uniform.
/// Point j depends only on (seed, j): the first k points of a longer request
/// coincide with a request of size k.
std::vector<KleinPoint> ball_boundary_points(const KleinPoint& center, double r, int count,
                                             std::uint64_t seed);

}  // namespace hypervol
