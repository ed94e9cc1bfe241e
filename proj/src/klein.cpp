#include "hypervol/klein.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "hypervol/rng.hpp"

namespace hypervol {
namespace {

void check_dims(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatchError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                                 std::to_string(b.size()));
  }
}

void require_klein(const Vector& v) {
  if (v.size() < 2) throw InvalidArgumentError("Klein points need dimension >= 2");
  if (!v.allFinite()) throw InvalidArgumentError("non-finite Klein coordinates");
  if (v.norm() >= 1.0 - kBoundaryTol) {
    throw BoundaryProximityError("point too close to the sphere at infinity (|p| = " +
                                 std::to_string(v.norm()) + ")");
  }
}

Matrix minkowski_form(int n) {
  Matrix j = Matrix::Identity(n + 1, n + 1);
  j(0, 0) = -1.0;
  return j;
}

}  // namespace

KleinPoint::KleinPoint(Vector coords) : coords_(std::move(coords)) { require_klein(coords_); }

KleinPoint KleinPoint::origin(int n) { return KleinPoint(Vector::Zero(n)); }

IdealPoint::IdealPoint(Vector direction) : direction_(std::move(direction)) {
  const double norm = direction_.norm();
  if (direction_.size() < 2 || !(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidArgumentError("ideal point needs a nonzero finite direction in dimension >= 2");
  }
  direction_ /= norm;
}

bool is_valid_klein(const Vector& v) {
  return v.size() >= 2 && v.allFinite() && v.norm() < 1.0 - kBoundaryTol;
}

double density(const Vector& x) {
  require_klein(x);
  const double n = static_cast<double>(x.size());
  return std::pow(1.0 - x.squaredNorm(), -0.5 * (n + 1.0));
}

double density(const KleinPoint& p) { return density(p.coords()); }

double dist(const Vector& p_in, const Vector& q_in) {
  check_dims(p_in, q_in);
  require_klein(p_in);
  require_klein(q_in);
  // Canonical argument order makes the result bitwise symmetric.
  const bool swap = std::lexicographical_compare(q_in.begin(), q_in.end(), p_in.begin(), p_in.end());
  const Vector& p = swap ? q_in : p_in;
  const Vector& q = swap ? p_in : q_in;
  // sinh^2 d = (A|δ|^2 + (p·δ)^2) / (A B), δ = q - p; free of cancellation for close points.
  const Vector delta = q - p;
  const double a = 1.0 - p.squaredNorm();
  const double b = 1.0 - q.squaredNorm();
  const double pd = p.dot(delta);
  const double sinh_sq = (a * delta.squaredNorm() + pd * pd) / (a * b);
  return std::asinh(std::sqrt(sinh_sq));
}

double dist(const KleinPoint& p, const KleinPoint& q) { return dist(p.coords(), q.coords()); }

double dist_from_origin(const Vector& p) {
  require_klein(p);
  return std::atanh(p.norm());
}

Vector hyperboloid_lift(const KleinPoint& p) {
  const int n = p.dim();
  Vector lift(n + 1);
  const double scale = 1.0 / std::sqrt(1.0 - p.squared_norm());
  lift[0] = scale;
  lift.tail(n) = scale * p.coords();
  return lift;
}

Vector klein_from_lift(const Vector& lift) {
  if (!(lift[0] > 0.0)) throw InvalidArgumentError("lift is not future-pointing");
  return lift.tail(lift.size() - 1) / lift[0];
}

Vector poincare_to_klein(const Vector& p) { return 2.0 * p / (1.0 + p.squaredNorm()); }

Vector klein_to_poincare(const Vector& k) {
  return k / (1.0 + std::sqrt(std::max(0.0, 1.0 - k.squaredNorm())));
}

Isometry::Isometry(Matrix lorentz) : lorentz_(std::move(lorentz)) {
  if (lorentz_.rows() != lorentz_.cols() || lorentz_.rows() < 3) {
    throw InvalidArgumentError("Lorentz matrix must be square of size >= 3");
  }
  if (minkowski_defect() > 1e-9 * std::max(1.0, lorentz_.cwiseAbs().maxCoeff())) {
    throw InvalidArgumentError("matrix does not preserve the Minkowski form");
  }
  if (lorentz_(0, 0) <= 0.0) throw InvalidArgumentError("matrix swaps the hyperboloid sheets");
}

Isometry Isometry::identity(int n) { return Isometry(Matrix::Identity(n + 1, n + 1)); }

Isometry Isometry::boost_to_origin(const Vector& v) {
  const int n = static_cast<int>(v.size());
  const double v2 = v.squaredNorm();
  if (v2 == 0.0) return identity(n);
  if (!(v2 < 1.0)) throw BoundaryProximityError("boost velocity must be inside the unit ball");
  const double gamma = 1.0 / std::sqrt(1.0 - v2);
  Matrix l(n + 1, n + 1);
  l(0, 0) = gamma;
  l.block(0, 1, 1, n) = -gamma * v.transpose();
  l.block(1, 0, n, 1) = -gamma * v;
  l.block(1, 1, n, n) = Matrix::Identity(n, n) + ((gamma - 1.0) / v2) * (v * v.transpose());
  return Isometry(std::move(l));
}

Isometry Isometry::rotation(const Matrix& orthogonal) {
  const int n = static_cast<int>(orthogonal.rows());
  Matrix l = Matrix::Identity(n + 1, n + 1);
  l.block(1, 1, n, n) = orthogonal;
  return Isometry(std::move(l));
}

Isometry Isometry::random(int n, double max_rapidity, std::uint64_t seed) {
  CounterRng rng(seed, 0x15e7);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0) q.col(j) *= -1.0;
  }
  const double rapidity = max_rapidity * rng.uniform();
  const Vector velocity = std::tanh(rapidity) * rng.direction(n);
  return boost_to_origin(velocity).compose(rotation(q));
}

Vector Isometry::apply(const Vector& x) const {
  const int n = dim();
  if (x.size() != n) throw DimensionMismatchError("isometry/point dimension mismatch");
  Vector homogeneous(n + 1);
  homogeneous[0] = 1.0;
  homogeneous.tail(n) = x;
  const Vector image = lorentz_ * homogeneous;
  return image.tail(n) / image[0];
}

KleinPoint Isometry::apply(const KleinPoint& p) const { return KleinPoint(apply(p.coords())); }

IdealPoint Isometry::apply(const IdealPoint& x) const { return IdealPoint(apply(x.direction())); }

Isometry Isometry::inverse() const {
  const Matrix j = minkowski_form(dim());
  return Isometry(j * lorentz_.transpose() * j);
}

Isometry Isometry::compose(const Isometry& inner) const {
  if (inner.dim() != dim()) throw DimensionMismatchError("isometry dimension mismatch");
  return Isometry(lorentz_ * inner.lorentz_);
}

double Isometry::minkowski_defect() const {
  const Matrix j = minkowski_form(dim());
  return (lorentz_.transpose() * j * lorentz_ - j).cwiseAbs().maxCoeff();
}

Isometry translate_to_origin(const KleinPoint& p) { return Isometry::boost_to_origin(p.coords()); }

double sphere_area(int k) {
  const double half = 0.5 * (k + 1);
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double unit_ball_volume(int n) {
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double radial_profile(int n, double w) {
  if (n < 1) throw InvalidArgumentError("radial_profile needs n >= 1");
  if (w <= 0.0) return 0.0;
  const int k = n - 1;
  if (k == 0) return w;
  if (k == 1) {
    const double h = std::sinh(0.5 * w);
    return 2.0 * h * h;
  }
  // The recurrence below loses about eps / w^2 in relative terms; for small w
  // the 20-point Gauss-Legendre rule is exact to rounding instead.
  if (w < 0.1) {
    auto f = [k](double t) { return std::pow(std::sinh(t), k); };
    return boost::math::quadrature::gauss<double, 20>::integrate(f, 0.0, w);
  }
  const double s = std::sinh(w);
  const double c = std::cosh(w);
  // ∫ sinh^k = sinh^{k-1} cosh / k - (k-1)/k ∫ sinh^{k-2}
  double even = w;             // k = 0
  double odd = 2.0 * std::sinh(0.5 * w) * std::sinh(0.5 * w);  // k = 1
  double result = 0.0;
  for (int j = 2; j <= k; ++j) {
    double& prev = (j % 2 == 0) ? even : odd;
    result = std::pow(s, j - 1) * c / j - (static_cast<double>(j - 1) / j) * prev;
    prev = result;
  }
  return result;
}

double radial_profile_inverse(int n, double target, double w_max) {
  if (target <= 0.0) return 0.0;
  const double total = radial_profile(n, w_max);
  if (target >= total) return w_max;
  double lo = 0.0;
  double hi = w_max;
  double w = 0.5 * w_max;
  for (int iter = 0; iter < 200; ++iter) {
    const double f = radial_profile(n, w) - target;
    if (f > 0) hi = w; else lo = w;
    const double slope = std::pow(std::sinh(w), n - 1);
    double next = slope > 0 ? w - f / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - w) <= 1e-15 * std::max(1.0, w) || hi - lo < 1e-15 * std::max(1.0, w)) {
      return next;
    }
    w = next;
  }
  return w;
}

double ball_volume(int n, double r) {
  if (!(r > 0.0)) throw InvalidArgumentError("ball radius must be positive");
  if (n < 2 || n > 8) throw InvalidArgumentError("ball_volume supports 2 <= n <= 8");
  return sphere_area(n - 1) * radial_profile(n, r);
}

std::vector<KleinPoint> ball_boundary_points(const KleinPoint& center, double r, int count,
                                             std::uint64_t seed) {
  if (!(r > 0.0)) throw InvalidArgumentError("ball radius must be positive");
  if (count < 1) throw InvalidArgumentError("need at least one boundary point");
  const int n = center.dim();
  const Isometry from_origin = translate_to_origin(center).inverse();
  const double euclidean_radius = std::tanh(r);
  std::vector<KleinPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    CounterRng rng(seed, static_cast<std::uint64_t>(j));
    out.push_back(from_origin.apply(KleinPoint(euclidean_radius * rng.direction(n))));
  }
  return out;
}

}  // namespace hypervol
