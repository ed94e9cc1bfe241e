#include <cmath>

#include "hypervol/cones.hpp"
#include "hypervol/experiments.hpp"
#include "hypervol/rng.hpp"

namespace hypervol {

std::string to_string(PointFamily family) {
  switch (family) {
    case PointFamily::uniform_ideal:
      return "uniform-ideal";
    case PointFamily::uniform_ball:
      return "uniform-ball";
    case PointFamily::clustered:
      return "clustered";
  }
  return "unknown";
}

PointFamily point_family_from_string(const std::string& name) {
  if (name == "uniform-ideal") return PointFamily::uniform_ideal;
  if (name == "uniform-ball") return PointFamily::uniform_ball;
  if (name == "clustered") return PointFamily::clustered;
  throw InvalidArgumentError("unknown point family '" + name + "'");
}

std::vector<KleinPoint> uniform_ideal_points(int n, int count, std::uint64_t seed) {
  std::vector<KleinPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    out.emplace_back(kIdealTruncation * rng.direction(n));
  }
  return out;
}

std::vector<KleinPoint> uniform_ball_points(int n, int count, double radius, std::uint64_t seed) {
  const double total = radial_profile(n, radius);
  std::vector<KleinPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    const double w = radial_profile_inverse(n, rng.uniform_open() * total, radius);
    out.emplace_back(std::tanh(w) * rng.direction(n));
  }
  return out;
}

std::vector<KleinPoint> clustered_points(int n, int count, double radius, double spread,
                                         std::uint64_t seed) {
  const int clusters = std::max(1, count / 8);
  const auto centers = uniform_ball_points(n, clusters, radius, mix_seed(seed, 0xc1));
  std::vector<Isometry> from_center;
  for (const auto& c : centers) from_center.push_back(translate_to_origin(c).inverse());
  const auto local = uniform_ball_points(n, count, spread, mix_seed(seed, 0xc2));
  std::vector<KleinPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out.push_back(from_center[static_cast<std::size_t>(i % clusters)].apply(local[static_cast<std::size_t>(i)]));
  }
  return out;
}

std::vector<KleinPoint> generate_points(PointFamily family, int n, int count, std::uint64_t seed) {
  switch (family) {
    case PointFamily::uniform_ideal:
      return uniform_ideal_points(n, count, seed);
    case PointFamily::uniform_ball:
      return uniform_ball_points(n, count, 3.0, seed);
    case PointFamily::clustered:
      return clustered_points(n, count, 3.0, 0.5, seed);
  }
  throw InvalidArgumentError("unknown point family");
}

std::vector<KleinPoint> regular_simplex(int n, double r) {
  if (!(r > 0.0)) throw InvalidArgumentError("simplex edge length must be positive");
  // cosh r = (1 + ρ²/n) / (1 - ρ²) for unit directions with u_i·u_j = -1/n
  const double c = std::cosh(r);
  const double rho = std::sqrt((c - 1.0) / (c + 1.0 / n));
  Matrix centred = Matrix::Identity(n + 1, n + 1);
  centred.array() -= 1.0 / (n + 1);
  Eigen::HouseholderQR<Matrix> qr(centred);
  const Matrix q = qr.householderQ();
  const Matrix basis = q.leftCols(n);  // spans the sum-zero hyperplane
  std::vector<KleinPoint> out;
  for (int i = 0; i <= n; ++i) {
    const Vector u = basis.transpose() * centred.col(i);
    out.emplace_back(rho * u.normalized());
  }
  return out;
}

}  // namespace hypervol
