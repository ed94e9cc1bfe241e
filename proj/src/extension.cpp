#include "hypervol/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hypervol/parallel.hpp"
#include "hypervol/rng.hpp"

namespace hypervol {
namespace {

constexpr std::int64_t kChunk = 8192;

void require_cloud(std::span<const KleinPoint> points, double epsilon) {
  if (points.empty()) throw InvalidArgumentError("point cloud is empty");
  if (!(epsilon > 0.0)) throw InvalidArgumentError("epsilon must be positive");
  const int n = points.front().dim();
  for (const auto& p : points) {
    if (p.dim() != n) throw DimensionMismatchError("point cloud mixes dimensions");
  }
}

}  // namespace

PackingResult greedy_packing(std::span<const KleinPoint> points, double epsilon, std::uint64_t seed) {
  require_cloud(points, epsilon);
  std::vector<int> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  CounterRng rng(seed, 0x9ac);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[static_cast<std::size_t>(rng.below(i))]);
  }
  PackingResult pack;
  pack.epsilon = epsilon;
  pack.input_size = static_cast<int>(points.size());
  for (int idx : order) {
    const KleinPoint& p = points[static_cast<std::size_t>(idx)];
    const bool far = std::all_of(pack.centers.begin(), pack.centers.end(),
                                 [&](const KleinPoint& c) { return dist(c, p) > epsilon; });
    if (far) {
      pack.centers.push_back(p);
      pack.indices.push_back(idx);
    }
  }
  return pack;
}

PackingCertificate certify_packing(const PackingResult& pack, std::span<const KleinPoint> points) {
  PackingCertificate cert{std::numeric_limits<double>::infinity(), 0.0, true, true};
  for (std::size_t i = 0; i < pack.centers.size(); ++i) {
    for (std::size_t j = i + 1; j < pack.centers.size(); ++j) {
      cert.min_center_distance = std::min(cert.min_center_distance, dist(pack.centers[i], pack.centers[j]));
    }
  }
  for (const auto& p : points) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& c : pack.centers) nearest = std::min(nearest, dist(c, p));
    cert.max_cover_distance = std::max(cert.max_cover_distance, nearest);
  }
  cert.separated = cert.min_center_distance > pack.epsilon;
  cert.covering = cert.max_cover_distance <= pack.epsilon;
  return cert;
}

UnionOfBalls::UnionOfBalls(std::vector<KleinPoint> centers, double radius)
    : centers_(std::move(centers)), radius_(radius), cosh_radius_(std::cosh(radius)) {
  require_cloud(centers_, radius);
  gamma_.reserve(centers_.size());
  for (const auto& c : centers_) gamma_.push_back(1.0 / std::sqrt(1.0 - c.squared_norm()));
}

double UnionOfBalls::cosh_between(const Vector& p, std::size_t k) const {
  // cosh d = -<lift p, lift c> in the Minkowski form
  const double gp = 1.0 / std::sqrt(1.0 - p.squaredNorm());
  return gp * gamma_[k] * (1.0 - p.dot(centers_[k].coords()));
}

bool UnionOfBalls::contains(const Vector& p) const {
  if (!(p.squaredNorm() < 1.0)) return false;
  for (std::size_t k = 0; k < centers_.size(); ++k) {
    if (cosh_between(p, k) <= cosh_radius_) return true;
  }
  return false;
}

int UnionOfBalls::multiplicity(const Vector& p) const {
  if (!(p.squaredNorm() < 1.0)) return 0;
  int count = 0;
  for (std::size_t k = 0; k < centers_.size(); ++k) {
    if (cosh_between(p, k) <= cosh_radius_) ++count;
  }
  return count;
}

double UnionOfBalls::bounding_radius() const {
  double far = 0.0;
  for (const auto& c : centers_) far = std::max(far, dist_from_origin(c.coords()));
  return std::tanh(far + radius_);
}

Region UnionOfBalls::region() const {
  return Region{[self = *this](const Vector& p) { return self.contains(p); }, bounding_radius(), std::nullopt};
}

SandwichReport sandwich_check(const PackingResult& pack, std::span<const KleinPoint> points,
                              std::int64_t probes, std::uint64_t seed) {
  require_cloud(points, pack.epsilon);
  const double eps = pack.epsilon;
  const UnionOfBalls extension(std::vector<KleinPoint>(points.begin(), points.end()), eps);
  const UnionOfBalls inner(pack.centers, 0.5 * eps);
  const UnionOfBalls outer(pack.centers, 2.0 * eps);
  std::vector<Isometry> from_center;
  for (const auto& c : pack.centers) from_center.push_back(translate_to_origin(c).inverse());
  const int n = points.front().dim();
  SandwichReport report;
  CounterRng rng(seed, 0x5a7d);
  for (std::int64_t i = 0; i < probes; ++i) {
    const auto k = static_cast<std::size_t>(rng.below(pack.centers.size()));
    const double r = 2.5 * eps * rng.uniform();
    const Vector local = std::tanh(r) * rng.direction(n);
    const Vector probe = from_center[k].apply(local);
    if (!is_valid_klein(probe)) continue;
    ++report.probes;
    const bool in_extension = extension.contains(probe);
    if (inner.contains(probe) && !in_extension) ++report.inner_violations;
    if (in_extension && !outer.contains(probe)) ++report.outer_violations;
  }
  return report;
}

VolumeEstimate extension_volume(std::span<const KleinPoint> points, double epsilon,
                                std::int64_t samples, std::uint64_t seed, int threads) {
  require_cloud(points, epsilon);
  const int n = points.front().dim();
  const UnionOfBalls balls(std::vector<KleinPoint>(points.begin(), points.end()), epsilon);
  std::vector<Isometry> from_center;
  for (const auto& c : points) from_center.push_back(translate_to_origin(c).inverse());
  const double ball = ball_volume(n, epsilon);
  const double profile = radial_profile(n, epsilon);
  const auto count = static_cast<double>(points.size());
  samples = std::max<std::int64_t>(samples, 2);
  const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
  struct Partial {
    double sum = 0.0;
    double sum_sq = 0.0;
  };
  std::vector<Partial> partial(static_cast<std::size_t>(chunks));
  parallel_for(static_cast<std::size_t>(chunks), threads, [&](std::size_t c) {
    CounterRng rng(seed, c);
    const std::int64_t begin = static_cast<std::int64_t>(c) * kChunk;
    const std::int64_t end = std::min(samples, begin + kChunk);
    for (std::int64_t i = begin; i < end; ++i) {
      const auto k = static_cast<std::size_t>(rng.below(points.size()));
      const double w = radial_profile_inverse(n, rng.uniform_open() * profile, epsilon);
      const Vector local = std::tanh(w) * rng.direction(n);
      const Vector p = from_center[k].apply(local);
      // The sampled ball always counts itself, even if rounding says otherwise.
      const int mult = std::max(1, balls.multiplicity(p));
      const double y = count * ball / mult;
      partial[c].sum += y;
      partial[c].sum_sq += y * y;
    }
  });
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& p : partial) {
    sum += p.sum;
    sum_sq += p.sum_sq;
  }
  const auto s = static_cast<double>(samples);
  VolumeEstimate e;
  e.method = VolumeMethod::monte_carlo;
  e.evaluations = samples;
  e.value = sum / s;
  e.std_error = std::sqrt(std::max(0.0, sum_sq / s - e.value * e.value) / (s - 1.0));
  return e;
}

std::variant<Polytope, DegenerateHull> hull_of_extension(std::span<const KleinPoint> points,
                                                         double epsilon, int boundary_samples,
                                                         std::uint64_t seed) {
  require_cloud(points, epsilon);
  const int n = points.front().dim();
  if (boundary_samples < 2 * n) throw InvalidArgumentError("need at least 2n boundary samples per ball");
  std::vector<KleinPoint> cloud;
  cloud.reserve(points.size() * static_cast<std::size_t>(boundary_samples));
  for (std::size_t j = 0; j < points.size(); ++j) {
    const auto ring = ball_boundary_points(points[j], epsilon, boundary_samples, mix_seed(seed, j));
    cloud.insert(cloud.end(), ring.begin(), ring.end());
  }
  return try_convex_hull(cloud);
}

ExtensionRatio theorem2_ratio(std::span<const KleinPoint> points, double epsilon,
                              int boundary_samples, const VolumeBudget& budget) {
  ExtensionRatio out;
  const auto hull = hull_of_extension(points, epsilon, boundary_samples, budget.seed);
  if (std::holds_alternative<DegenerateHull>(hull)) {
    out.hull.degenerate = true;
  } else {
    out.hull = polytope_volume(std::get<Polytope>(hull), budget);
  }
  out.extension = extension_volume(points, epsilon, budget.samples, mix_seed(budget.seed, 0xe7), budget.threads);
  out.ratio = out.hull.value / out.extension.value;
  const double rel_hull = out.hull.value > 0 ? out.hull.std_error / out.hull.value : 0.0;
  const double rel_ext = out.extension.std_error / out.extension.value;
  out.ratio_rel_error = std::hypot(rel_hull, rel_ext);
  out.low_confidence = out.hull.low_confidence || out.extension.low_confidence;
  return out;
}

ExtensionRatio euclidean_extension_ratio(std::span<const Vector> points, double epsilon,
                                         int boundary_samples, std::int64_t samples,
                                         std::uint64_t seed) {
  if (points.empty()) throw InvalidArgumentError("point cloud is empty");
  if (!(epsilon > 0.0)) throw InvalidArgumentError("epsilon must be positive");
  const int n = static_cast<int>(points.front().size());
  if (boundary_samples < 2 * n) throw InvalidArgumentError("need at least 2n boundary samples per ball");
  // Both volumes scale by s^n, so the cloud is shrunk into the unit ball to
  // reuse the hull code.
  double extent = 0.0;
  for (const auto& p : points) extent = std::max(extent, p.norm() + epsilon);
  const double scale = 0.5 / extent;
  std::vector<KleinPoint> cloud;
  for (std::size_t j = 0; j < points.size(); ++j) {
    for (int k = 0; k < boundary_samples; ++k) {
      CounterRng point_rng(mix_seed(seed, j), static_cast<std::uint64_t>(k));
      cloud.emplace_back(scale * (points[j] + epsilon * point_rng.direction(n)));
    }
  }
  ExtensionRatio out;
  const auto hull = try_convex_hull(cloud);
  if (std::holds_alternative<Polytope>(hull)) {
    out.hull.value = euclidean_volume(std::get<Polytope>(hull)) / std::pow(scale, n);
  } else {
    out.hull.degenerate = true;
  }

  // Union volume: uniform samples in the bounding box.
  Vector lo = points.front();
  Vector hi = points.front();
  for (const auto& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  lo.array() -= epsilon;
  hi.array() += epsilon;
  const double box = (hi - lo).prod();
  CounterRng rng(seed, 0xe0c1);
  std::int64_t hits = 0;
  const double eps2 = epsilon * epsilon;
  Vector x(n);
  for (std::int64_t i = 0; i < samples; ++i) {
    for (int d = 0; d < n; ++d) x[d] = lo[d] + (hi[d] - lo[d]) * rng.uniform();
    const bool in = std::any_of(points.begin(), points.end(),
                                [&](const Vector& c) { return (x - c).squaredNorm() <= eps2; });
    if (in) ++hits;
  }
  const double frac = static_cast<double>(hits) / static_cast<double>(samples);
  out.extension.method = VolumeMethod::monte_carlo;
  out.extension.evaluations = samples;
  out.extension.value = box * frac;
  out.extension.std_error = box * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples));
  out.ratio = out.hull.value / out.extension.value;
  out.ratio_rel_error = out.extension.value > 0 ? out.extension.std_error / out.extension.value : 0.0;
  return out;
}

}  // namespace hypervol
