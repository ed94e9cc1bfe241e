#pragma once

// ε-extensions A_ε = ∪_{a ∈ A} B_H(a, ε) of finite point clouds, greedy
// packings, and the hull-to-extension volume ratio.

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "hypervol/hull.hpp"
#include "hypervol/klein.hpp"
#include "hypervol/volume.hpp"

namespace hypervol {

struct PackingResult {
  std::vector<KleinPoint> centers;
  /// Index into the input cloud of each center.
  std::vector<int> indices;
  double epsilon = 0.0;
  int input_size = 0;
};

/// Scans the cloud in a seed-shuffled order and keeps every point farther
/// than ε from all centers kept so far. The result is a maximal packing, so
/// its ε-balls cover the cloud.
PackingResult greedy_packing(std::span<const KleinPoint> points, double epsilon, std::uint64_t seed);

struct PackingCertificate {
  double min_center_distance;  // +inf for a single center
  double max_cover_distance;   // max over the cloud of the distance to the nearest center
  bool separated;              // min_center_distance > ε
  bool covering;               // max_cover_distance <= ε
};

PackingCertificate certify_packing(const PackingResult& pack, std::span<const KleinPoint> points);

/// Union of closed hyperbolic balls with a common radius.
class UnionOfBalls {
 public:
  UnionOfBalls(std::vector<KleinPoint> centers, double radius);

  bool contains(const Vector& p) const;
  /// Number of balls containing p.
  int multiplicity(const Vector& p) const;
  /// Euclidean radius of a centered ball enclosing the union.
  double bounding_radius() const;
  Region region() const;

  const std::vector<KleinPoint>& centers() const { return centers_; }
  double radius() const { return radius_; }
  int dim() const { return centers_.front().dim(); }

 private:
  double cosh_between(const Vector& p, std::size_t k) const;

  std::vector<KleinPoint> centers_;
  std::vector<double> gamma_;  // 1 / sqrt(1 - |c|²)
  double radius_;
  double cosh_radius_;
};

struct SandwichReport {
  std::int64_t probes = 0;
  /// Probes within ε/2 of a center but outside A_ε.
  std::int64_t inner_violations = 0;
  /// Probes in A_ε but farther than 2ε from every center.
  std::int64_t outer_violations = 0;
};

/// Checks ∪ B(x_i, ε/2) ⊂ A_ε ⊂ ∪ B(x_i, 2ε) on probes drawn around the centers
/// out to hyperbolic radius 2.5ε.
SandwichReport sandwich_check(const PackingResult& pack, std::span<const KleinPoint> points,
                              std::int64_t probes, std::uint64_t seed);

/// Vol(A_ε) by a mixture estimator: pick a ball uniformly, sample it uniformly
/// in hyperbolic volume, weight by N Vol(B_ε) / multiplicity. Weights stay in
/// [Vol(B_ε), N Vol(B_ε)], so the variance is bounded for any overlap pattern.
VolumeEstimate extension_volume(std::span<const KleinPoint> points, double epsilon,
                                std::int64_t samples, std::uint64_t seed, int threads = 1);

/// Hull of `boundary_samples` points on each sphere ∂B_H(a, ε). Per-ball
/// substreams are prefix-nested, so more samples give a superset of vertices.
std::variant<Polytope, DegenerateHull> hull_of_extension(std::span<const KleinPoint> points,
                                                         double epsilon, int boundary_samples,
                                                         std::uint64_t seed);

struct ExtensionRatio {
  VolumeEstimate hull;
  VolumeEstimate extension;
  double ratio = 0.0;
  /// Relative standard error of the ratio (first order).
  double ratio_rel_error = 0.0;
  bool low_confidence = false;
};

/// Vol(Conv(A_ε)) / Vol(A_ε) with the hull approximated from inside.
ExtensionRatio theorem2_ratio(std::span<const KleinPoint> points, double epsilon,
                              int boundary_samples, const VolumeBudget& budget);

/// Euclidean companion: the same ratio with Euclidean balls and Euclidean
/// volume, for points given in plain R^n coordinates.
ExtensionRatio euclidean_extension_ratio(std::span<const Vector> points, double epsilon,
                                         int boundary_samples, std::int64_t samples,
                                         std::uint64_t seed);

}  // namespace hypervol
