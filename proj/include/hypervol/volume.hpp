#pragma once

// Hyperbolic volumes of simplices, polytopes and membership-defined regions.
//
// A simplex is moved by an isometry so that an interior anchor sits at the
// origin; it then splits into cones conv(0, F) over its facets. Along each
// ray from the origin the density integrates in closed form,
//   ∫_0^R t^{n-1} (1 - t^2)^{-(n+1)/2} dt = radial_profile(n, atanh R),
// which leaves a bounded integral over each facet. Facets are split
// barycentrically so that every piece has at most one original vertex, and
// each piece is mapped from the unit cube by a Duffy collapse anchored at that
// vertex with a squared radial coordinate, which removes the integrable
// singularity of near-ideal vertices.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "hypervol/hull.hpp"
#include "hypervol/klein.hpp"

namespace hypervol {

enum class VolumeMethod { quadrature, monte_carlo, exact_2d };

std::string to_string(VolumeMethod method);
VolumeMethod volume_method_from_string(const std::string& name);

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t evaluations = 0;
  VolumeMethod method = VolumeMethod::quadrature;
  /// Quadrature error estimate relative to value (0 for Monte Carlo).
  double achieved_rel_error = 0.0;
  /// Set when the tolerance was not met or a Monte Carlo run had too few hits.
  bool low_confidence = false;
  /// Set for lower-dimensional inputs whose volume is reported as 0.
  bool degenerate = false;
};

/// Sum of independent estimates; standard errors add in quadrature.
VolumeEstimate combine(std::span<const VolumeEstimate> parts);

/// {value, std_error, evaluations, method}; low_confidence/degenerate are added only when set.
nlohmann::ordered_json to_json(const VolumeEstimate& estimate);

struct VolumeBudget {
  VolumeMethod method = VolumeMethod::quadrature;
  double rel_tol = 1e-4;
  unsigned max_depth = 12;
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Quadrature is used up to this dimension; beyond it simplex_volume falls back to Monte Carlo.
inline constexpr int kMaxQuadratureDim = 4;

/// ∫_s v_n dx. For n = 2 the exact_2d method evaluates the angle defect.
VolumeEstimate simplex_volume(const Simplex& s, const VolumeBudget& budget = {});

/// Sum over the apex triangulation (apex = origin when interior, otherwise the
/// Lorentzian barycentre of the vertices).
VolumeEstimate polytope_volume(const Polytope& poly, const VolumeBudget& budget = {});

/// Convex hull of the points followed by polytope_volume; degenerate input gives 0.
VolumeEstimate hull_volume(std::span<const KleinPoint> points, const VolumeBudget& budget = {});

/// Hyperbolic volume of the cone conv(0, F) over an (n-1)-simplex F given by n
/// vertices; the vertices may lie on the unit sphere.
VolumeEstimate origin_cone_volume(std::span<const Vector> facet, const VolumeBudget& budget);

/// Lorentzian barycentre: projection of the sum of hyperboloid lifts.
KleinPoint lorentz_barycenter(std::span<const KleinPoint> points);

/// Region given by a membership oracle. When `support` is set the region must
/// lie inside that simplex and sampling is restricted to it.
struct Region {
  std::function<bool(const Vector&)> membership;
  double bounding_radius = 0.0;
  std::optional<Simplex> support;
};

/// Monte Carlo estimate of ∫ 1_region v_n dx. Deterministic per seed for any thread count.
VolumeEstimate region_volume_mc(const Region& region, int n, std::int64_t samples,
                                std::uint64_t seed, int threads = 1);

/// Several regions estimated from one shared sample stream over a support
/// simplex (common random numbers): entry k is the volume of
/// support ∩ {membership[k]}.
std::vector<VolumeEstimate> simplex_region_volumes(
    const Simplex& support, std::span<const std::function<bool(const Vector&)>> memberships,
    std::int64_t samples, std::uint64_t seed, int threads = 1);

/// Each sample point inside `support` with its importance weight; used by
/// ratio estimators. Weights sum (in expectation) to the simplex volume.
struct WeightedSample {
  Vector point;
  double weight;
};
std::vector<WeightedSample> sample_simplex(const Simplex& support, std::int64_t samples,
                                           std::uint64_t seed, int threads = 1);

/// Area of a hyperbolic triangle by angle defect; ideal vertices contribute angle 0.
/// Collinear vertices give 0.
class TriangleVertex {
 public:
  TriangleVertex(const KleinPoint& p) : coords_(p.coords()), ideal_(false) {}  // NOLINT
  TriangleVertex(const IdealPoint& x) : coords_(x.direction()), ideal_(true) {}  // NOLINT
  const Vector& coords() const { return coords_; }
  bool ideal() const { return ideal_; }

 private:
  Vector coords_;
  bool ideal_;
};

double triangle_area_2d(const TriangleVertex& a, const TriangleVertex& b, const TriangleVertex& c);

/// Interior angle at finite vertex `at` between the geodesics towards u and w, from the Klein metric tensor.
double klein_angle(const Vector& at, const Vector& u, const Vector& w);

}  // namespace hypervol
