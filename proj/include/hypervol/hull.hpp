#pragma once

// Convex hulls inside the Klein ball. Geodesics of the Klein model are
// Euclidean chords, so the Euclidean hull computed here is also the
// hyperbolic hull of the input.

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypervol/klein.hpp"

namespace hypervol {

struct Halfspace {
  Vector normal;  // unit outward normal
  double offset;  // normal · x <= offset on the inside
};

/// V- and H-representation of a full-dimensional polytope with simplicial facets.
/// facets[k] and halfspaces[k] describe the same supporting hyperplane.
struct Polytope {
  int dim = 0;
  std::vector<KleinPoint> vertices;
  std::vector<std::vector<int>> facets;
  std::vector<Halfspace> halfspaces;
};

/// Up to n + 1 points; full-dimensional when it has exactly n + 1 affinely independent vertices.
struct Simplex {
  std::vector<KleinPoint> vertices;

  int dim() const { return vertices.empty() ? 0 : vertices.front().dim(); }
};

/// The input spans an affine subspace of dimension `affine_rank` < n.
class DegenerateHullError : public GeometryError {
 public:
  DegenerateHullError(int affine_rank, int dimension);
  int affine_rank() const { return affine_rank_; }
  int dimension() const { return dimension_; }

 private:
  int affine_rank_;
  int dimension_;
};

struct DegenerateHull {
  int affine_rank;
  int dimension;
};

struct HullOptions {
  /// Orientation tolerance: points closer than this to a facet plane count as on it.
  double tolerance = 1e-10;
  /// Magnitude of the seeded perturbation used when the first attempt fails validation.
  double perturbation = 1e-9;
  /// How far outside the result an input point may sit before a retry. Must
  /// exceed the perturbation, which moves facets by about that much.
  double validation_slack = 1e-8;
  std::uint64_t seed = 0x6875;
  int max_retries = 3;
};

inline constexpr int kMinHullDim = 2;
inline constexpr int kMaxHullDim = 6;

/// Quickhull with simplicial facets; duplicates and interior points are dropped.
/// Throws DegenerateHullError when the points do not span R^n.
Polytope convex_hull(std::span<const KleinPoint> points, const HullOptions& options = {});

/// Same as convex_hull but reports degeneracy as a value.
std::variant<Polytope, DegenerateHull> try_convex_hull(std::span<const KleinPoint> points,
                                                       const HullOptions& options = {});

/// Moves each point by at most `magnitude` (uniform in a ball), projecting
/// radially back inside 1 - kBoundaryTol when needed.
std::vector<KleinPoint> simplicial_perturbation(std::span<const KleinPoint> points,
                                                double magnitude, std::uint64_t seed);

inline constexpr double kContainsSlack = 1e-9;

bool contains(const Polytope& poly, const Vector& p, double slack = kContainsSlack);
bool contains(const Polytope& poly, const KleinPoint& p, double slack = kContainsSlack);

/// Minimum over facets of offset - normal·p (positive inside).
double interior_margin(const Polytope& poly, const Vector& p);

/// Cones conv(apex, F) over every facet F; apex must be strictly interior.
std::vector<Simplex> apex_triangulation(const Polytope& poly, const KleinPoint& apex);

/// Euclidean n-volume of a full simplex, |det| / n!.
double euclidean_volume(const Simplex& s);
double euclidean_volume(const Polytope& poly);

/// k-dimensional Euclidean measure of conv(p_0, ..., p_k), via the Gram determinant.
double euclidean_simplex_volume(std::span<const Vector> points);

/// Dump with stable field order: dim, vertices, facets, halfspaces.
nlohmann::ordered_json to_json(const Polytope& poly);

}  // namespace hypervol
