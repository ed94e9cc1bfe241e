#pragma once

// Vertex cones of a polytope with (near-)ideal vertices.
//
// For a vertex x and a unit tangent θ ⊥ x, the section of the polytope by the
// half-plane span⁺{x, θ} is a convex polygon. Its boundary edge leaving x
// (away from the origin) lies on a line that meets the polytope again at z
// and the unit sphere again at y. The cone sections are the planar triangles
// conv(x, (x + y)/2, 0) and conv(x, (x + z)/2, 0); unions over θ give the
// cones C_x and C̃_x.
//
// Section integrals use the chart (u, v) ↦ (1 - u) x + v θ anchored at the
// ideal apex, in which the revolution integrand is v^{n-2} v_n and the
// integral over v has a closed form.

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypervol/hull.hpp"
#include "hypervol/klein.hpp"
#include "hypervol/volume.hpp"

namespace hypervol {

/// θ leaves the polytope immediately: the section is a segment.
class NoSectionError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// The bounding integral exceeded kSingularAbort.
class SingularIntegralError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

inline constexpr double kSingularAbort = 1e9;

/// Sections with origin angle at or above this are flagged (arctan(1/10)).
inline const double kPhiCap = std::atan(0.1);

/// Radius at which ideal polytope vertices are represented.
inline constexpr double kIdealTruncation = 1.0 - 1e-6;

enum class ConeKind {
  full,       // C_x, far point (x + y)/2
  truncated,  // C̃_x, far point (x + z)/2
};

struct BoundaryRay {
  IdealPoint y;
  Vector z;
  /// Unit direction of the boundary line at the vertex, in span{x, θ}.
  Vector direction;
  /// Parameters along `direction` from the vertex: z at t_z, y at t_y >= t_z.
  double t_z;
  double t_y;
};

/// `vertex` is a polytope vertex (the truncated representative of an ideal
/// point); the polytope must contain the origin in its interior.
BoundaryRay boundary_ray(const Polytope& poly, const Vector& vertex, const Vector& theta);

struct ConeSection {
  IdealPoint apex;
  Vector direction;
  Vector far_point;
  double origin_angle;
  /// origin_angle >= kPhiCap
  bool capped = false;
};

/// Unit tangent directions at `apex`: ±θ for n = 2, a uniform circle grid for
/// n = 3, and a Halton-based spherical point set for n >= 4.
std::vector<Vector> tangent_directions(const Vector& apex, int grid);

/// One section per grid direction at poly.vertices[vertex]. grid >= 8 (ignored for n = 2).
std::vector<ConeSection> cone_sections(const Polytope& poly, int vertex, int grid, ConeKind kind);

/// Section from the triangle conv(apex, far_point, 0).
ConeSection make_section(const IdealPoint& apex, const Vector& theta, const Vector& far_point);

/// ∫∫_{section} v^{n-2} v_n du dv in the apex chart.
double section_integral(int n, const ConeSection& section, double rel_tol = 1e-10);

/// σ_{n-2} times the mean section integral (for n = 2, the sum of both sections).
VolumeEstimate cone_volume(std::span<const ConeSection> sections, int n, double rel_tol = 1e-10);

/// The piecewise-linear upper boundary of the right-triangle section with origin angle φ.
double cone_l_function(double u, double phi);

/// t(u) = u - u² - L(u)².
double t_function(double u, double phi);

/// ∫_0^1 ∫_0^{L(u)} v^{n-2} / (1 - (1-u)² - v²)^{(n+1)/2} dv du by nested
/// adaptive quadrature. Throws SingularIntegralError above kSingularAbort.
double cone_integral_bound(int n, double phi, double rel_tol = 1e-10);

/// ∫_0^{sin²φ} (cot φ)^{n-1} u^{(n-3)/2} du by quadrature, and its closed form (2/(n-1)) cos^{n-1} φ.
double first_summand_quadrature(int n, double phi);
double first_summand_closed_form(int n, double phi);

/// The second summand exactly as displayed: (1/(n-1)) ∫ (tan φ)^{n-1} (1-u)^{(n-3)/2} du over [sin²φ, 1].
double second_summand_as_printed(int n, double phi);

/// The second summand that the majorization chain actually produces:
/// (1/(n-1)) ∫ (tan φ)^{n-1} (1-u)^{n-1} u^{-(n+1)/2} du over [sin²φ, 1].
double second_summand_exact(int n, double phi);

/// Additive constant of the majorant; the bound is stated with an unspecified
/// C'_n and 0 is the value tested here.
inline constexpr double kMajorantConstant = 0.0;

/// (2/(n-1)) cos^{n-1} φ + 1 + kMajorantConstant.
double cone_majorant(int n, double phi);

/// Point of D = conv(0, x_1..x_n) as y = Σ α_j x_j with α_j >= 0, Σ α_j <= 1.
struct BarycentricPoint {
  std::vector<Vector> vertices;
  std::vector<double> weights;

  Vector point() const;
};

/// T_i(y) = ½ Σ α_j x_j + ½ (Σ α_j) x_i, with 0-based i. Returns a Vector
/// because vertices may be ideal.
Vector lemma1_map(const BarycentricPoint& y, int i);

/// ℓ(y) = argmax_i |T_i(y)|, lowest index on ties.
int dominant_map_index(const BarycentricPoint& y);

/// T_i in barycentric coordinates: ½ I + ½ e_i 1ᵀ.
Matrix lemma1_matrix(int n, int i);

/// Membership in C̃_x (or C_x) for the polytope vertex poly.vertices[vertex].
bool in_vertex_cone(const Polytope& poly, int vertex, const Vector& p, ConeKind kind);

struct FacetDecompositionReport {
  int dim = 0;
  VolumeEstimate facet_cone;            // Vol(D)
  std::vector<VolumeEstimate> pieces;   // Vol(D_i)
  double ratio = 0.0;                   // Vol(D) / Σ Vol(D_i)
  double bound = 0.0;                   // 2^n
  /// Vol(D) <= 2^n Σ Vol(D_i) + 3σ.
  bool holds = false;
  bool low_confidence = false;
};

/// Estimates Vol(D) and Vol(D ∩ C̃_{x_i}) for the facet poly.facets[facet]
/// from one shared sample stream over D = conv(0, F).
FacetDecompositionReport verify_facet_decomposition(const Polytope& poly, int facet,
                                                    std::int64_t samples, std::uint64_t seed,
                                                    int threads = 1);

/// Adds truncated ideal points next to every vertex whose sections exceed the
/// φ cap, then rebuilds the hull; repeats up to `max_rounds` times.
std::vector<KleinPoint> densify_net(std::span<const KleinPoint> ideal_points, int grid,
                                    int max_rounds = 8);

/// apex, grid, per-direction φ and integral, assembled volume and majorant comparison.
nlohmann::ordered_json cone_report(const Polytope& poly, int vertex, int grid, ConeKind kind);

}  // namespace hypervol
