#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include "hypervol/cones.hpp"
#include "hypervol/experiments.hpp"
#include "hypervol/rng.hpp"

using namespace hypervol;

namespace {

// Volume of the solid swept by rotating the triangle conv(e1, m, 0) about the
// e1 axis, integrated in polar coordinates around the origin: along the ray at
// angle ψ from e1 the density integrates to radial_profile(n, atanh R(ψ)).
double revolution_volume_polar(int n, double ma, double mc) {
  const double psi_max = std::atan2(mc, ma);
  const double k = (ma - 1.0) / mc;
  auto f = [&](double psi) {
    // R = 1/D; D - 1 is formed without cancellation so atanh R stays accurate near the apex.
    const double s = std::sin(0.5 * psi);
    const double d_minus_1 = -2.0 * s * s - k * std::sin(psi);
    const double w = 0.5 * std::log1p(2.0 / d_minus_1);
    return std::pow(std::sin(psi), n - 2) * radial_profile(n, w);
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  // Below ψ = 1e-30 the integrand is O(ψ^{-1/2}) and the cut-off tail is O(1e-15).
  return sphere_area(n - 2) * integrator.integrate(f, 1e-30, psi_max, 1e-12);
}

ConeSection section_with_far_point(int n, double ma, double mc) {
  Vector far = Vector::Zero(n);
  far[0] = ma;
  far[1] = mc;
  return make_section(IdealPoint(Vector::Unit(n, 0)), Vector::Unit(n, 1), far);
}

Polytope ideal_square() {
  std::vector<KleinPoint> pts;
  for (int k = 0; k < 4; ++k) {
    const double a = k * std::numbers::pi / 2;
    pts.emplace_back(Vector{{kIdealTruncation * std::cos(a), kIdealTruncation * std::sin(a)}});
  }
  return convex_hull(pts);
}

}  // namespace

TEST(Cones, PlanarSectionMatchesAngleDefect) {
  for (const auto& [ma, mc] : {std::pair{0.5, 0.5}, {0.8, 0.1}, {0.3, 0.6}, {0.99, 0.01}}) {
    const ConeSection s = section_with_far_point(2, ma, mc);
    const double expected = triangle_area_2d(IdealPoint(Vector::Unit(2, 0)), KleinPoint(Vector{{ma, mc}}),
                                             KleinPoint::origin(2));
    EXPECT_NEAR(section_integral(2, s), expected, 1e-9 * expected) << ma << " " << mc;
  }
}

TEST(Cones, SolidOfRevolutionMatchesPolarRoute) {
  for (int n = 2; n <= 6; ++n) {
    for (const auto& [ma, mc] : {std::pair{0.5, 0.5}, {0.9, 0.05}, {0.2, 0.7}}) {
      const ConeSection s = section_with_far_point(n, ma, mc);
      const std::vector<ConeSection> one = {s};
      const double chart = cone_volume(one, n).value;
      const double polar = revolution_volume_polar(n, ma, mc);
      EXPECT_NEAR(chart, polar, 1e-8 * polar) << n << " " << ma << " " << mc;
    }
  }
}

TEST(Cones, OriginAngleOfASection) {
  const ConeSection s = section_with_far_point(3, 0.5, 0.5);
  EXPECT_NEAR(s.origin_angle, std::numbers::pi / 4, 1e-15);
  EXPECT_TRUE(s.capped);
  EXPECT_FALSE(section_with_far_point(3, 0.9, 0.01).capped);
}

TEST(Cones, TFunctionZerosAndSign) {
  for (double phi : {1e-4, 1e-2, 0.05, 0.09}) {
    const double s2 = std::sin(phi) * std::sin(phi);
    EXPECT_NEAR(t_function(0.0, phi), 0.0, 1e-12);
    EXPECT_NEAR(t_function(1.0, phi), 0.0, 1e-12);
    EXPECT_NEAR(t_function(s2, phi), 0.0, 1e-12);
    for (int k = 1; k < 1000; ++k) EXPECT_GE(t_function(k / 1000.0, phi), -1e-15);
  }
  EXPECT_THROW(t_function(1.5, 0.1), InvalidArgumentError);
}

TEST(Cones, PlanarBoundIsRightAngleDefect) {
  // For n = 2 the bounding triangle has angles 0, φ and π/2.
  for (double phi : {1e-6, 1e-4, 0.01, 0.09}) {
    EXPECT_NEAR(cone_integral_bound(2, phi), std::numbers::pi / 2 - phi, 1e-8);
  }
}

TEST(Cones, BoundStaysBelowMajorant) {
  for (int n = 2; n <= 8; ++n) {
    for (double phi : {1e-4, 1e-3, 0.01, 0.05, 0.099}) {
      const double bound = cone_integral_bound(n, phi, 1e-8);
      EXPECT_GT(bound, 0.0);
      EXPECT_LE(bound, cone_majorant(n, phi)) << n << " " << phi;
    }
  }
}

TEST(Cones, BoundMatchesPolarRouteForRightTriangle) {
  // The right triangle with legs along the axis has far point (cos²φ, sin φ cos φ).
  const double phi = 0.05;
  for (int n = 2; n <= 5; ++n) {
    const double ma = std::cos(phi) * std::cos(phi);
    const double mc = std::sin(phi) * std::cos(phi);
    const double polar = revolution_volume_polar(n, ma, mc) / sphere_area(n - 2);
    EXPECT_NEAR(cone_integral_bound(n, phi, 1e-10), polar, 1e-7 * polar) << n;
  }
}

TEST(Cones, FirstSummandClosedForm) {
  for (int n = 2; n <= 8; ++n) {
    for (double phi : {1e-4, 0.01, 0.09}) {
      const double closed = first_summand_closed_form(n, phi);
      EXPECT_NEAR(closed, 2.0 / (n - 1) * std::pow(std::cos(phi), n - 1), 1e-15);
      EXPECT_NEAR(first_summand_quadrature(n, phi), closed, 1e-8);
    }
  }
}

TEST(Cones, SecondSummands) {
  for (int n = 2; n <= 8; ++n) {
    const double phi = 0.01;
    EXPECT_LT(second_summand_as_printed(n, phi), 1.0);
    const double exact = second_summand_exact(n, phi);
    EXPECT_GT(exact, 0.0);
    // Near the apex the integrand behaves like u^{-(n+1)/2}, so the small-φ limit is 2/(n-1)².
    EXPECT_NEAR(exact * std::pow(std::cos(phi), n - 1), 2.0 / ((n - 1) * (n - 1)), 0.05 * 2.0 / ((n - 1) * (n - 1)));
  }
}

TEST(Cones, LemmaOneMatrices) {
  for (int n = 2; n <= 6; ++n) {
    for (int i = 0; i < n; ++i) {
      const Matrix t = lemma1_matrix(n, i);
      // ½I plus a rank-one update ½ e_i 1ᵀ: det = 2^{-n} (1 + 1).
      EXPECT_NEAR(t.determinant(), std::ldexp(1.0, 1 - n), 1e-14);
      // Total barycentric weight is preserved.
      for (int c = 0; c < n; ++c) EXPECT_NEAR(t.col(c).sum(), 1.0, 1e-15);
    }
  }
}

TEST(Cones, LemmaOneMapAgreesWithMatrixAndDominates) {
  CounterRng rng(4, 4);
  for (int n = 2; n <= 5; ++n) {
    std::vector<Vector> vertices;
    for (int j = 0; j < n; ++j) vertices.push_back(rng.direction(n));
    for (int trial = 0; trial < 2000; ++trial) {
      BarycentricPoint y{vertices, {}};
      double total = 0.0;
      for (int j = 0; j < n; ++j) {
        y.weights.push_back(-std::log(rng.uniform_open()));
        total += y.weights.back();
      }
      total += -std::log(rng.uniform_open());
      for (double& w : y.weights) w /= total;
      for (int i = 0; i < n; ++i) {
        const Vector alpha = lemma1_matrix(n, i) * Eigen::Map<const Vector>(y.weights.data(), n);
        Vector expected = Vector::Zero(n);
        for (int j = 0; j < n; ++j) expected += alpha[j] * vertices[static_cast<std::size_t>(j)];
        EXPECT_LT((lemma1_map(y, i) - expected).norm(), 1e-14);
      }
      const int l = dominant_map_index(y);
      EXPECT_GE(lemma1_map(y, l).norm(), y.point().norm() - 1e-15);
    }
  }
}

TEST(Cones, BoundaryRayOnIdealSquare) {
  const Polytope sq = ideal_square();
  int east = -1;
  for (int v = 0; v < 4; ++v) {
    if (sq.vertices[static_cast<std::size_t>(v)][0] > 0.5) east = v;
  }
  ASSERT_GE(east, 0);
  const BoundaryRay ray = boundary_ray(sq, sq.vertices[static_cast<std::size_t>(east)].coords(), Vector::Unit(2, 1));
  EXPECT_NEAR(ray.y.direction()[1], 1.0, 1e-5);
  EXPECT_NEAR(ray.z[1], kIdealTruncation, 1e-9);
  EXPECT_LE(ray.t_z, ray.t_y);
  EXPECT_NEAR(ray.direction.dot(Vector{{-1.0, 1.0}}.normalized()), 1.0, 1e-9);
}

TEST(Cones, VertexConeMembershipOnSquare) {
  const Polytope sq = ideal_square();
  int east = 0;
  for (int v = 0; v < 4; ++v) {
    if (sq.vertices[static_cast<std::size_t>(v)][0] > 0.5) east = v;
  }
  EXPECT_TRUE(in_vertex_cone(sq, east, Vector{{0.5, 0.1}}, ConeKind::truncated));
  EXPECT_TRUE(in_vertex_cone(sq, east, Vector{{0.5, -0.1}}, ConeKind::full));
  EXPECT_FALSE(in_vertex_cone(sq, east, Vector{{0.2, 0.3}}, ConeKind::truncated));
  EXPECT_FALSE(in_vertex_cone(sq, east, Vector{{-0.5, 0.1}}, ConeKind::full));
  EXPECT_TRUE(in_vertex_cone(sq, east, Vector{{0.7, 0.0}}, ConeKind::full));
}

TEST(Cones, SquareConeSectionsAreSymmetric) {
  const Polytope sq = ideal_square();
  const auto sections = cone_sections(sq, 0, 2, ConeKind::full);
  ASSERT_EQ(sections.size(), 2u);
  EXPECT_NEAR(sections[0].origin_angle, std::numbers::pi / 4, 1e-6);
  EXPECT_NEAR(sections[1].origin_angle, std::numbers::pi / 4, 1e-6);
  const double expected = 2.0 * triangle_area_2d(IdealPoint(Vector::Unit(2, 0)), KleinPoint(Vector{{0.5, 0.5}}),
                                                 KleinPoint::origin(2));
  // Sections are taken at whichever vertex index 0 is; the square is symmetric.
  EXPECT_NEAR(cone_volume(sections, 2).value, expected, 1e-5);
}

TEST(Cones, TangentDirectionsAreUnitAndOrthogonal) {
  CounterRng rng(2, 2);
  for (int n = 2; n <= 5; ++n) {
    const Vector apex = rng.direction(n);
    const auto dirs = tangent_directions(apex, 16);
    EXPECT_EQ(dirs.size(), n == 2 ? 2u : 16u);
    for (const auto& d : dirs) {
      EXPECT_NEAR(d.norm(), 1.0, 1e-13);
      EXPECT_NEAR(d.dot(apex), 0.0, 1e-13);
    }
  }
  EXPECT_THROW(cone_sections(convex_hull(uniform_ideal_points(3, 12, 1)), 0, 4, ConeKind::full), InvalidArgumentError);
}

TEST(Cones, FacetDecompositionHoldsOnASmallPolytope) {
  const Polytope poly = convex_hull(uniform_ideal_points(2, 7, 3));
  for (int f = 0; f < static_cast<int>(poly.facets.size()); ++f) {
    const auto report = verify_facet_decomposition(poly, f, 20'000, 9);
    EXPECT_TRUE(report.holds) << f;
    EXPECT_EQ(report.pieces.size(), 2u);
    EXPECT_EQ(report.bound, 4.0);
  }
}

TEST(Cones, DensifiedNetReducesOriginAngles) {
  const Polytope sq = ideal_square();
  std::vector<KleinPoint> pts(sq.vertices.begin(), sq.vertices.end());
  const auto dense = densify_net(pts, 2, 2);
  EXPECT_GT(dense.size(), pts.size());
  const Polytope hull = convex_hull(dense);
  double worst = 0.0;
  for (int v = 0; v < static_cast<int>(hull.vertices.size()); ++v) {
    for (const auto& s : cone_sections(hull, v, 2, ConeKind::full)) worst = std::max(worst, s.origin_angle);
  }
  EXPECT_LT(worst, std::numbers::pi / 4 - 1e-3);
}
