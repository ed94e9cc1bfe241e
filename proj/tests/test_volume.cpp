#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hypervol/cones.hpp"
#include "hypervol/experiments.hpp"
#include "hypervol/hull.hpp"
#include "hypervol/rng.hpp"
#include "hypervol/volume.hpp"

using namespace hypervol;

namespace {

Vector unit_at(double angle) {
  Vector v(2);
  v << std::cos(angle), std::sin(angle);
  return v;
}

// Angle defect from side lengths via the hyperbolic law of cosines.
double gauss_bonnet_area(const KleinPoint& a, const KleinPoint& b, const KleinPoint& c) {
  const double ab = dist(a, b);
  const double bc = dist(b, c);
  const double ca = dist(c, a);
  auto angle = [](double opposite, double s1, double s2) {
    const double cosine = (std::cosh(s1) * std::cosh(s2) - std::cosh(opposite)) / (std::sinh(s1) * std::sinh(s2));
    return std::acos(std::clamp(cosine, -1.0, 1.0));
  };
  return std::numbers::pi - angle(bc, ab, ca) - angle(ca, ab, bc) - angle(ab, bc, ca);
}

Simplex random_simplex(int n, double radius, CounterRng& rng) {
  Simplex s;
  for (int i = 0; i <= n; ++i) s.vertices.emplace_back(radius * std::pow(rng.uniform(), 1.0 / n) * rng.direction(n));
  return s;
}

VolumeBudget mc_budget(std::int64_t samples, std::uint64_t seed, int threads = 1) {
  VolumeBudget b;
  b.method = VolumeMethod::monte_carlo;
  b.samples = samples;
  b.seed = seed;
  b.threads = threads;
  return b;
}

}  // namespace

TEST(Volume, TriangleQuadratureMatchesAngleDefect) {
  CounterRng rng(21, 0);
  VolumeBudget budget;
  budget.rel_tol = 1e-8;
  for (int trial = 0; trial < 20; ++trial) {
    const Simplex s = random_simplex(2, 0.999, rng);
    const double expected = gauss_bonnet_area(s.vertices[0], s.vertices[1], s.vertices[2]);
    const VolumeEstimate q = simplex_volume(s, budget);
    EXPECT_NEAR(q.value, expected, 1e-7 * std::max(expected, 1e-3)) << trial;
    VolumeBudget exact;
    exact.method = VolumeMethod::exact_2d;
    EXPECT_NEAR(simplex_volume(s, exact).value, expected, 1e-10);
  }
}

TEST(Volume, TriangleMonteCarloWithinThreeSigma) {
  CounterRng rng(22, 0);
  for (int trial = 0; trial < 4; ++trial) {
    const Simplex s = random_simplex(2, 0.99, rng);
    const double expected = gauss_bonnet_area(s.vertices[0], s.vertices[1], s.vertices[2]);
    const VolumeEstimate mc = simplex_volume(s, mc_budget(200'000, 100 + trial));
    EXPECT_GT(mc.std_error, 0.0);
    EXPECT_LE(std::abs(mc.value - expected), 4.0 * mc.std_error) << trial;
  }
}

TEST(Volume, IdealTriangleHasAreaPi) {
  const IdealPoint a(unit_at(0.1));
  const IdealPoint b(unit_at(2.0));
  const IdealPoint c(unit_at(4.4));
  EXPECT_NEAR(triangle_area_2d(a, b, c), std::numbers::pi, 1e-14);
  Simplex s;
  for (double t : {0.1, 2.0, 4.4}) s.vertices.emplace_back(kIdealTruncation * unit_at(t));
  VolumeBudget budget;
  budget.rel_tol = 1e-8;
  // Each truncated vertex keeps an interior angle of order sqrt(1 - r).
  EXPECT_NEAR(simplex_volume(s, budget).value, std::numbers::pi, 1e-2);
}

TEST(Volume, OriginConeOverIdealEdge) {
  // conv(0, x, y) with x, y ideal at angle α: two zero angles, area π - α.
  for (double alpha : {0.3, 1.0, 2.5}) {
    const std::vector<Vector> facet = {unit_at(0.0), unit_at(alpha)};
    VolumeBudget budget;
    budget.rel_tol = 1e-9;
    EXPECT_NEAR(origin_cone_volume(facet, budget).value, std::numbers::pi - alpha, 1e-7);
  }
}

TEST(Volume, KleinAngleAtOrigin) {
  EXPECT_NEAR(klein_angle(Vector::Zero(2), unit_at(0.0), unit_at(1.0)), 1.0, 1e-15);
  // Away from the origin the Klein chart is not conformal.
  const Vector at = 0.5 * unit_at(0.0);
  EXPECT_NEAR(klein_angle(at, unit_at(std::numbers::pi / 2), unit_at(0.0)), std::numbers::pi / 2, 1e-14);
  const double skew = klein_angle(at, unit_at(std::numbers::pi / 4), unit_at(0.0));
  EXPECT_NEAR(skew, std::atan(std::sqrt(0.75)), 1e-14);
}

TEST(Volume, TinySimplexIsEuclidean) {
  CounterRng rng(3, 3);
  for (int n = 2; n <= 4; ++n) {
    const Simplex s = random_simplex(n, 1e-3, rng);
    const double euclid = euclidean_volume(s);
    EXPECT_NEAR(simplex_volume(s).value, euclid, 1e-5 * euclid);
  }
}

TEST(Volume, RegularIdealTetrahedron) {
  Simplex s;
  const double c = 1.0 / std::sqrt(3.0);
  for (const auto& v : {Vector::Constant(3, c).eval(), Vector{{c, -c, -c}}, Vector{{-c, c, -c}},
                        Vector{{-c, -c, c}}}) {
    s.vertices.emplace_back(kIdealTruncation * v);
  }
  VolumeBudget budget;
  budget.rel_tol = 1e-7;
  // 3 Л(π/3), the maximal volume of a tetrahedron in H³.
  EXPECT_NEAR(simplex_volume(s, budget).value, 1.0149416064096536, 1e-4);
}

TEST(Volume, SimplexVolumeIsIsometryInvariant) {
  CounterRng rng(8, 8);
  VolumeBudget budget;
  budget.rel_tol = 1e-8;
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 2 + trial % 2;
    const Simplex s = random_simplex(n, 0.9, rng);
    const Isometry g = Isometry::random(n, 1.0, 50 + trial);
    Simplex moved;
    for (const auto& v : s.vertices) moved.vertices.push_back(g.apply(v));
    const double a = simplex_volume(s, budget).value;
    EXPECT_NEAR(simplex_volume(moved, budget).value, a, 1e-6 * a) << trial;
  }
}

TEST(Volume, MonteCarloAgreesWithQuadratureInThreeDimensions) {
  CounterRng rng(9, 9);
  const Simplex s = random_simplex(3, 0.95, rng);
  const double q = simplex_volume(s).value;
  const VolumeEstimate mc = simplex_volume(s, mc_budget(200'000, 4));
  EXPECT_LE(std::abs(mc.value - q), 4.0 * mc.std_error);
}

TEST(Volume, MonteCarloIsIndependentOfThreadCount) {
  CounterRng rng(10, 10);
  const Simplex s = random_simplex(3, 0.9, rng);
  const VolumeEstimate one = simplex_volume(s, mc_budget(50'000, 77, 1));
  const VolumeEstimate three = simplex_volume(s, mc_budget(50'000, 77, 3));
  EXPECT_EQ(one.value, three.value);
  EXPECT_EQ(one.std_error, three.std_error);
  EXPECT_NE(one.value, simplex_volume(s, mc_budget(50'000, 78, 1)).value);
}

TEST(Volume, HighDimensionFallsBackToMonteCarlo) {
  CounterRng rng(12, 12);
  const Simplex s = random_simplex(5, 0.5, rng);
  const VolumeEstimate e = simplex_volume(s, VolumeBudget{.samples = 20'000});
  EXPECT_EQ(e.method, VolumeMethod::monte_carlo);
  EXPECT_GT(e.value, euclidean_volume(s));
}

TEST(Volume, PolygonQuadratureMatchesAngleDefectSum) {
  const auto pts = uniform_ideal_points(2, 16, 5);
  const Polytope poly = convex_hull(pts);
  VolumeBudget budget;
  budget.rel_tol = 1e-9;
  VolumeBudget exact;
  exact.method = VolumeMethod::exact_2d;
  const double e = polytope_volume(poly, exact).value;
  EXPECT_NEAR(polytope_volume(poly, budget).value, e, 1e-7 * e);
  // Fan from one vertex in angular order, each triangle by the law of cosines.
  std::vector<KleinPoint> ring = poly.vertices;
  std::sort(ring.begin(), ring.end(), [](const KleinPoint& a, const KleinPoint& b) {
    return std::atan2(a[1], a[0]) < std::atan2(b[1], b[0]);
  });
  double fan = 0.0;
  for (std::size_t i = 1; i + 1 < ring.size(); ++i) fan += gauss_bonnet_area(ring[0], ring[i], ring[i + 1]);
  EXPECT_NEAR(e, fan, 1e-8 * fan);
  EXPECT_LT(e, 14.0 * std::numbers::pi);
}

TEST(Volume, PolytopeWithOffCentreApex) {
  // All vertices in one half-disc: the origin is outside and the apex moves to the barycentre.
  std::vector<KleinPoint> pts;
  for (double t : {0.2, 0.8, 1.4, 2.0}) pts.emplace_back(0.9 * unit_at(t));
  const Polytope poly = convex_hull(pts);
  VolumeBudget exact;
  exact.method = VolumeMethod::exact_2d;
  const double expected = gauss_bonnet_area(pts[0], pts[1], pts[2]) + gauss_bonnet_area(pts[0], pts[2], pts[3]);
  EXPECT_NEAR(polytope_volume(poly).value, expected, 1e-6 * expected);
  EXPECT_NEAR(polytope_volume(poly, exact).value, expected, 1e-10);
}

TEST(Volume, DegenerateHullHasZeroVolume) {
  std::vector<KleinPoint> pts = {KleinPoint(Vector{{0.1, 0.0, 0.0}}), KleinPoint(Vector{{0.0, 0.2, 0.0}}),
                                 KleinPoint(Vector{{0.3, 0.3, 0.0}}), KleinPoint(Vector{{-0.2, 0.1, 0.0}})};
  const VolumeEstimate e = hull_volume(pts);
  EXPECT_TRUE(e.degenerate);
  EXPECT_EQ(e.value, 0.0);
}

TEST(Volume, RegionMonteCarloOnBalls) {
  for (int n = 2; n <= 4; ++n) {
    for (double r : {0.5, 2.0}) {
      Vector c = Vector::Zero(n);
      c[0] = 0.4;
      const KleinPoint centre(c);
      Region region;
      region.membership = [&](const Vector& x) { return dist(KleinPoint(x), centre) <= r; };
      region.bounding_radius = std::tanh(dist_from_origin(c) + r);
      const VolumeEstimate e = region_volume_mc(region, n, 200'000, 31 * n);
      EXPECT_LE(std::abs(e.value - ball_volume(n, r)), 4.0 * e.std_error) << n << " " << r;
      EXPECT_LT(e.std_error, 0.05 * e.value);
    }
  }
}

TEST(Volume, EmptyRegionIsLowConfidence) {
  Region region;
  region.membership = [](const Vector&) { return false; };
  region.bounding_radius = 0.5;
  const VolumeEstimate e = region_volume_mc(region, 2, 1000, 1);
  EXPECT_EQ(e.value, 0.0);
  EXPECT_TRUE(e.low_confidence);
  EXPECT_GT(e.std_error, 0.0);
}

TEST(Volume, SharedStreamRegionsOnASimplex) {
  CounterRng rng(13, 13);
  const Simplex s = random_simplex(2, 0.9, rng);
  std::vector<std::function<bool(const Vector&)>> members = {
      [](const Vector&) { return true; }, [](const Vector& x) { return x[0] > 0.0; },
      [](const Vector& x) { return x[0] <= 0.0; }};
  const auto est = simplex_region_volumes(s, members, 100'000, 5);
  ASSERT_EQ(est.size(), 3u);
  EXPECT_NEAR(est[1].value + est[2].value, est[0].value, 1e-9 * est[0].value);
  const double expected = gauss_bonnet_area(s.vertices[0], s.vertices[1], s.vertices[2]);
  EXPECT_LE(std::abs(est[0].value - expected), 4.0 * est[0].std_error);
}

TEST(Volume, LorentzBarycentreOfSymmetricPoints) {
  std::vector<KleinPoint> pts;
  for (int k = 0; k < 5; ++k) pts.emplace_back(0.7 * unit_at(2.0 * std::numbers::pi * k / 5));
  EXPECT_LT(lorentz_barycenter(pts).norm(), 1e-14);
}
