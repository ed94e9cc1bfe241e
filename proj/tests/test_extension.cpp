#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hypervol/experiments.hpp"
#include "hypervol/extension.hpp"
#include "hypervol/rng.hpp"

using namespace hypervol;

TEST(Extension, GreedyPackingIsSeparatedAndCovering) {
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 3;
    const auto pts = uniform_ball_points(n, 200, 2.0, 40 + trial);
    const PackingResult pack = greedy_packing(pts, 0.8, trial);
    const PackingCertificate cert = certify_packing(pack, pts);
    EXPECT_TRUE(cert.separated);
    EXPECT_TRUE(cert.covering);
    EXPECT_EQ(pack.centers.size(), pack.indices.size());
    for (std::size_t k = 0; k < pack.centers.size(); ++k) {
      EXPECT_EQ(pack.centers[k], pts[static_cast<std::size_t>(pack.indices[k])]);
    }
  }
}

TEST(Extension, PackingDependsOnlyOnSeed) {
  const auto pts = uniform_ball_points(2, 100, 2.0, 1);
  EXPECT_EQ(greedy_packing(pts, 0.5, 3).indices, greedy_packing(pts, 0.5, 3).indices);
  const PackingResult single = greedy_packing(std::vector<KleinPoint>{pts.front()}, 0.5, 0);
  EXPECT_TRUE(std::isinf(certify_packing(single, std::vector<KleinPoint>{pts.front()}).min_center_distance));
  EXPECT_THROW(greedy_packing(pts, 0.0, 1), InvalidArgumentError);
}

TEST(Extension, SandwichHoldsOnEveryProbe) {
  const auto pts = clustered_points(3, 40, 2.0, 0.5, 6);
  const PackingResult pack = greedy_packing(pts, 0.7, 2);
  const SandwichReport report = sandwich_check(pack, pts, 5000, 8);
  EXPECT_EQ(report.probes, 5000);
  EXPECT_EQ(report.inner_violations, 0);
  EXPECT_EQ(report.outer_violations, 0);
}

TEST(Extension, UnionMembershipUsesHyperbolicDistance) {
  Vector c(2);
  c << 0.6, 0.0;
  const UnionOfBalls balls({KleinPoint(c)}, 0.5);
  CounterRng rng(1, 1);
  for (int i = 0; i < 500; ++i) {
    const Vector p = 0.95 * rng.uniform() * rng.direction(2);
    const double d = dist(KleinPoint(p), KleinPoint(c));
    if (std::abs(d - 0.5) < 1e-9) continue;
    EXPECT_EQ(balls.contains(p), d < 0.5);
    if (d < 0.5) {
      EXPECT_LT(p.norm(), balls.bounding_radius());
    }
  }
}

TEST(Extension, SingleAndDisjointBallsAreExact) {
  // With multiplicity 1 everywhere every weight equals N Vol(B_ε).
  Vector c(3);
  c << 0.2, -0.3, 0.1;
  const VolumeEstimate one = extension_volume(std::vector<KleinPoint>{KleinPoint(c)}, 0.7, 10'000, 1);
  EXPECT_NEAR(one.value, ball_volume(3, 0.7), 1e-12);
  // Only rounding in the variance accumulator remains.
  EXPECT_LT(one.std_error, 1e-8 * one.value);
  std::vector<KleinPoint> far = {KleinPoint(Vector{{0.9, 0.0, 0.0}}), KleinPoint(Vector{{-0.9, 0.0, 0.0}})};
  EXPECT_NEAR(extension_volume(far, 0.5, 10'000, 2).value, 2.0 * ball_volume(3, 0.5), 1e-12);
}

TEST(Extension, OverlappingBallsMatchRegionMonteCarlo) {
  const std::vector<KleinPoint> pts = {KleinPoint(Vector{{0.1, 0.0}}), KleinPoint(Vector{{-0.2, 0.1}}),
                                       KleinPoint(Vector{{0.0, 0.3}})};
  const VolumeEstimate mixture = extension_volume(pts, 0.6, 200'000, 3);
  const UnionOfBalls balls(pts, 0.6);
  const VolumeEstimate direct = region_volume_mc(balls.region(), 2, 200'000, 4);
  const double sigma = std::hypot(mixture.std_error, direct.std_error);
  EXPECT_LE(std::abs(mixture.value - direct.value), 4.0 * sigma);
  EXPECT_LT(mixture.value, 3.0 * ball_volume(2, 0.6));
  EXPECT_GT(mixture.value, ball_volume(2, 0.6));
}

TEST(Extension, PackingLowerBound) {
  const auto pts = uniform_ball_points(2, 80, 2.5, 12);
  const PackingResult pack = greedy_packing(pts, 1.0, 5);
  const VolumeEstimate v = extension_volume(pts, 1.0, 100'000, 6);
  const double lower = static_cast<double>(pack.centers.size()) * ball_volume(2, 0.5);
  EXPECT_GE(v.value + 3.0 * v.std_error, lower);
}

TEST(Extension, ExtensionVolumeIsIndependentOfThreadCount) {
  const auto pts = clustered_points(2, 30, 2.0, 0.5, 3);
  const VolumeEstimate a = extension_volume(pts, 0.5, 40'000, 9, 1);
  const VolumeEstimate b = extension_volume(pts, 0.5, 40'000, 9, 4);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(Extension, HullOfExtensionGrowsWithSamples) {
  const std::vector<KleinPoint> pts = {KleinPoint(Vector{{0.3, 0.0}}), KleinPoint(Vector{{-0.3, 0.0}})};
  const auto coarse = std::get<Polytope>(hull_of_extension(pts, 1.0, 16, 1));
  const auto fine = std::get<Polytope>(hull_of_extension(pts, 1.0, 256, 1));
  EXPECT_LE(euclidean_volume(coarse), euclidean_volume(fine));
}

TEST(Extension, TwoPointRatioApproachesAPlateau) {
  VolumeBudget budget;
  budget.samples = 100'000;
  double previous = 1.0;
  for (double d : {0.5, 3.0, 8.0}) {
    Vector e = Vector::Zero(2);
    e[0] = std::tanh(0.5 * d);
    const std::vector<KleinPoint> pts = {KleinPoint(e), KleinPoint(Vector(-e))};
    const ExtensionRatio r = theorem2_ratio(pts, 1.0, 256, budget);
    EXPECT_GE(r.ratio, 1.0 - 3.0 * r.ratio_rel_error);
    EXPECT_GE(r.ratio, previous - 0.01);
    EXPECT_LT(r.ratio, 1.5);
    previous = r.ratio;
  }
}

TEST(Extension, TwoPointRatioMatchesGaussBonnet) {
  // Two disjoint ε-discs at distance d: the hull is two arcs joined by common
  // tangent geodesics. With α the angle at a centre between the other centre
  // and a tangent point, cos α = tanh ε tanh(d/2) and Gauss-Bonnet gives
  // area 4(π - α) cosh ε - 2π.
  const double eps = 1.0;
  VolumeBudget budget;
  budget.samples = 200'000;
  for (double d : {5.0, 10.0}) {
    const double alpha = std::acos(std::tanh(eps) * std::tanh(0.5 * d));
    const double hull = 4.0 * (std::numbers::pi - alpha) * std::cosh(eps) - 2.0 * std::numbers::pi;
    const double expected = hull / (2.0 * ball_volume(2, eps));
    Vector e = Vector::Zero(2);
    e[0] = std::tanh(0.5 * d);
    const std::vector<KleinPoint> pts = {KleinPoint(e), KleinPoint(Vector(-e))};
    const ExtensionRatio r = theorem2_ratio(pts, eps, 256, budget);
    // The sampled hull sits inside the true one, short by about 0.1% at 256 samples.
    EXPECT_LE(r.ratio, expected * (1.0 + 3.0 * r.ratio_rel_error));
    EXPECT_GE(r.ratio, expected * (1.0 - 0.003 - 3.0 * r.ratio_rel_error)) << d;
  }
}

TEST(Extension, EuclideanRatioGrowsLinearly) {
  // Two Euclidean unit discs at distance d: hull area πε² + 2εd against a union of at most 2πε².
  for (double d : {4.0, 10.0}) {
    const std::vector<Vector> pts = {Vector{{0.0, 0.0}}, Vector{{d, 0.0}}};
    const ExtensionRatio r = euclidean_extension_ratio(pts, 1.0, 512, 400'000, 7);
    const double expected = (std::numbers::pi + 2.0 * d) / (2.0 * std::numbers::pi);
    EXPECT_NEAR(r.ratio, expected, 0.01 * expected) << d;
  }
}
