#include <cmath>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "hypervol/experiments.hpp"

using namespace hypervol;

namespace {

std::string csv_of(const RunConfig& config) {
  std::ostringstream out;
  write_csv(out, run_command(config).table);
  return out.str();
}

RunConfig small_config(const std::string& command, int threads) {
  RunConfig c;
  c.command = command;
  c.seed = 17;
  c.threads = threads;
  c.budget.threads = threads;
  c.budget.seed = c.seed;
  c.budget.samples = 20'000;
  c.dimensions = {2};
  c.sizes = {8, 16};
  c.replicates = 2;
  c.distances = {1, 6};
  c.cluster_instances = 2;
  c.cluster_size = 6;
  c.boundary_samples = 32;
  c.phis = {1e-3, 0.05};
  c.cone_max_dim = 4;
  c.points = 6;
  c.annealing.steps = 15;
  c.separations = {1.0};
  c.thresholds = {0.2, 0.5};
  return c;
}

}  // namespace

TEST(Experiments, ConfigRoundTrips) {
  RunConfig c = small_config("theorem2-check", 3);
  c.family = PointFamily::clustered;
  c.budget.method = VolumeMethod::monte_carlo;
  const auto j = to_json(c);
  const RunConfig back = run_config_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(to_json(back).dump(), j.dump());
  EXPECT_EQ(back.budget.seed, c.seed);
  EXPECT_EQ(back.budget.threads, 3);
}

TEST(Experiments, ConfigRejectsUnknownKeys) {
  EXPECT_THROW(run_config_from_json(nlohmann::json::parse(R"({"command": "cone-table", "sede": 3})")),
               InvalidArgumentError);
  EXPECT_THROW(run_config_from_json(nlohmann::json::parse("[1, 2]")), InvalidArgumentError);
  EXPECT_THROW(run_config_from_json(nlohmann::json::parse(R"({"family": "gaussian"})")), InvalidArgumentError);
  RunConfig c;
  c.command = "no-such-command";
  EXPECT_THROW(run_command(c), InvalidArgumentError);
}

TEST(Experiments, FamilyNamesRoundTrip) {
  for (auto f : {PointFamily::uniform_ideal, PointFamily::uniform_ball, PointFamily::clustered}) {
    EXPECT_EQ(point_family_from_string(to_string(f)), f);
  }
}

TEST(Experiments, GeneratorsRespectTheirSupport) {
  for (const auto& p : uniform_ideal_points(3, 50, 1)) EXPECT_NEAR(p.norm(), 1.0 - 1e-6, 1e-12);
  for (const auto& p : uniform_ball_points(3, 50, 2.0, 2)) EXPECT_LE(dist_from_origin(p.coords()), 2.0 + 1e-12);
  const auto simplex = regular_simplex(3, 2.0);
  ASSERT_EQ(simplex.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) EXPECT_NEAR(dist(simplex[i], simplex[j]), 2.0, 1e-10);
  }
}

TEST(Experiments, CellsRoundTripDoubles) {
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(cell(x)), x);
  EXPECT_EQ(cell(true), "1");
  CsvTable t;
  t.header = {"a", "b"};
  EXPECT_THROW(t.add({"1"}), InvalidArgumentError);
}

TEST(Experiments, LogLogSlope) {
  EXPECT_NEAR(loglog_slope({1, 2, 4, 8}, {3, 12, 48, 192}), 2.0, 1e-12);
  EXPECT_THROW(loglog_slope({1}, {1}), InvalidArgumentError);
}

class Reproducible : public ::testing::TestWithParam<std::string> {};

TEST_P(Reproducible, CsvIsBitwiseStableAcrossRunsAndThreads) {
  const std::string once = csv_of(small_config(GetParam(), 1));
  EXPECT_EQ(once, csv_of(small_config(GetParam(), 1)));
  EXPECT_EQ(once, csv_of(small_config(GetParam(), 3)));
  EXPECT_GT(std::count(once.begin(), once.end(), '\n'), 1);
}

INSTANTIATE_TEST_SUITE_P(Commands, Reproducible,
                         ::testing::Values("theorem1-sweep", "theorem2-check", "cone-table", "extremal-search",
                                           "mass-near-vertices"),
                         [](const auto& info) {
                           std::string name = info.param;
                           std::replace(name.begin(), name.end(), '-', '_');
                           return name;
                         });

TEST(Experiments, MonteCarloSweepIsReproducibleAcrossThreads) {
  RunConfig a = small_config("theorem1-sweep", 1);
  a.budget.method = VolumeMethod::monte_carlo;
  RunConfig b = a;
  b.threads = 4;
  b.budget.threads = 4;
  EXPECT_EQ(csv_of(a), csv_of(b));
}

TEST(Experiments, ConeTablePasses) {
  const CommandResult r = run_command(small_config("cone-table", 1));
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.table.rows.size(), 3u * 2u + 3u);
}

TEST(Experiments, ConeTableRejectsAnglesAboveTheCap) {
  RunConfig c = small_config("cone-table", 1);
  c.phis = {0.2};
  EXPECT_THROW(run_command(c), InvalidArgumentError);
}

TEST(Experiments, ExtremalSearchNeverLosesTheBaseline) {
  const CommandResult r = run_command(small_config("extremal-search", 1));
  EXPECT_TRUE(r.passed);
  const auto& best = r.table.rows.back();
  EXPECT_EQ(best.front(), "best");
  EXPECT_GE(std::stod(best[8]), 1.0 - 1e-4);
}

TEST(Experiments, HullVolumeReportsJson) {
  const std::string path = ::testing::TempDir() + "/square.txt";
  {
    std::ofstream out(path);
    out << "dim=2,model=klein\n0.5,0\n0,0.5\n-0.5,0\n0,-0.5\n0,0\n";
  }
  RunConfig c;
  c.command = "hull-volume";
  c.points_file = path;
  const CommandResult r = run_command(c);
  ASSERT_TRUE(r.json.has_value());
  EXPECT_EQ((*r.json)["hull_vertices"], 4);
  EXPECT_EQ((*r.json)["facets"], 4);
  EXPECT_GT((*r.json)["volume"]["value"].get<double>(), 0.5);
}

TEST(Experiments, HullVolumeOfCollinearPointsIsDegenerate) {
  const std::string path = ::testing::TempDir() + "/line.txt";
  {
    std::ofstream out(path);
    out << "dim=2,model=klein\n0.1,0.1\n0.2,0.2\n-0.3,-0.3\n";
  }
  RunConfig c;
  c.command = "hull-volume";
  c.points_file = path;
  const CommandResult r = run_command(c);
  EXPECT_EQ((*r.json)["affine_rank"], 1);
  EXPECT_EQ((*r.json)["volume"]["degenerate"], true);
}
