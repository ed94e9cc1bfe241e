#pragma once

// Experiment drivers behind the `hypervol` CLI. Every command turns a
// RunConfig into a CSV table whose rows carry the seed and budget that
// produced them, plus a pass flag for the row's assertion.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypervol/klein.hpp"
#include "hypervol/volume.hpp"

namespace hypervol {

enum class PointFamily { uniform_ideal, uniform_ball, clustered };

std::string to_string(PointFamily family);
PointFamily point_family_from_string(const std::string& name);

/// Directions uniform on the sphere, placed at kIdealTruncation.
std::vector<KleinPoint> uniform_ideal_points(int n, int count, std::uint64_t seed);
/// Uniform in hyperbolic volume on B_H(0, radius).
std::vector<KleinPoint> uniform_ball_points(int n, int count, double radius, std::uint64_t seed);
/// max(1, count / 8) cluster centers uniform in B_H(0, radius); members uniform
/// in B_H(center, spread).
std::vector<KleinPoint> clustered_points(int n, int count, double radius, double spread,
                                         std::uint64_t seed);

std::vector<KleinPoint> generate_points(PointFamily family, int n, int count, std::uint64_t seed);

/// Vertices of the regular simplex centred at the origin with pairwise
/// hyperbolic distance r.
std::vector<KleinPoint> regular_simplex(int n, double r);

struct AnnealingSchedule {
  int steps = 400;
  double initial_temperature = 0.5;
  double final_temperature = 1e-3;
  double move_scale = 0.3;
};

struct RunConfig {
  std::string command;
  std::uint64_t seed = 1;
  int threads = 1;
  VolumeBudget budget;

  std::vector<int> dimensions = {2, 3};
  std::vector<int> sizes = {8, 16, 32, 64, 128, 256};
  int replicates = 5;
  PointFamily family = PointFamily::uniform_ideal;

  double epsilon = 1.0;
  int boundary_samples = 256;
  // theorem2-check doubles boundary_samples per dimension until the hull of one
  // sampled ball falls short of the ball by less than this fraction.
  double hull_deficit_tolerance = 0.01;
  std::vector<double> distances = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  int cluster_instances = 10;
  int cluster_size = 20;

  std::vector<double> phis;  // empty: default log grid below arctan(1/10)
  int cone_max_dim = 8;

  int points = 6;
  AnnealingSchedule annealing;

  std::vector<double> separations = {1, 2, 5};
  std::vector<double> thresholds = {0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0};

  std::string points_file;
};

RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const RunConfig& config);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
};

void write_csv(std::ostream& out, const CsvTable& table);

/// CSV cell text; doubles use 17 significant digits so they round-trip.
std::string cell(double value);
std::string cell(std::int64_t value);
std::string cell(int value);
std::string cell(std::uint64_t value);
std::string cell(bool value);

struct CommandResult {
  CsvTable table;
  bool passed = true;
  /// Human-readable lines for stderr (retries, summaries, failed assertions).
  std::vector<std::string> log;
  /// Set by hull-volume, which reports JSON instead of CSV.
  std::optional<nlohmann::ordered_json> json;
};

CommandResult cmd_theorem1_sweep(const RunConfig& config);
CommandResult cmd_theorem2_check(const RunConfig& config);
CommandResult cmd_cone_table(const RunConfig& config);
CommandResult cmd_extremal_search(const RunConfig& config);
CommandResult cmd_mass_near_vertices(const RunConfig& config);
CommandResult cmd_hull_volume(const RunConfig& config);

CommandResult run_command(const RunConfig& config);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hypervol
