#include <cmath>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "hypervol/experiments.hpp"

namespace hypervol {
namespace {

const std::set<std::string> kKnownKeys = {
    "command",       "seed",           "threads",   "budget",       "dimensions",
    "sizes",         "replicates",     "family",    "epsilon",      "boundary_samples",
    "hull_deficit_tolerance",
    "distances",     "cluster_instances", "cluster_size", "phis",   "cone_max_dim",
    "points",        "annealing",      "separations", "thresholds", "points_file"};

template <typename T>
void read(const nlohmann::json& j, const char* key, T& target) {
  if (j.contains(key)) target = j.at(key).get<T>();
}

}  // namespace

RunConfig run_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgumentError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kKnownKeys.contains(key)) throw InvalidArgumentError("unknown config key '" + key + "'");
  }
  RunConfig c;
  read(j, "command", c.command);
  read(j, "seed", c.seed);
  read(j, "threads", c.threads);
  if (j.contains("budget")) {
    const auto& b = j.at("budget");
    if (b.contains("method")) c.budget.method = volume_method_from_string(b.at("method").get<std::string>());
    read(b, "rel_tol", c.budget.rel_tol);
    read(b, "max_depth", c.budget.max_depth);
    read(b, "samples", c.budget.samples);
  }
  read(j, "dimensions", c.dimensions);
  read(j, "sizes", c.sizes);
  read(j, "replicates", c.replicates);
  if (j.contains("family")) c.family = point_family_from_string(j.at("family").get<std::string>());
  read(j, "epsilon", c.epsilon);
  read(j, "boundary_samples", c.boundary_samples);
  read(j, "hull_deficit_tolerance", c.hull_deficit_tolerance);
  read(j, "distances", c.distances);
  read(j, "cluster_instances", c.cluster_instances);
  read(j, "cluster_size", c.cluster_size);
  read(j, "phis", c.phis);
  read(j, "cone_max_dim", c.cone_max_dim);
  read(j, "points", c.points);
  if (j.contains("annealing")) {
    const auto& a = j.at("annealing");
    read(a, "steps", c.annealing.steps);
    read(a, "initial_temperature", c.annealing.initial_temperature);
    read(a, "final_temperature", c.annealing.final_temperature);
    read(a, "move_scale", c.annealing.move_scale);
  }
  read(j, "separations", c.separations);
  read(j, "thresholds", c.thresholds);
  read(j, "points_file", c.points_file);
  c.budget.seed = c.seed;
  c.budget.threads = c.threads;
  return c;
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = c.command;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["budget"] = {{"method", to_string(c.budget.method)},
                 {"rel_tol", c.budget.rel_tol},
                 {"max_depth", c.budget.max_depth},
                 {"samples", c.budget.samples}};
  j["dimensions"] = c.dimensions;
  j["sizes"] = c.sizes;
  j["replicates"] = c.replicates;
  j["family"] = to_string(c.family);
  j["epsilon"] = c.epsilon;
  j["boundary_samples"] = c.boundary_samples;
  j["hull_deficit_tolerance"] = c.hull_deficit_tolerance;
  j["distances"] = c.distances;
  j["cluster_instances"] = c.cluster_instances;
  j["cluster_size"] = c.cluster_size;
  j["phis"] = c.phis;
  j["cone_max_dim"] = c.cone_max_dim;
  j["points"] = c.points;
  j["annealing"] = {{"steps", c.annealing.steps},
                    {"initial_temperature", c.annealing.initial_temperature},
                    {"final_temperature", c.annealing.final_temperature},
                    {"move_scale", c.annealing.move_scale}};
  j["separations"] = c.separations;
  j["thresholds"] = c.thresholds;
  j["points_file"] = c.points_file;
  return j;
}

void CsvTable::add(std::vector<std::string> row) {
  if (row.size() != header.size()) throw InvalidArgumentError("CSV row width does not match header");
  rows.push_back(std::move(row));
}

void write_csv(std::ostream& out, const CsvTable& table) {
  auto line = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i];
    out << '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
}

std::string cell(double value) { return fmt::format("{:.17g}", value); }
std::string cell(std::int64_t value) { return fmt::format("{}", value); }
std::string cell(int value) { return fmt::format("{}", value); }
std::string cell(std::uint64_t value) { return fmt::format("{}", value); }
std::string cell(bool value) { return value ? "1" : "0"; }

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgumentError("slope needs two or more points");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

CommandResult run_command(const RunConfig& config) {
  if (config.command == "theorem1-sweep") return cmd_theorem1_sweep(config);
  if (config.command == "theorem2-check") return cmd_theorem2_check(config);
  if (config.command == "cone-table") return cmd_cone_table(config);
  if (config.command == "extremal-search") return cmd_extremal_search(config);
  if (config.command == "mass-near-vertices") return cmd_mass_near_vertices(config);
  if (config.command == "hull-volume") return cmd_hull_volume(config);
  throw InvalidArgumentError("unknown command '" + config.command + "'");
}

}  // namespace hypervol
