#include "common.hpp"
#include "hypervol/hull.hpp"
#include "hypervol/point_io.hpp"

namespace hypervol {

CommandResult cmd_hull_volume(const RunConfig& config) {
  if (config.points_file.empty()) throw InvalidArgumentError("hull-volume needs points_file");
  const auto points = read_point_cloud_file(config.points_file);
  const VolumeBudget budget = detail::budget_for(config, 0x4011);
  CommandResult result;
  nlohmann::ordered_json j;
  j["points"] = points.size();
  j["dim"] = points.empty() ? 0 : points.front().dim();
  j["seed"] = budget.seed;
  const auto hull = try_convex_hull(points);
  if (const auto* poly = std::get_if<Polytope>(&hull)) {
    j["hull_vertices"] = poly->vertices.size();
    j["facets"] = poly->facets.size();
    j["volume"] = to_json(polytope_volume(*poly, budget));
  } else {
    const auto& degenerate = std::get<DegenerateHull>(hull);
    j["affine_rank"] = degenerate.affine_rank;
    VolumeEstimate zero;
    zero.method = budget.method;
    zero.degenerate = true;
    j["volume"] = to_json(zero);
  }
  result.json = std::move(j);
  return result;
}

}  // namespace hypervol
