#include <algorithm>
#include <functional>

#include "common.hpp"
#include "hypervol/cones.hpp"

namespace hypervol {

// Exploratory: fraction of a regular simplex's volume within c·r of its
// nearest vertex. Rows carry no assertion.
CommandResult cmd_mass_near_vertices(const RunConfig& config) {
  CommandResult result;
  auto& table = result.table;
  table.header = {"row", "n", "separation", "c", "threshold", "fraction", "std_error", "low_confidence",
                  "seed", "pass"};
  detail::append(table.header, detail::budget_header());
  for (int n : config.dimensions) {
    for (double r : config.separations) {
      const auto vertices = regular_simplex(n, r);
      std::vector<std::function<bool(const Vector&)>> regions;
      regions.emplace_back([](const Vector&) { return true; });
      for (double c : config.thresholds) {
        const double threshold = c * r;
        regions.emplace_back([&vertices, threshold](const Vector& p) {
          return std::any_of(vertices.begin(), vertices.end(),
                             [&](const KleinPoint& v) { return dist(v.coords(), p) < threshold; });
        });
      }
      const VolumeBudget budget =
          detail::budget_for(config, mix_seed(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r * 1e6)));
      const auto volumes =
          simplex_region_volumes(Simplex{vertices}, regions, budget.samples, budget.seed, budget.threads);
      const double total = volumes.front().value;
      for (std::size_t k = 0; k < config.thresholds.size(); ++k) {
        const VolumeEstimate& part = volumes[k + 1];
        std::vector<std::string> row = {"cell", cell(n), cell(r), cell(config.thresholds[k]),
                                        cell(config.thresholds[k] * r), cell(part.value / total),
                                        cell(part.std_error / total), cell(part.low_confidence),
                                        cell(budget.seed), cell(true)};
        detail::append(row, detail::budget_cells(budget));
        table.add(std::move(row));
      }
    }
  }
  return result;
}

}  // namespace hypervol
