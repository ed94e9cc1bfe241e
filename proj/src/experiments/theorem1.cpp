#include <algorithm>
#include <map>
#include <numbers>

#include <fmt/format.h>

#include "common.hpp"
#include "hypervol/hull.hpp"

namespace hypervol {

CommandResult cmd_theorem1_sweep(const RunConfig& config) {
  CommandResult result;
  auto& table = result.table;
  table.header = {"row", "n", "N", "replicate", "family", "seed", "volume", "volume_per_N",
                  "std_error", "bound", "pass"};
  detail::append(table.header, detail::budget_header());
  constexpr int kMaxAttempts = 5;

  for (int n : config.dimensions) {
    std::map<int, std::vector<double>> volumes;
    for (int size : config.sizes) {
      for (int rep = 0; rep < config.replicates; ++rep) {
        const auto stream = mix_seed(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(size),
                                     static_cast<std::uint64_t>(rep));
        std::uint64_t seed = mix_seed(config.seed, stream);
        std::optional<Polytope> hull;
        for (int attempt = 0; attempt < kMaxAttempts && !hull; ++attempt) {
          auto h = try_convex_hull(generate_points(config.family, n, size, seed));
          if (std::holds_alternative<Polytope>(h)) {
            hull = std::get<Polytope>(std::move(h));
          } else {
            result.log.push_back(fmt::format("n={} N={} replicate={}: degenerate hull, retrying", n, size, rep));
            seed = mix_seed(seed, 0xde9);
          }
        }
        if (!hull) throw GeometryError("theorem1-sweep: hull stayed degenerate after retries");
        const VolumeBudget budget = detail::budget_for(config, stream);
        const VolumeEstimate vol = polytope_volume(*hull, budget);
        volumes[size].push_back(vol.value);

        // In H² an N-gon with ideal vertices triangulates into N - 2 triangles of area < π.
        double bound = std::numeric_limits<double>::infinity();
        bool pass = std::isfinite(vol.value) && vol.value >= 0.0;
        if (n == 2 && config.family == PointFamily::uniform_ideal) {
          bound = (size - 2) * std::numbers::pi;
          const double slack = std::max(budget.rel_tol * vol.value, 3.0 * vol.std_error);
          pass = pass && vol.value <= bound + slack;
        }
        if (!pass) result.log.push_back(fmt::format("n={} N={} replicate={}: volume {} exceeds bound {}", n, size, rep, vol.value, bound));
        result.passed = result.passed && pass;
        std::vector<std::string> row = {"instance", cell(n), cell(size), cell(rep), to_string(config.family),
                                        cell(seed), cell(vol.value), cell(vol.value / size),
                                        cell(vol.std_error), cell(bound), cell(pass)};
        detail::append(row, detail::budget_cells(budget));
        table.add(std::move(row));
      }
    }

    // Plateau check: least-squares slope of log Vol against log N over the top decade.
    const int n_max = *std::max_element(config.sizes.begin(), config.sizes.end());
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& [size, vols] : volumes) {
      if (size * 10 < n_max) continue;
      double mean = 0.0;
      for (double v : vols) mean += v;
      xs.push_back(size);
      ys.push_back(mean / static_cast<double>(vols.size()));
    }
    if (xs.size() >= 2) {
      const double slope = loglog_slope(xs, ys);
      const bool pass = slope <= 1.05;
      result.passed = result.passed && pass;
      result.log.push_back(fmt::format("n={}: log-log slope over N in [{}, {}] = {:.4f}", n, xs.front(), xs.back(), slope));
      std::vector<std::string> row = {"slope", cell(n), cell(n_max), "", to_string(config.family),
                                      cell(config.seed), cell(slope), "", "", cell(1.05), cell(pass)};
      detail::append(row, detail::budget_cells(config.budget));
      table.add(std::move(row));
    }
  }
  return result;
}

}  // namespace hypervol
