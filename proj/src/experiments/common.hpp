#pragma once

#include <string>
#include <vector>

#include "hypervol/experiments.hpp"
#include "hypervol/rng.hpp"

namespace hypervol::detail {

/// The configured budget with its seed replaced by a substream of the run seed.
inline VolumeBudget budget_for(const RunConfig& config, std::uint64_t stream) {
  VolumeBudget b = config.budget;
  b.seed = mix_seed(config.seed, stream);
  b.threads = config.threads;
  return b;
}

/// Budget columns appended to every row.
inline std::vector<std::string> budget_header() { return {"method", "rel_tol", "samples"}; }

inline std::vector<std::string> budget_cells(const VolumeBudget& b) {
  return {to_string(b.method), cell(b.rel_tol), cell(b.samples)};
}

inline void append(std::vector<std::string>& row, const std::vector<std::string>& more) {
  row.insert(row.end(), more.begin(), more.end());
}

}  // namespace hypervol::detail
