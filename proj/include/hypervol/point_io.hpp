#pragma once

// Point-cloud CSV files. The first line is a header `dim=<n>,model=<m>` with
// m one of klein, poincare, hyperboloid; each following line holds one point
// (n columns, or n + 1 for hyperboloid coordinates x0, x1..xn). Points are
// converted to Klein coordinates on load.

#include <iosfwd>
#include <string>
#include <vector>

#include "hypervol/klein.hpp"

namespace hypervol {

enum class PointModel { klein, poincare, hyperboloid };

std::vector<KleinPoint> read_point_cloud(std::istream& in);
std::vector<KleinPoint> read_point_cloud_file(const std::string& path);

/// Writes Klein coordinates with round-trip precision.
void write_point_cloud(std::ostream& out, const std::vector<KleinPoint>& points);

}  // namespace hypervol
