#include "hypervol/point_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace hypervol {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  return out;
}

PointModel parse_model(const std::string& name) {
  if (name == "klein") return PointModel::klein;
  if (name == "poincare") return PointModel::poincare;
  if (name == "hyperboloid") return PointModel::hyperboloid;
  throw InvalidArgumentError("unknown point model '" + name + "'");
}

}  // namespace

std::vector<KleinPoint> read_point_cloud(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgumentError("empty point file");
  int dim = 0;
  PointModel model = PointModel::klein;
  bool have_dim = false;
  for (const auto& field : split(line)) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw InvalidArgumentError("malformed header field '" + field + "'");
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    if (key == "dim") {
      dim = std::stoi(value);
      have_dim = true;
    } else if (key == "model") {
      model = parse_model(value);
    } else {
      throw InvalidArgumentError("unknown header key '" + key + "'");
    }
  }
  if (!have_dim || dim < 2) throw InvalidArgumentError("header must declare dim >= 2");
  const int columns = model == PointModel::hyperboloid ? dim + 1 : dim;

  std::vector<KleinPoint> points;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (static_cast<int>(fields.size()) != columns) {
      throw InvalidArgumentError(fmt::format("line {}: expected {} columns, got {}", line_no,
                                             columns, fields.size()));
    }
    Vector v(columns);
    for (int i = 0; i < columns; ++i) v[i] = std::stod(fields[static_cast<std::size_t>(i)]);
    switch (model) {
      case PointModel::klein:
        points.emplace_back(v);
        break;
      case PointModel::poincare:
        points.emplace_back(poincare_to_klein(v));
        break;
      case PointModel::hyperboloid:
        points.emplace_back(klein_from_lift(v));
        break;
    }
  }
  return points;
}

std::vector<KleinPoint> read_point_cloud_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgumentError("cannot open point file " + path);
  return read_point_cloud(in);
}

void write_point_cloud(std::ostream& out, const std::vector<KleinPoint>& points) {
  if (points.empty()) throw InvalidArgumentError("cannot write an empty point cloud");
  const int n = points.front().dim();
  out << "dim=" << n << ",model=klein\n";
  for (const auto& p : points) {
    for (int i = 0; i < n; ++i) out << (i ? "," : "") << fmt::format("{:.17g}", p[i]);
    out << '\n';
  }
}

}  // namespace hypervol
