#include "hypervol/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include <boost/math/special_functions/erf.hpp>

#include "hypervol/quadrature.hpp"

namespace hypervol {
namespace {

constexpr double kTightSlack = 1e-9;

double positive_root_to_sphere(const Vector& start, const Vector& dir) {
  // |start + t dir| = 1 with |dir| = 1
  const double b = start.dot(dir);
  const double c = std::max(0.0, 1.0 - start.squaredNorm());
  const double disc = std::sqrt(b * b + c);
  return b > 0 ? c / (disc + b) : disc - b;
}

Vector unit_tangent(const Vector& apex, const Vector& theta) {
  Vector t = theta - theta.dot(apex) * apex;
  const double norm = t.norm();
  if (!(norm > 1e-12)) throw InvalidArgumentError("tangent direction is parallel to the apex");
  return t / norm;
}

// Halton radical inverse in base `base`.
double radical_inverse(std::uint64_t index, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % static_cast<std::uint64_t>(base));
    index /= static_cast<std::uint64_t>(base);
    f *= inv;
  }
  return r;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31};

// Chart coordinates of the far point: m = (1 - m_u) x + m_v θ.
struct ChartApex {
  double mu;
  double mv;
};

ChartApex chart_apex(const ConeSection& s) {
  return {1.0 - s.far_point.dot(s.apex.direction()), s.far_point.dot(s.direction)};
}

double chart_l(double u, const ChartApex& m) {
  if (u <= m.mu) return m.mu > 0 ? m.mv * u / m.mu : 0.0;
  return m.mu < 1 ? m.mv * (1.0 - u) / (1.0 - m.mu) : 0.0;
}

// ∫_0^L v^{n-2} (a - v²)^{-(n+1)/2} dv = L^{n-1} / ((n-1) a (a - L²)^{(n-1)/2}), a = 2u - u².
double inner_closed_form(int n, double u, double l) {
  const double a = u * (2.0 - u);
  const double rest = a - l * l;
  if (l <= 0.0) return 0.0;
  if (!(rest > 0.0)) throw SingularIntegralError("section reaches the sphere at infinity");
  return std::pow(l, n - 1) / ((n - 1) * a * std::pow(rest, 0.5 * (n - 1)));
}

}  // namespace

BoundaryRay boundary_ray(const Polytope& poly, const Vector& vertex, const Vector& theta_in) {
  const int n = poly.dim;
  if (vertex.size() != n || theta_in.size() != n) {
    throw DimensionMismatchError("boundary_ray dimension mismatch");
  }
  const Vector xhat = vertex.normalized();
  const Vector theta = unit_tangent(xhat, theta_in);
  double omega = std::numbers::pi;
  bool any_tight = false;
  for (const auto& h : poly.halfspaces) {
    const double slack = h.offset - h.normal.dot(vertex);
    if (slack > kTightSlack) continue;
    any_tight = true;
    omega = std::min(omega, std::atan2(h.normal.dot(xhat), h.normal.dot(theta)));
  }
  if (!any_tight) throw InvalidArgumentError("boundary_ray needs a vertex on the polytope boundary");
  if (!(omega > 1e-12)) throw NoSectionError("the half-plane meets the polytope only along [0, x]");

  BoundaryRay ray{IdealPoint(xhat), vertex, -std::cos(omega) * xhat + std::sin(omega) * theta, 0.0, 0.0};
  double t_z = std::numeric_limits<double>::infinity();
  for (const auto& h : poly.halfspaces) {
    const double slack = h.offset - h.normal.dot(vertex);
    const double rate = h.normal.dot(ray.direction);
    if (slack <= kTightSlack || rate <= 1e-15) continue;
    t_z = std::min(t_z, slack / rate);
  }
  if (!std::isfinite(t_z)) throw GeometryError("boundary line does not leave the polytope");
  ray.t_y = positive_root_to_sphere(vertex, ray.direction);
  ray.t_z = std::min(t_z, ray.t_y);
  ray.z = vertex + ray.t_z * ray.direction;
  ray.y = IdealPoint(vertex + ray.t_y * ray.direction);
  return ray;
}

std::vector<Vector> tangent_directions(const Vector& apex_in, int grid) {
  const int n = static_cast<int>(apex_in.size());
  const Vector apex = apex_in.normalized();
  const Matrix column = apex;
  Eigen::HouseholderQR<Matrix> qr(column);
  const Matrix q = qr.householderQ();
  const Matrix basis = q.rightCols(n - 1);
  std::vector<Vector> out;
  if (n == 2) {
    out.push_back(basis.col(0));
    out.push_back(-basis.col(0));
    return out;
  }
  if (grid < 1) throw InvalidArgumentError("tangent grid must be positive");
  out.reserve(static_cast<std::size_t>(grid));
  if (n == 3) {
    for (int k = 0; k < grid; ++k) {
      const double a = 2.0 * std::numbers::pi * k / grid;
      out.push_back(std::cos(a) * basis.col(0) + std::sin(a) * basis.col(1));
    }
    return out;
  }
  if (n - 1 > static_cast<int>(std::size(kPrimes))) throw InvalidArgumentError("dimension too large for the Halton set");
  for (int k = 0; k < grid; ++k) {
    Vector g(n - 1);
    for (int j = 0; j < n - 1; ++j) {
      const double u = radical_inverse(static_cast<std::uint64_t>(k + 1), kPrimes[j]);
      g[j] = std::sqrt(2.0) * boost::math::erf_inv(2.0 * u - 1.0);
    }
    out.push_back((basis * g).normalized());
  }
  return out;
}

ConeSection make_section(const IdealPoint& apex, const Vector& theta, const Vector& far_point) {
  const Vector t = unit_tangent(apex.direction(), theta);
  const double phi = std::atan2(far_point.dot(t), far_point.dot(apex.direction()));
  return {apex, t, far_point, phi, phi >= kPhiCap};
}

std::vector<ConeSection> cone_sections(const Polytope& poly, int vertex, int grid, ConeKind kind) {
  if (poly.dim > 2 && grid < 8) throw InvalidArgumentError("cone grid must have at least 8 directions");
  const Vector& x = poly.vertices.at(static_cast<std::size_t>(vertex)).coords();
  const IdealPoint apex(x);
  std::vector<ConeSection> out;
  for (const auto& theta : tangent_directions(apex.direction(), grid)) {
    const BoundaryRay ray = boundary_ray(poly, x, theta);
    const Vector far = kind == ConeKind::full ? Vector(0.5 * (apex.direction() + ray.y.direction()))
                                              : Vector(0.5 * (apex.direction() + ray.z));
    out.push_back(make_section(apex, theta, far));
  }
  return out;
}

double section_integral(int n, const ConeSection& section, double rel_tol) {
  if (n < 2) throw InvalidArgumentError("section_integral needs n >= 2");
  const ChartApex m = chart_apex(section);
  if (!(m.mv > 0.0) || !(m.mu > 0.0) || !(m.mu < 1.0)) return 0.0;
  // u = s² on [0, m_u] removes the u^{(n-3)/2} behaviour at the apex; u = e^x
  // above m_u follows the 1/u decay.
  auto near = [&](double s) {
    const double u = s * s;
    return 2.0 * s * inner_closed_form(n, u, chart_l(u, m));
  };
  auto far = [&](double x) {
    const double u = std::exp(x);
    return u * inner_closed_form(n, u, chart_l(u, m));
  };
  return integrate_interval(near, 0.0, std::sqrt(m.mu), rel_tol).value +
         integrate_interval(far, std::log(m.mu), 0.0, rel_tol).value;
}

VolumeEstimate cone_volume(std::span<const ConeSection> sections, int n, double rel_tol) {
  if (sections.empty()) throw InvalidArgumentError("cone_volume needs at least one section");
  VolumeEstimate e;
  e.method = VolumeMethod::quadrature;
  double sum = 0.0;
  for (const auto& s : sections) {
    sum += section_integral(n, s, rel_tol);
    ++e.evaluations;
  }
  e.value = sphere_area(n - 2) * sum / static_cast<double>(sections.size());
  return e;
}

double cone_l_function(double u, double phi) {
  const double s2 = std::sin(phi) * std::sin(phi);
  return u <= s2 ? u / std::tan(phi) : (1.0 - u) * std::tan(phi);
}

double t_function(double u, double phi) {
  if (u < 0.0 || u > 1.0) throw InvalidArgumentError("t_function needs 0 <= u <= 1");
  const double l = cone_l_function(u, phi);
  return u - u * u - l * l;
}

double cone_integral_bound(int n, double phi, double rel_tol) {
  if (n < 2) throw InvalidArgumentError("cone_integral_bound needs n >= 2");
  if (!(phi > 0.0) || !(phi < 0.5 * std::numbers::pi)) {
    throw InvalidArgumentError("cone_integral_bound needs 0 < phi < pi/2");
  }
  const double inner_tol = std::max(1e-13, 0.01 * rel_tol);
  // Inner integral over v = L w, w ∈ [0, 1], of the exact integrand.
  auto inner = [&](double u) {
    const double l = cone_l_function(u, phi);
    if (l <= 0.0) return 0.0;
    const double a = u * (2.0 - u);
    auto f = [&](double w) {
      const double v = l * w;
      return l * std::pow(v, n - 2) * std::pow(a - v * v, -0.5 * (n + 1));
    };
    return integrate_interval(f, 0.0, 1.0, inner_tol).value;
  };
  const double sin_phi = std::sin(phi);
  // u = s² below sin²φ; u = e^x above it, where the integrand decays like 1/u.
  auto near = [&](double s) { return 2.0 * s * inner(s * s); };
  auto far = [&](double x) {
    const double u = std::exp(x);
    return u * inner(u);
  };
  const double total = integrate_interval(near, 0.0, sin_phi, rel_tol).value +
                       integrate_interval(far, 2.0 * std::log(sin_phi), 0.0, rel_tol).value;
  if (!(total < kSingularAbort)) throw SingularIntegralError("bounding integral diverges");
  return total;
}

double first_summand_quadrature(int n, double phi) {
  const double cot = 1.0 / std::tan(phi);
  // u = s²: u^{(n-3)/2} du = 2 s^{n-2} ds
  auto f = [&](double s) { return 2.0 * std::pow(cot, n - 1) * std::pow(s, n - 2); };
  return integrate_interval(f, 0.0, std::sin(phi), 1e-13).value;
}

double first_summand_closed_form(int n, double phi) {
  return 2.0 / (n - 1) * std::pow(std::cos(phi), n - 1);
}

double second_summand_as_printed(int n, double phi) {
  const double tan = std::tan(phi);
  // 1 - u = r²: (1-u)^{(n-3)/2} du = 2 r^{n-2} dr
  auto f = [&](double r) { return 2.0 * std::pow(r, n - 2); };
  return std::pow(tan, n - 1) / (n - 1) * integrate_interval(f, 0.0, std::cos(phi), 1e-13).value;
}

double second_summand_exact(int n, double phi) {
  const double tan = std::tan(phi);
  const double s2 = std::sin(phi) * std::sin(phi);
  // u = e^x spreads the u^{-(n+1)/2} peak at the lower end.
  auto f = [&](double x) {
    const double u = std::exp(x);
    return std::pow(1.0 - u, n - 1) * std::pow(u, 1.0 - 0.5 * (n + 1));
  };
  return std::pow(tan, n - 1) / (n - 1) * integrate_interval(f, std::log(s2), 0.0, 1e-12).value;
}

double cone_majorant(int n, double phi) {
  return first_summand_closed_form(n, phi) + 1.0 + kMajorantConstant;
}

Vector BarycentricPoint::point() const {
  if (vertices.empty() || vertices.size() != weights.size()) {
    throw InvalidArgumentError("barycentric point needs one weight per vertex");
  }
  Vector p = Vector::Zero(vertices.front().size());
  for (std::size_t j = 0; j < vertices.size(); ++j) p += weights[j] * vertices[j];
  return p;
}

Vector lemma1_map(const BarycentricPoint& y, int i) {
  if (i < 0 || i >= static_cast<int>(y.vertices.size())) throw InvalidArgumentError("map index out of range");
  double total = 0.0;
  for (double a : y.weights) total += a;
  return 0.5 * y.point() + 0.5 * total * y.vertices[static_cast<std::size_t>(i)];
}

int dominant_map_index(const BarycentricPoint& y) {
  int best = 0;
  double best_norm = -1.0;
  for (int i = 0; i < static_cast<int>(y.vertices.size()); ++i) {
    const double norm = lemma1_map(y, i).norm();
    if (norm > best_norm) {
      best = i;
      best_norm = norm;
    }
  }
  return best;
}

Matrix lemma1_matrix(int n, int i) {
  if (i < 0 || i >= n) throw InvalidArgumentError("map index out of range");
  Matrix t = 0.5 * Matrix::Identity(n, n);
  t.row(i).array() += 0.5;
  return t;
}

bool in_vertex_cone(const Polytope& poly, int vertex, const Vector& p, ConeKind kind) {
  const Vector& x = poly.vertices.at(static_cast<std::size_t>(vertex)).coords();
  const Vector xhat = x.normalized();
  const double a = p.dot(xhat);
  const Vector perp = p - a * xhat;
  const double rho = perp.norm();
  if (rho <= 1e-14) return a >= 0.0 && a <= 1.0;
  std::optional<BoundaryRay> ray;
  try {
    ray = boundary_ray(poly, x, perp / rho);
  } catch (const NoSectionError&) {
    return false;
  }
  const Vector far = kind == ConeKind::full ? Vector(0.5 * (xhat + ray->y.direction()))
                                            : Vector(0.5 * (xhat + ray->z));
  const double ma = far.dot(xhat);
  const double mc = far.dot(perp) / rho;
  if (!(mc > 0.0)) return false;
  // p = λ x̂ + μ m in the plane coordinates (a, ρ)
  const double mu = rho / mc;
  const double lambda = a - mu * ma;
  return mu >= 0.0 && lambda >= 0.0 && lambda + mu <= 1.0;
}

FacetDecompositionReport verify_facet_decomposition(const Polytope& poly, int facet,
                                                    std::int64_t samples, std::uint64_t seed,
                                                    int threads) {
  const int n = poly.dim;
  const auto& f = poly.facets.at(static_cast<std::size_t>(facet));
  if (interior_margin(poly, Vector::Zero(n)) <= 0.0) {
    throw InvalidArgumentError("facet decomposition needs the origin inside the polytope");
  }
  Simplex d;
  d.vertices.push_back(KleinPoint::origin(n));
  for (int v : f) d.vertices.push_back(poly.vertices[static_cast<std::size_t>(v)]);

  std::vector<std::function<bool(const Vector&)>> memberships;
  memberships.emplace_back([](const Vector&) { return true; });
  for (int v : f) {
    memberships.emplace_back(
        [&poly, v](const Vector& p) { return in_vertex_cone(poly, v, p, ConeKind::truncated); });
  }
  const auto volumes = simplex_region_volumes(d, memberships, samples, seed, threads);

  FacetDecompositionReport report;
  report.dim = n;
  report.facet_cone = volumes.front();
  report.pieces.assign(volumes.begin() + 1, volumes.end());
  report.bound = std::ldexp(1.0, n);
  double sum = 0.0;
  double var = report.facet_cone.std_error * report.facet_cone.std_error;
  for (const auto& piece : report.pieces) {
    sum += piece.value;
    var += report.bound * report.bound * piece.std_error * piece.std_error;
    report.low_confidence = report.low_confidence || piece.low_confidence;
  }
  report.ratio = sum > 0 ? report.facet_cone.value / sum : std::numeric_limits<double>::infinity();
  report.holds = report.facet_cone.value <= report.bound * sum + 3.0 * std::sqrt(var);
  return report;
}

std::vector<KleinPoint> densify_net(std::span<const KleinPoint> ideal_points, int grid,
                                    int max_rounds) {
  std::vector<KleinPoint> points(ideal_points.begin(), ideal_points.end());
  const double step = kPhiCap;
  for (int round = 0; round < max_rounds; ++round) {
    const Polytope hull = convex_hull(points);
    std::vector<KleinPoint> added;
    auto is_new = [&](const Vector& dir) {
      const auto close = [&](const KleinPoint& p) { return p.coords().normalized().dot(dir) > std::cos(0.5 * step); };
      return std::none_of(points.begin(), points.end(), close) &&
             std::none_of(added.begin(), added.end(), close);
    };
    for (int v = 0; v < static_cast<int>(hull.vertices.size()); ++v) {
      std::vector<ConeSection> sections;
      try {
        sections = cone_sections(hull, v, grid, ConeKind::full);
      } catch (const GeometryError&) {
        continue;
      }
      for (const auto& s : sections) {
        if (!s.capped) continue;
        const Vector dir = std::cos(step) * s.apex.direction() + std::sin(step) * s.direction;
        if (is_new(dir)) added.emplace_back(kIdealTruncation * dir);
      }
    }
    if (added.empty()) break;
    points.insert(points.end(), added.begin(), added.end());
  }
  return points;
}

nlohmann::ordered_json cone_report(const Polytope& poly, int vertex, int grid, ConeKind kind) {
  const int n = poly.dim;
  const auto sections = cone_sections(poly, vertex, grid, kind);
  nlohmann::ordered_json j;
  j["apex"] = std::vector<double>(sections.front().apex.direction().begin(),
                                  sections.front().apex.direction().end());
  j["grid"] = sections.size();
  j["kind"] = kind == ConeKind::full ? "full" : "truncated";
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  double max_phi = 0.0;
  double majorant_sum = 0.0;
  bool within = true;
  for (const auto& s : sections) {
    const double value = section_integral(n, s);
    const double majorant = cone_majorant(n, s.origin_angle);
    within = within && value <= majorant;
    max_phi = std::max(max_phi, s.origin_angle);
    majorant_sum += majorant;
    rows.push_back({{"phi", s.origin_angle}, {"integral", value}, {"majorant", majorant}, {"capped", s.capped}});
  }
  j["sections"] = rows;
  j["volume"] = to_json(cone_volume(sections, n));
  j["max_phi"] = max_phi;
  j["volume_majorant"] = sphere_area(n - 2) * majorant_sum / static_cast<double>(sections.size());
  j["sections_within_majorant"] = within;
  return j;
}

}  // namespace hypervol
