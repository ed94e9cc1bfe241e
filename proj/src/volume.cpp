#include "hypervol/volume.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hypervol/parallel.hpp"
#include "hypervol/quadrature.hpp"
#include "hypervol/rng.hpp"

namespace hypervol {
namespace {

constexpr std::int64_t kChunk = 8192;

// One piece of the barycentric subdivision of a facet: w0 is an original
// facet vertex, edges are w_j - w0 for the nested barycentres.
struct Piece {
  Vector w0;
  Matrix edges;  // n x m
  double gram;   // m! * (m-dimensional volume)
};

struct FacetCone {
  int n = 0;
  double height = 0.0;  // distance from the origin to the facet hyperplane
  std::vector<Piece> pieces;
};

FacetCone make_facet_cone(std::span<const Vector> facet) {
  FacetCone cone;
  cone.n = static_cast<int>(facet.front().size());
  const int n = cone.n;
  const int m = n - 1;
  if (static_cast<int>(facet.size()) != n) {
    throw InvalidArgumentError("a facet of a cone in R^n needs exactly n vertices");
  }
  Matrix edges(n, m);
  for (int j = 0; j < m; ++j) edges.col(j) = facet[static_cast<std::size_t>(j + 1)] - facet[0];
  Eigen::HouseholderQR<Matrix> qr(edges);
  const Matrix q = qr.householderQ();
  const Vector normal = q.col(n - 1);
  Vector mean = Vector::Zero(n);
  for (const auto& v : facet) mean += v;
  mean /= n;
  cone.height = std::abs(normal.dot(mean));
  const double facet_measure = std::sqrt(std::max(0.0, (edges.transpose() * edges).determinant()));
  if (!(cone.height > 1e-300) || !(facet_measure > 1e-300)) return cone;

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  do {
    Piece piece;
    piece.w0 = facet[static_cast<std::size_t>(order[0])];
    piece.edges.resize(n, m);
    Vector running = piece.w0;
    for (int j = 1; j <= m; ++j) {
      running += facet[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
      piece.edges.col(j - 1) = running / (j + 1) - piece.w0;
    }
    piece.gram =
        std::sqrt(std::max(0.0, (piece.edges.transpose() * piece.edges).determinant()));
    cone.pieces.push_back(std::move(piece));
  } while (std::next_permutation(order.begin(), order.end()));
  return cone;
}

// Maps a cube point to the facet point p and returns the integrand
// jacobian * height * radial_profile(n, atanh|p|) / |p|^n.
double piece_integrand(const FacetCone& cone, const Piece& piece, std::span<const double> x,
                       Vector& p) {
  const int n = cone.n;
  const int m = n - 1;
  const double sigma = x[0];
  const double tau = sigma * sigma;
  double jac = piece.gram * 2.0 * sigma * std::pow(tau, m - 1);
  if (jac == 0.0) return 0.0;
  p = piece.w0;
  double mass = tau;
  for (int k = 1; k <= m; ++k) {
    double weight = mass;
    if (k < m) {
      const double xk = x[static_cast<std::size_t>(k)];
      weight = mass * (1.0 - xk);
      mass *= xk;
      jac *= std::pow(xk, m - 1 - k);
    }
    p += weight * piece.edges.col(k - 1);
  }
  if (jac == 0.0) return 0.0;
  const double r2 = p.squaredNorm();
  const double r = std::min(std::sqrt(r2), std::nextafter(1.0, 0.0));
  const double w = std::atanh(r);
  return jac * cone.height * radial_profile(n, w) / std::pow(r, n);
}

struct MomentSums {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::int64_t count = 0;
};

// Draws one importance sample from the cone over a facet. Returns the
// unbiased single-sample estimate of the cone volume; `facet_point` receives
// the facet point and, if `radial` is set, `point` a point distributed with
// density proportional to the hyperbolic volume along the ray.
double draw_cone_sample(const FacetCone& cone, CounterRng& rng, std::vector<double>& cube,
                        Vector& facet_point, Vector* point) {
  const auto piece_count = static_cast<std::uint64_t>(cone.pieces.size());
  const Piece& piece = cone.pieces[static_cast<std::size_t>(rng.below(piece_count))];
  for (auto& c : cube) c = rng.uniform_open();
  const double value =
      static_cast<double>(piece_count) * piece_integrand(cone, piece, cube, facet_point);
  if (point != nullptr) {
    const double r = std::min(facet_point.norm(), std::nextafter(1.0, 0.0));
    const double w_max = std::atanh(r);
    const double target = rng.uniform_open() * radial_profile(cone.n, w_max);
    const double w = radial_profile_inverse(cone.n, target, w_max);
    *point = (std::tanh(w) / r) * facet_point;
  }
  return value;
}

VolumeEstimate cone_quadrature(const FacetCone& cone, const VolumeBudget& budget) {
  VolumeEstimate est;
  est.method = VolumeMethod::quadrature;
  const int m = cone.n - 1;
  double error = 0.0;
  for (const auto& piece : cone.pieces) {
    Vector scratch(cone.n);
    auto f = [&](std::span<const double> x) { return piece_integrand(cone, piece, x, scratch); };
    const QuadratureResult r = integrate_cube(m, f, budget.rel_tol * 0.1, budget.max_depth);
    est.value += r.value;
    error += r.error;
    est.evaluations += r.evaluations;
  }
  est.achieved_rel_error = est.value > 0 ? error / est.value : 0.0;
  est.low_confidence = est.achieved_rel_error > budget.rel_tol;
  return est;
}

VolumeEstimate cone_monte_carlo(const FacetCone& cone, std::int64_t samples, std::uint64_t seed,
                                int threads) {
  VolumeEstimate est;
  est.method = VolumeMethod::monte_carlo;
  samples = std::max<std::int64_t>(samples, 2);
  const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<MomentSums> partial(static_cast<std::size_t>(chunks));
  parallel_for(static_cast<std::size_t>(chunks), threads, [&](std::size_t c) {
    CounterRng rng(seed, c);
    std::vector<double> cube(static_cast<std::size_t>(cone.n - 1));
    Vector facet_point(cone.n);
    const std::int64_t begin = static_cast<std::int64_t>(c) * kChunk;
    const std::int64_t end = std::min(samples, begin + kChunk);
    MomentSums& s = partial[c];
    for (std::int64_t i = begin; i < end; ++i) {
      const double y = draw_cone_sample(cone, rng, cube, facet_point, nullptr);
      s.sum += y;
      s.sum_sq += y * y;
      ++s.count;
    }
  });
  MomentSums total;
  for (const auto& s : partial) {
    total.sum += s.sum;
    total.sum_sq += s.sum_sq;
    total.count += s.count;
  }
  const double count = static_cast<double>(total.count);
  const double mean = total.sum / count;
  const double var = std::max(0.0, total.sum_sq / count - mean * mean) * count / (count - 1.0);
  est.value = mean;
  est.std_error = std::sqrt(var / count);
  est.evaluations = total.count;
  return est;
}

VolumeBudget effective(const VolumeBudget& budget, int n) {
  VolumeBudget b = budget;
  if (b.method == VolumeMethod::quadrature && n > kMaxQuadratureDim) b.method = VolumeMethod::monte_carlo;
  return b;
}

void require_full_simplex(const Simplex& s) {
  const int n = s.dim();
  if (n < 2) throw InvalidArgumentError("simplex dimension must be >= 2");
  if (static_cast<int>(s.vertices.size()) != n + 1) {
    throw InvalidArgumentError("a full-dimensional simplex needs n + 1 vertices");
  }
  for (const auto& v : s.vertices) {
    if (v.dim() != n) throw DimensionMismatchError("simplex vertex dimension mismatch");
  }
}

// Facets conv(vertices \ {k}) of a simplex after moving `anchor` to the origin.
std::vector<std::vector<Vector>> centred_facets(const Simplex& s, const Isometry& to_origin) {
  const int n = s.dim();
  std::vector<Vector> moved;
  for (const auto& v : s.vertices) moved.push_back(to_origin.apply(v.coords()));
  std::vector<std::vector<Vector>> facets;
  for (int k = 0; k <= n; ++k) {
    std::vector<Vector> f;
    for (int j = 0; j <= n; ++j) {
      if (j != k) f.push_back(moved[static_cast<std::size_t>(j)]);
    }
    facets.push_back(std::move(f));
  }
  return facets;
}

VolumeEstimate sum_over_facets(const std::vector<std::vector<Vector>>& facets,
                               const VolumeBudget& budget) {
  std::vector<VolumeEstimate> parts;
  parts.reserve(facets.size());
  const auto facet_count = static_cast<std::int64_t>(facets.size());
  for (std::size_t k = 0; k < facets.size(); ++k) {
    VolumeBudget b = budget;
    b.samples = std::max<std::int64_t>(2, budget.samples / facet_count);
    b.seed = mix_seed(budget.seed, k);
    parts.push_back(origin_cone_volume(facets[k], b));
  }
  VolumeEstimate total = combine(parts);
  total.method = budget.method;
  return total;
}

}  // namespace

std::string to_string(VolumeMethod method) {
  switch (method) {
    case VolumeMethod::quadrature:
      return "quadrature";
    case VolumeMethod::monte_carlo:
      return "monte_carlo";
    case VolumeMethod::exact_2d:
      return "exact_2d";
  }
  return "unknown";
}

VolumeMethod volume_method_from_string(const std::string& name) {
  if (name == "quadrature") return VolumeMethod::quadrature;
  if (name == "monte_carlo" || name == "mc") return VolumeMethod::monte_carlo;
  if (name == "exact_2d") return VolumeMethod::exact_2d;
  throw InvalidArgumentError("unknown volume method '" + name + "'");
}

VolumeEstimate combine(std::span<const VolumeEstimate> parts) {
  VolumeEstimate total;
  if (!parts.empty()) total.method = parts.front().method;
  double var = 0.0;
  double abs_err = 0.0;
  for (const auto& p : parts) {
    total.value += p.value;
    var += p.std_error * p.std_error;
    total.evaluations += p.evaluations;
    abs_err += p.achieved_rel_error * p.value;
    total.low_confidence = total.low_confidence || p.low_confidence;
  }
  total.std_error = std::sqrt(var);
  total.achieved_rel_error = total.value > 0 ? abs_err / total.value : 0.0;
  return total;
}

nlohmann::ordered_json to_json(const VolumeEstimate& e) {
  nlohmann::ordered_json j;
  j["value"] = e.value;
  j["std_error"] = e.std_error;
  j["evaluations"] = e.evaluations;
  j["method"] = to_string(e.method);
  if (e.low_confidence) j["low_confidence"] = true;
  if (e.degenerate) j["degenerate"] = true;
  return j;
}

VolumeEstimate origin_cone_volume(std::span<const Vector> facet, const VolumeBudget& budget) {
  const FacetCone cone = make_facet_cone(facet);
  const VolumeBudget b = effective(budget, cone.n);
  if (cone.pieces.empty()) {
    VolumeEstimate zero;
    zero.method = b.method;
    zero.degenerate = true;
    return zero;
  }
  if (b.method == VolumeMethod::monte_carlo) return cone_monte_carlo(cone, b.samples, b.seed, b.threads);
  if (b.method == VolumeMethod::quadrature) return cone_quadrature(cone, b);
  throw InvalidArgumentError("origin_cone_volume supports quadrature and monte_carlo");
}

KleinPoint lorentz_barycenter(std::span<const KleinPoint> points) {
  if (points.empty()) throw InvalidArgumentError("barycentre of an empty set");
  Vector sum = Vector::Zero(points.front().dim() + 1);
  for (const auto& p : points) sum += hyperboloid_lift(p);
  return KleinPoint(klein_from_lift(sum));
}

VolumeEstimate simplex_volume(const Simplex& s, const VolumeBudget& budget) {
  require_full_simplex(s);
  const int n = s.dim();
  if (budget.method == VolumeMethod::exact_2d) {
    if (n != 2) throw InvalidArgumentError("exact_2d volumes are only available for n = 2");
    VolumeEstimate e;
    e.method = VolumeMethod::exact_2d;
    e.value = triangle_area_2d(s.vertices[0], s.vertices[1], s.vertices[2]);
    e.evaluations = 1;
    return e;
  }
  std::vector<Vector> raw;
  for (const auto& v : s.vertices) raw.push_back(v.coords());
  const double scale = std::pow(euclidean_simplex_volume(raw), 1.0 / n);
  if (!(scale > 1e-10)) throw InvalidArgumentError("simplex is not full-dimensional");
  const VolumeBudget b = effective(budget, n);
  const Isometry to_origin = Isometry::boost_to_origin(lorentz_barycenter(s.vertices).coords());
  return sum_over_facets(centred_facets(s, to_origin), b);
}

VolumeEstimate polytope_volume(const Polytope& poly, const VolumeBudget& budget) {
  const int n = poly.dim;
  if (poly.facets.empty() || !(euclidean_volume(poly) > 0.0)) {
    VolumeEstimate zero;
    zero.method = budget.method;
    zero.degenerate = true;
    return zero;
  }
  const Vector origin = Vector::Zero(n);
  const KleinPoint apex = interior_margin(poly, origin) > 1e-6 ? KleinPoint(origin)
                                                               : lorentz_barycenter(poly.vertices);
  if (budget.method == VolumeMethod::exact_2d) {
    if (n != 2) throw InvalidArgumentError("exact_2d volumes are only available for n = 2");
    VolumeEstimate e;
    e.method = VolumeMethod::exact_2d;
    for (const auto& f : poly.facets) {
      e.value += triangle_area_2d(apex, poly.vertices[static_cast<std::size_t>(f[0])],
                                  poly.vertices[static_cast<std::size_t>(f[1])]);
      ++e.evaluations;
    }
    return e;
  }
  const VolumeBudget b = effective(budget, n);
  const Isometry to_origin = Isometry::boost_to_origin(apex.coords());
  std::vector<Vector> moved;
  moved.reserve(poly.vertices.size());
  for (const auto& v : poly.vertices) moved.push_back(to_origin.apply(v.coords()));
  std::vector<std::vector<Vector>> facets;
  facets.reserve(poly.facets.size());
  for (const auto& f : poly.facets) {
    std::vector<Vector> pts;
    for (int v : f) pts.push_back(moved[static_cast<std::size_t>(v)]);
    facets.push_back(std::move(pts));
  }
  return sum_over_facets(facets, b);
}

VolumeEstimate hull_volume(std::span<const KleinPoint> points, const VolumeBudget& budget) {
  auto hull = try_convex_hull(points);
  if (std::holds_alternative<DegenerateHull>(hull)) {
    VolumeEstimate zero;
    zero.method = budget.method;
    zero.degenerate = true;
    return zero;
  }
  return polytope_volume(std::get<Polytope>(hull), budget);
}

VolumeEstimate region_volume_mc(const Region& region, int n, std::int64_t samples,
                                std::uint64_t seed, int threads) {
  if (region.support) {
    const std::function<bool(const Vector&)> membership[] = {region.membership};
    return simplex_region_volumes(*region.support, membership, samples, seed, threads).front();
  }
  if (!(region.bounding_radius < 1.0) || !(region.bounding_radius > 0.0)) {
    throw InvalidArgumentError("region bounding radius must lie in (0, 1)");
  }
  samples = std::max<std::int64_t>(samples, 2);
  const double radius = region.bounding_radius;
  const bool hyperbolic_radial = radius > 0.99;
  const double w_max = std::atanh(radius);
  const double profile_max = radial_profile(n, w_max);
  const double hyperbolic_mass = sphere_area(n - 1) * profile_max;
  const double euclidean_mass = unit_ball_volume(n) * std::pow(radius, n);
  const double max_weight = hyperbolic_radial
                                ? hyperbolic_mass
                                : euclidean_mass * std::pow(1.0 - radius * radius, -0.5 * (n + 1));

  const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
  struct Partial {
    MomentSums moments;
    std::int64_t hits = 0;
  };
  std::vector<Partial> partial(static_cast<std::size_t>(chunks));
  parallel_for(static_cast<std::size_t>(chunks), threads, [&](std::size_t c) {
    CounterRng rng(seed, c);
    const std::int64_t begin = static_cast<std::int64_t>(c) * kChunk;
    const std::int64_t end = std::min(samples, begin + kChunk);
    Partial& out = partial[c];
    for (std::int64_t i = begin; i < end; ++i) {
      const Vector dir = rng.direction(n);
      double r = 0.0;
      double weight = 0.0;
      if (hyperbolic_radial) {
        const double w = radial_profile_inverse(n, rng.uniform_open() * profile_max, w_max);
        r = std::tanh(w);
        weight = hyperbolic_mass;
      } else {
        r = radius * std::pow(rng.uniform_open(), 1.0 / n);
        weight = euclidean_mass * std::pow(1.0 - r * r, -0.5 * (n + 1));
      }
      const Vector x = r * dir;
      const double y = region.membership(x) ? weight : 0.0;
      if (y > 0) ++out.hits;
      out.moments.sum += y;
      out.moments.sum_sq += y * y;
      ++out.moments.count;
    }
  });
  MomentSums total;
  std::int64_t hits = 0;
  for (const auto& p : partial) {
    total.sum += p.moments.sum;
    total.sum_sq += p.moments.sum_sq;
    total.count += p.moments.count;
    hits += p.hits;
  }
  VolumeEstimate est;
  est.method = VolumeMethod::monte_carlo;
  est.evaluations = total.count;
  const double count = static_cast<double>(total.count);
  if (hits == 0) {
    // Posterior mean of the hit probability under a uniform prior is 1/(S+2).
    est.value = 0.0;
    est.std_error = max_weight / (count + 2.0);
    est.low_confidence = true;
    return est;
  }
  const double mean = total.sum / count;
  const double var = std::max(0.0, total.sum_sq / count - mean * mean) * count / (count - 1.0);
  est.value = mean;
  est.std_error = std::sqrt(var / count);
  est.low_confidence = hits < 10;
  return est;
}

std::vector<VolumeEstimate> simplex_region_volumes(
    const Simplex& support, std::span<const std::function<bool(const Vector&)>> memberships,
    std::int64_t samples, std::uint64_t seed, int threads) {
  require_full_simplex(support);
  const int n = support.dim();
  const KleinPoint anchor = lorentz_barycenter(support.vertices);
  const Isometry to_origin = Isometry::boost_to_origin(anchor.coords());
  const Isometry from_origin = to_origin.inverse();
  const auto facets = centred_facets(support, to_origin);
  std::vector<FacetCone> cones;
  for (const auto& f : facets) cones.push_back(make_facet_cone(f));

  const std::size_t regions = memberships.size();
  const auto facet_count = static_cast<std::int64_t>(cones.size());
  const std::int64_t per_facet = std::max<std::int64_t>(2, samples / facet_count);
  const std::int64_t chunks_per_facet = (per_facet + kChunk - 1) / kChunk;
  const std::size_t work = static_cast<std::size_t>(facet_count * chunks_per_facet);

  struct Partial {
    std::vector<MomentSums> moments;
    std::vector<std::int64_t> hits;
  };
  std::vector<Partial> partial(work);
  parallel_for(work, threads, [&](std::size_t item) {
    const std::size_t facet = item / static_cast<std::size_t>(chunks_per_facet);
    const std::size_t chunk = item % static_cast<std::size_t>(chunks_per_facet);
    Partial& out = partial[item];
    out.moments.assign(regions, {});
    out.hits.assign(regions, 0);
    const FacetCone& cone = cones[facet];
    if (cone.pieces.empty()) return;
    CounterRng rng(mix_seed(seed, facet), chunk);
    std::vector<double> cube(static_cast<std::size_t>(n - 1));
    Vector facet_point(n);
    Vector centred(n);
    const std::int64_t begin = static_cast<std::int64_t>(chunk) * kChunk;
    const std::int64_t end = std::min(per_facet, begin + kChunk);
    for (std::int64_t i = begin; i < end; ++i) {
      const double value = draw_cone_sample(cone, rng, cube, facet_point, &centred);
      const Vector point = from_origin.apply(centred);
      for (std::size_t k = 0; k < regions; ++k) {
        const double y = (value > 0 && memberships[k](point)) ? value : 0.0;
        out.moments[k].sum += y;
        out.moments[k].sum_sq += y * y;
        ++out.moments[k].count;
        if (y > 0) ++out.hits[k];
      }
    }
  });

  std::vector<VolumeEstimate> result(regions);
  for (std::size_t k = 0; k < regions; ++k) {
    double value = 0.0;
    double var = 0.0;
    std::int64_t evals = 0;
    std::int64_t hits = 0;
    for (std::int64_t f = 0; f < facet_count; ++f) {
      MomentSums m;
      for (std::int64_t c = 0; c < chunks_per_facet; ++c) {
        const Partial& p = partial[static_cast<std::size_t>(f * chunks_per_facet + c)];
        if (p.moments.empty()) continue;
        m.sum += p.moments[k].sum;
        m.sum_sq += p.moments[k].sum_sq;
        m.count += p.moments[k].count;
        hits += p.hits[k];
      }
      if (m.count < 2) continue;
      const double count = static_cast<double>(m.count);
      const double mean = m.sum / count;
      value += mean;
      var += std::max(0.0, m.sum_sq / count - mean * mean) / (count - 1.0);
      evals += m.count;
    }
    VolumeEstimate& e = result[k];
    e.method = VolumeMethod::monte_carlo;
    e.value = value;
    e.std_error = std::sqrt(var);
    e.evaluations = evals;
    e.low_confidence = hits < 10;
  }
  return result;
}

std::vector<WeightedSample> sample_simplex(const Simplex& support, std::int64_t samples,
                                           std::uint64_t seed, int threads) {
  require_full_simplex(support);
  const int n = support.dim();
  const KleinPoint anchor = lorentz_barycenter(support.vertices);
  const Isometry to_origin = Isometry::boost_to_origin(anchor.coords());
  const Isometry from_origin = to_origin.inverse();
  const auto facets = centred_facets(support, to_origin);
  std::vector<FacetCone> cones;
  for (const auto& f : facets) cones.push_back(make_facet_cone(f));
  const auto facet_count = static_cast<std::int64_t>(cones.size());
  const std::int64_t per_facet = std::max<std::int64_t>(1, samples / facet_count);
  const std::int64_t chunks_per_facet = (per_facet + kChunk - 1) / kChunk;
  const std::size_t work = static_cast<std::size_t>(facet_count * chunks_per_facet);
  std::vector<std::vector<WeightedSample>> partial(work);
  parallel_for(work, threads, [&](std::size_t item) {
    const std::size_t facet = item / static_cast<std::size_t>(chunks_per_facet);
    const std::size_t chunk = item % static_cast<std::size_t>(chunks_per_facet);
    const FacetCone& cone = cones[facet];
    if (cone.pieces.empty()) return;
    CounterRng rng(mix_seed(seed, facet), chunk);
    std::vector<double> cube(static_cast<std::size_t>(n - 1));
    Vector facet_point(n);
    Vector centred(n);
    const std::int64_t begin = static_cast<std::int64_t>(chunk) * kChunk;
    const std::int64_t end = std::min(per_facet, begin + kChunk);
    for (std::int64_t i = begin; i < end; ++i) {
      const double value = draw_cone_sample(cone, rng, cube, facet_point, &centred);
      partial[item].push_back({from_origin.apply(centred), value / static_cast<double>(per_facet)});
    }
  });
  std::vector<WeightedSample> out;
  for (auto& p : partial) {
    for (auto& s : p) out.push_back(std::move(s));
  }
  return out;
}

double klein_angle(const Vector& at, const Vector& u, const Vector& w) {
  const double a = 1.0 - at.squaredNorm();
  const auto g = [&](const Vector& p, const Vector& q) { return a * p.dot(q) + at.dot(p) * at.dot(q); };
  const double cross = u[0] * w[1] - u[1] * w[0];
  return std::atan2(std::sqrt(a) * std::abs(cross), g(u, w));
}

double triangle_area_2d(const TriangleVertex& a, const TriangleVertex& b, const TriangleVertex& c) {
  for (const auto* v : {&a, &b, &c}) {
    if (v->coords().size() != 2) throw InvalidArgumentError("triangle_area_2d needs n = 2");
  }
  const Vector ab = b.coords() - a.coords();
  const Vector ac = c.coords() - a.coords();
  const double cross = ab[0] * ac[1] - ab[1] * ac[0];
  const double scale = std::max({ab.squaredNorm(), ac.squaredNorm(), 1e-300});
  if (std::abs(cross) <= 1e-14 * scale) return 0.0;
  double angle_sum = 0.0;
  const TriangleVertex* verts[3] = {&a, &b, &c};
  for (int i = 0; i < 3; ++i) {
    const TriangleVertex& v = *verts[i];
    if (v.ideal()) continue;
    const Vector& p = v.coords();
    angle_sum += klein_angle(p, verts[(i + 1) % 3]->coords() - p, verts[(i + 2) % 3]->coords() - p);
  }
  return std::max(0.0, std::numbers::pi - angle_sum);
}

}  // namespace hypervol
