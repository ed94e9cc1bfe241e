#include "hypervol/hull.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "hypervol/rng.hpp"

namespace hypervol {
namespace {

struct Facet {
  std::vector<int> verts;
  std::vector<int> neighbors;  // neighbors[k] shares the ridge opposite verts[k]
  Vector normal;
  double offset = 0.0;
  std::vector<int> outside;
  int furthest = -1;
  double furthest_dist = 0.0;
  bool alive = true;
  int visit = 0;
};

class Quickhull {
 public:
  Quickhull(const std::vector<Vector>& points, double tol)
      : pts_(points), dim_(static_cast<int>(points.front().size())), tol_(tol) {}

  void run();
  Polytope assemble() const;

 private:
  void initial_simplex();
  void set_plane(Facet& f) const;
  double distance(const Facet& f, int p) const { return f.normal.dot(pts_[p]) - f.offset; }
  void assign(const std::vector<int>& candidates, const std::vector<int>& targets);
  void add_point(int fid);

  const std::vector<Vector>& pts_;
  int dim_;
  double tol_;
  Vector interior_;
  std::vector<Facet> facets_;
  int visit_counter_ = 0;
};

void Quickhull::initial_simplex() {
  const int n = dim_;
  const int count = static_cast<int>(pts_.size());
  Vector centroid = Vector::Zero(n);
  for (const auto& p : pts_) centroid += p;
  centroid /= count;

  std::vector<int> chosen;
  int first = 0;
  double best = -1.0;
  for (int i = 0; i < count; ++i) {
    const double d = (pts_[i] - centroid).squaredNorm();
    if (d > best) best = d, first = i;
  }
  chosen.push_back(first);

  std::vector<Vector> basis;  // orthonormal directions of the current affine span
  while (static_cast<int>(chosen.size()) < n + 1) {
    int arg = -1;
    double far = -1.0;
    Vector far_dir;
    for (int i = 0; i < count; ++i) {
      Vector r = pts_[i] - pts_[chosen.front()];
      for (const auto& b : basis) r -= b.dot(r) * b;
      const double d = r.norm();
      if (d > far) far = d, arg = i, far_dir = r;
    }
    if (far <= tol_) {
      throw DegenerateHullError(static_cast<int>(basis.size()), n);
    }
    // second Gram-Schmidt pass for orthogonality
    for (const auto& b : basis) far_dir -= b.dot(far_dir) * b;
    basis.push_back(far_dir.normalized());
    chosen.push_back(arg);
  }

  interior_ = Vector::Zero(n);
  for (int v : chosen) interior_ += pts_[v];
  interior_ /= (n + 1);

  facets_.resize(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) {
    Facet& f = facets_[static_cast<std::size_t>(k)];
    for (int j = 0; j <= n; ++j) {
      if (j == k) continue;
      f.verts.push_back(chosen[static_cast<std::size_t>(j)]);
    }
    // The ridge opposite verts[i] is shared with the facet that omits that vertex.
    for (int i = 0; i < n; ++i) {
      const int omitted = f.verts[static_cast<std::size_t>(i)];
      const int pos = static_cast<int>(std::find(chosen.begin(), chosen.end(), omitted) - chosen.begin());
      f.neighbors.push_back(pos);
    }
    set_plane(f);
  }
  std::vector<int> all(static_cast<std::size_t>(count));
  std::iota(all.begin(), all.end(), 0);
  std::vector<int> targets(static_cast<std::size_t>(n + 1));
  std::iota(targets.begin(), targets.end(), 0);
  assign(all, targets);
}

void Quickhull::set_plane(Facet& f) const {
  const int n = dim_;
  const Vector& base = pts_[f.verts.front()];
  Matrix edges(n, n - 1);
  for (int k = 1; k < n; ++k) edges.col(k - 1) = pts_[f.verts[static_cast<std::size_t>(k)]] - base;
  Eigen::HouseholderQR<Matrix> qr(edges);
  const Matrix q = qr.householderQ();
  Vector normal = q.col(n - 1);
  Vector mean = Vector::Zero(n);
  for (int v : f.verts) mean += pts_[v];
  mean /= n;
  double offset = normal.dot(mean);
  if (normal.dot(interior_) > offset) {
    normal = -normal;
    offset = -offset;
  }
  f.normal = std::move(normal);
  f.offset = offset;
}

void Quickhull::assign(const std::vector<int>& candidates, const std::vector<int>& targets) {
  for (int p : candidates) {
    int best_facet = -1;
    double best_dist = tol_;
    for (int fid : targets) {
      const double d = distance(facets_[static_cast<std::size_t>(fid)], p);
      if (d > best_dist) best_dist = d, best_facet = fid;
    }
    if (best_facet < 0) continue;
    Facet& f = facets_[static_cast<std::size_t>(best_facet)];
    f.outside.push_back(p);
    if (best_dist > f.furthest_dist) f.furthest_dist = best_dist, f.furthest = p;
  }
}

void Quickhull::add_point(int fid) {
  const int apex = facets_[static_cast<std::size_t>(fid)].furthest;
  const Vector& apex_pt = pts_[apex];
  ++visit_counter_;

  std::vector<int> visible{fid};
  facets_[static_cast<std::size_t>(fid)].visit = visit_counter_;
  std::vector<std::pair<int, int>> horizon;  // (visible facet, ridge position)
  for (std::size_t head = 0; head < visible.size(); ++head) {
    const int cur = visible[head];
    for (int k = 0; k < dim_; ++k) {
      const int nb = facets_[static_cast<std::size_t>(cur)].neighbors[static_cast<std::size_t>(k)];
      Facet& g = facets_[static_cast<std::size_t>(nb)];
      if (g.visit == visit_counter_) continue;
      if (g.normal.dot(apex_pt) - g.offset > tol_) {
        g.visit = visit_counter_;
        visible.push_back(nb);
      } else {
        horizon.emplace_back(cur, k);
      }
    }
  }

  std::vector<int> created;
  std::map<std::vector<int>, std::pair<int, int>> open_ridges;
  for (const auto& [vid, k] : horizon) {
    const Facet& old = facets_[static_cast<std::size_t>(vid)];
    Facet nf;
    nf.verts = old.verts;
    nf.verts[static_cast<std::size_t>(k)] = apex;
    nf.neighbors.assign(static_cast<std::size_t>(dim_), -1);
    const int other = old.neighbors[static_cast<std::size_t>(k)];
    nf.neighbors[static_cast<std::size_t>(k)] = other;
    set_plane(nf);
    const int new_id = static_cast<int>(facets_.size());
    facets_.push_back(std::move(nf));
    created.push_back(new_id);

    Facet& outer = facets_[static_cast<std::size_t>(other)];
    for (auto& nb : outer.neighbors) {
      if (nb == vid) nb = new_id;
    }
    // Link to the other new facets through ridges that contain the apex.
    for (int j = 0; j < dim_; ++j) {
      if (j == k) continue;
      std::vector<int> key;
      const auto& verts = facets_[static_cast<std::size_t>(new_id)].verts;
      for (int i = 0; i < dim_; ++i) {
        if (i != j) key.push_back(verts[static_cast<std::size_t>(i)]);
      }
      std::sort(key.begin(), key.end());
      auto it = open_ridges.find(key);
      if (it == open_ridges.end()) {
        open_ridges.emplace(std::move(key), std::make_pair(new_id, j));
      } else {
        const auto [mate, mate_pos] = it->second;
        facets_[static_cast<std::size_t>(new_id)].neighbors[static_cast<std::size_t>(j)] = mate;
        facets_[static_cast<std::size_t>(mate)].neighbors[static_cast<std::size_t>(mate_pos)] = new_id;
        open_ridges.erase(it);
      }
    }
  }
  if (!open_ridges.empty()) throw GeometryError("quickhull: horizon is not a closed ridge cycle");

  std::vector<int> orphans;
  for (int vid : visible) {
    Facet& f = facets_[static_cast<std::size_t>(vid)];
    f.alive = false;
    for (int p : f.outside) {
      if (p != apex) orphans.push_back(p);
    }
    f.outside.clear();
    f.outside.shrink_to_fit();
  }
  assign(orphans, created);
}

void Quickhull::run() {
  initial_simplex();
  // Process facets in creation order; every new facet is appended to the list.
  for (std::size_t i = 0; i < facets_.size(); ++i) {
    while (facets_[i].alive && !facets_[i].outside.empty()) {
      add_point(static_cast<int>(i));
    }
  }
}

Polytope Quickhull::assemble() const {
  Polytope poly;
  poly.dim = dim_;
  std::vector<int> used;
  for (const auto& f : facets_) {
    if (f.alive) used.insert(used.end(), f.verts.begin(), f.verts.end());
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::vector<int> remap(pts_.size(), -1);
  for (std::size_t i = 0; i < used.size(); ++i) {
    remap[static_cast<std::size_t>(used[i])] = static_cast<int>(i);
    poly.vertices.emplace_back(pts_[static_cast<std::size_t>(used[i])]);
  }
  for (const auto& f : facets_) {
    if (!f.alive) continue;
    std::vector<int> idx;
    for (int v : f.verts) idx.push_back(remap[static_cast<std::size_t>(v)]);
    poly.facets.push_back(std::move(idx));
    poly.halfspaces.push_back({f.normal, f.offset});
  }
  return poly;
}

std::vector<Vector> to_vectors(std::span<const KleinPoint> points) {
  std::vector<Vector> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.coords());
  return out;
}

std::string fmt_sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Largest distance by which any point lies outside a facet plane.
double worst_violation(const Polytope& poly, const std::vector<Vector>& pts) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& p : pts) {
    for (const auto& h : poly.halfspaces) worst = std::max(worst, h.normal.dot(p) - h.offset);
  }
  return worst;
}

}  // namespace

DegenerateHullError::DegenerateHullError(int affine_rank, int dimension)
    : GeometryError("degenerate hull: affine rank " + std::to_string(affine_rank) + " < " +
                    std::to_string(dimension)),
      affine_rank_(affine_rank),
      dimension_(dimension) {}

Polytope convex_hull(std::span<const KleinPoint> points, const HullOptions& options) {
  if (points.empty()) throw DegenerateHullError(-1, 0);
  const int n = points.front().dim();
  if (n < kMinHullDim || n > kMaxHullDim) {
    throw InvalidArgumentError("convex_hull supports dimensions 2..6, got " + std::to_string(n));
  }
  for (const auto& p : points) {
    if (p.dim() != n) throw DimensionMismatchError("mixed dimensions in hull input");
  }
  const std::vector<Vector> original = to_vectors(points);
  std::vector<Vector> working = original;
  double violation = NAN;
  for (int attempt = 0;; ++attempt) {
    try {
      Quickhull qh(working, options.tolerance);
      qh.run();
      Polytope poly = qh.assemble();
      violation = worst_violation(poly, original);
      if (violation <= options.validation_slack) return poly;
    } catch (const DegenerateHullError&) {
      throw;
    } catch (const GeometryError&) {
      if (attempt >= options.max_retries) throw;
    }
    if (attempt >= options.max_retries) {
      throw GeometryError("convex_hull: validation failed after perturbation retries (point outside by " +
                          fmt_sci(violation) + ")");
    }
    working = to_vectors(simplicial_perturbation(
        points, options.perturbation, mix_seed(options.seed, static_cast<std::uint64_t>(attempt))));
  }
}

std::variant<Polytope, DegenerateHull> try_convex_hull(std::span<const KleinPoint> points,
                                                       const HullOptions& options) {
  try {
    return convex_hull(points, options);
  } catch (const DegenerateHullError& e) {
    return DegenerateHull{e.affine_rank(), e.dimension()};
  }
}

std::vector<KleinPoint> simplicial_perturbation(std::span<const KleinPoint> points,
                                                double magnitude, std::uint64_t seed) {
  if (!(magnitude > 0.0)) throw InvalidArgumentError("perturbation magnitude must be positive");
  const double limit = 1.0 - 4.0 * kBoundaryTol;
  std::vector<KleinPoint> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const int n = points[i].dim();
    CounterRng rng(seed, i);
    const double radius = magnitude * std::pow(rng.uniform(), 1.0 / n);
    Vector moved = points[i].coords() + radius * rng.direction(n);
    const double norm = moved.norm();
    if (norm >= limit) moved *= limit / norm;
    out.emplace_back(std::move(moved));
  }
  return out;
}

bool contains(const Polytope& poly, const Vector& p, double slack) {
  if (p.size() != poly.dim) throw DimensionMismatchError("point/polytope dimension mismatch");
  for (const auto& h : poly.halfspaces) {
    if (h.normal.dot(p) > h.offset + slack) return false;
  }
  return true;
}

bool contains(const Polytope& poly, const KleinPoint& p, double slack) {
  return contains(poly, p.coords(), slack);
}

double interior_margin(const Polytope& poly, const Vector& p) {
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& h : poly.halfspaces) margin = std::min(margin, h.offset - h.normal.dot(p));
  return margin;
}

std::vector<Simplex> apex_triangulation(const Polytope& poly, const KleinPoint& apex) {
  if (apex.dim() != poly.dim) throw DimensionMismatchError("apex/polytope dimension mismatch");
  if (!(interior_margin(poly, apex.coords()) > 1e-12)) {
    throw InvalidArgumentError("apex is not strictly interior to the polytope");
  }
  std::vector<Simplex> out;
  out.reserve(poly.facets.size());
  for (const auto& facet : poly.facets) {
    Simplex s;
    s.vertices.push_back(apex);
    for (int v : facet) s.vertices.push_back(poly.vertices[static_cast<std::size_t>(v)]);
    out.push_back(std::move(s));
  }
  return out;
}

double euclidean_simplex_volume(std::span<const Vector> points) {
  if (points.size() < 2) return 0.0;
  const auto k = static_cast<int>(points.size()) - 1;
  const auto n = static_cast<int>(points.front().size());
  Matrix edges(n, k);
  for (int j = 0; j < k; ++j) edges.col(j) = points[static_cast<std::size_t>(j + 1)] - points[0];
  double measure = 0.0;
  if (k == n) {
    measure = std::abs(edges.determinant());
  } else {
    measure = std::sqrt(std::max(0.0, (edges.transpose() * edges).determinant()));
  }
  return measure / std::tgamma(k + 1.0);
}

double euclidean_volume(const Simplex& s) {
  std::vector<Vector> pts;
  for (const auto& v : s.vertices) pts.push_back(v.coords());
  return euclidean_simplex_volume(pts);
}

double euclidean_volume(const Polytope& poly) {
  if (poly.vertices.empty()) return 0.0;
  Vector apex = Vector::Zero(poly.dim);
  for (const auto& v : poly.vertices) apex += v.coords();
  apex /= static_cast<double>(poly.vertices.size());
  double total = 0.0;
  std::vector<Vector> pts(static_cast<std::size_t>(poly.dim + 1));
  for (const auto& facet : poly.facets) {
    pts[0] = apex;
    for (std::size_t j = 0; j < facet.size(); ++j) {
      pts[j + 1] = poly.vertices[static_cast<std::size_t>(facet[j])].coords();
    }
    total += euclidean_simplex_volume(pts);
  }
  return total;
}

nlohmann::ordered_json to_json(const Polytope& poly) {
  nlohmann::ordered_json j;
  j["dim"] = poly.dim;
  auto& verts = j["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : poly.vertices) {
    verts.push_back(std::vector<double>(v.coords().begin(), v.coords().end()));
  }
  j["facets"] = poly.facets;
  auto& hs = j["halfspaces"] = nlohmann::ordered_json::array();
  for (const auto& h : poly.halfspaces) {
    nlohmann::ordered_json entry;
    entry["normal"] = std::vector<double>(h.normal.begin(), h.normal.end());
    entry["offset"] = h.offset;
    hs.push_back(std::move(entry));
  }
  return j;
}

}  // namespace hypervol
