#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "common.hpp"
#include "hypervol/cones.hpp"
#include "hypervol/hull.hpp"

namespace hypervol {
namespace {

// m + 1 unit vectors in R^m with pairwise inner product -1/m.
Matrix simplex_directions(int m) {
  if (m == 1) {
    Matrix d(1, 2);
    d << 1.0, -1.0;
    return d;
  }
  Matrix centred = Matrix::Identity(m + 1, m + 1);
  centred.array() -= 1.0 / (m + 1);
  Eigen::HouseholderQR<Matrix> qr(centred);
  const Matrix q = qr.householderQ();
  Matrix d = q.leftCols(m).transpose() * centred;
  for (int j = 0; j <= m; ++j) d.col(j).normalize();
  return d;
}

// k directions spread over the sphere: equally spaced for n = 2, greedy
// farthest-point selection from a seeded candidate set otherwise.
std::vector<Vector> cap_centers(int n, int k, std::uint64_t seed) {
  std::vector<Vector> out;
  if (n == 2) {
    for (int j = 0; j < k; ++j) {
      const double a = 2.0 * std::numbers::pi * j / k;
      out.push_back(Vector::Unit(2, 0) * std::cos(a) + Vector::Unit(2, 1) * std::sin(a));
    }
    return out;
  }
  CounterRng rng(seed, 0xca9);
  std::vector<Vector> candidates;
  for (int i = 0; i < 256 * k; ++i) candidates.push_back(rng.direction(n));
  out.push_back(candidates.front());
  while (static_cast<int>(out.size()) < k) {
    std::size_t best = 0;
    double best_gap = -2.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      double nearest = 2.0;
      for (const auto& c : out) nearest = std::min(nearest, 1.0 - candidates[i].dot(c));
      if (nearest > best_gap) {
        best_gap = nearest;
        best = i;
      }
    }
    out.push_back(candidates[best]);
  }
  return out;
}

struct Baseline {
  std::vector<KleinPoint> points;
  double volume = 0.0;
};

// Disjoint near-ideal simplices, one inscribed in each of k caps of angular
// radius α whose centers are more than 2α apart.
Baseline disjoint_simplices(int n, int count, const VolumeBudget& budget, std::uint64_t seed) {
  const int k = count / (n + 1);
  if (k < 1) throw InvalidArgumentError("extremal-search needs N >= n + 1");
  const auto centers = cap_centers(n, k, seed);
  double min_angle = std::numbers::pi;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      min_angle = std::min(min_angle, std::acos(std::clamp(centers[i].dot(centers[j]), -1.0, 1.0)));
    }
  }
  const double alpha = 0.45 * min_angle;
  const Matrix ring = simplex_directions(n - 1);
  Baseline base;
  for (int j = 0; j < k; ++j) {
    const Vector& c = centers[static_cast<std::size_t>(j)];
    Eigen::HouseholderQR<Matrix> qr(Matrix(c.replicate(1, 1)));
    const Matrix q = qr.householderQ();
    const Matrix tangent = q.rightCols(n - 1);
    Simplex s;
    s.vertices.emplace_back(kIdealTruncation * c);
    for (int i = 0; i < n; ++i) {
      const Vector dir = std::cos(alpha) * c + std::sin(alpha) * (tangent * ring.col(i));
      s.vertices.emplace_back(kIdealTruncation * dir.normalized());
    }
    base.volume += simplex_volume(s, budget).value;
    base.points.insert(base.points.end(), s.vertices.begin(), s.vertices.end());
  }
  const int leftover = count - k * (n + 1);
  const auto extra = uniform_ideal_points(n, leftover, mix_seed(seed, 0x1e));
  base.points.insert(base.points.end(), extra.begin(), extra.end());
  return base;
}

double hull_volume_or_zero(const std::vector<KleinPoint>& points, const VolumeBudget& budget) {
  const VolumeEstimate e = hull_volume(points, budget);
  return e.degenerate ? 0.0 : e.value;
}

}  // namespace

CommandResult cmd_extremal_search(const RunConfig& config) {
  CommandResult result;
  auto& table = result.table;
  table.header = {"row", "n", "N", "step", "temperature", "current", "best", "accepted", "ratio", "seed", "pass"};
  detail::append(table.header, detail::budget_header());
  const int n = config.dimensions.empty() ? 2 : config.dimensions.front();
  const int count = config.points;
  const VolumeBudget budget = detail::budget_for(config, 0xe5);
  const AnnealingSchedule& sched = config.annealing;

  const Baseline base = disjoint_simplices(n, count, budget, config.seed);
  std::vector<KleinPoint> current = base.points;
  double current_volume = hull_volume_or_zero(current, budget);
  double best_volume = current_volume;
  CounterRng rng(mix_seed(config.seed, 0x5a), 0);
  bool monotone = true;
  double last_best = best_volume;
  for (int step = 0; step < sched.steps; ++step) {
    const double frac = sched.steps > 1 ? static_cast<double>(step) / (sched.steps - 1) : 1.0;
    const double temperature =
        sched.initial_temperature * std::pow(sched.final_temperature / sched.initial_temperature, frac);
    const auto index = static_cast<std::size_t>(rng.below(current.size()));
    Vector dir = current[index].coords().normalized();
    for (int d = 0; d < n; ++d) dir[d] += sched.move_scale * rng.normal();
    std::vector<KleinPoint> proposal = current;
    proposal[index] = KleinPoint(kIdealTruncation * dir.normalized());
    const double proposal_volume = hull_volume_or_zero(proposal, budget);
    const double delta = proposal_volume - current_volume;
    const double u = rng.uniform();
    const bool accepted = proposal_volume > 0.0 && (delta >= 0.0 || u < std::exp(delta / temperature));
    if (accepted) {
      current = std::move(proposal);
      current_volume = proposal_volume;
      best_volume = std::max(best_volume, current_volume);
    }
    monotone = monotone && best_volume >= last_best;
    last_best = best_volume;
    std::vector<std::string> row = {"trace", cell(n), cell(count), cell(step), cell(temperature),
                                    cell(current_volume), cell(best_volume), cell(accepted), "",
                                    cell(config.seed), cell(true)};
    detail::append(row, detail::budget_cells(budget));
    table.add(std::move(row));
  }
  // The search starts from the baseline configuration, whose hull contains the disjoint simplices.
  const double ratio = best_volume / base.volume;
  const bool pass = monotone && best_volume >= base.volume * (1.0 - budget.rel_tol);
  result.passed = pass;
  result.log.push_back(fmt::format("n={} N={}: baseline {:.6f}, best {:.6f}, ratio {:.4f}", n, count,
                                   base.volume, best_volume, ratio));
  std::vector<std::string> row = {"baseline", cell(n), cell(count), "", "", cell(base.volume), "", "", "",
                                  cell(config.seed), cell(true)};
  detail::append(row, detail::budget_cells(budget));
  table.add(std::move(row));
  row = {"best", cell(n), cell(count), cell(sched.steps), "", cell(current_volume), cell(best_volume), "",
         cell(ratio), cell(config.seed), cell(pass)};
  detail::append(row, detail::budget_cells(budget));
  table.add(std::move(row));
  return result;
}

}  // namespace hypervol
