#pragma once

// Adaptive Gauss-Kronrod quadrature, iterated over the unit cube.

#include <cstdint>
#include <functional>
#include <span>

namespace hypervol {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // accumulated Gauss-Kronrod error estimate
  std::int64_t evaluations = 0;
};

using CubeIntegrand = std::function<double(std::span<const double>)>;

/// ∫_{[0,1]^m} f by nested adaptive G7-K15 rules; the innermost variable is
/// the last coordinate. rel_tol applies to every nesting level.
QuadratureResult integrate_cube(int m, const CubeIntegrand& f, double rel_tol,
                                unsigned max_depth = 12);

/// One-dimensional adaptive G7-K15 on [a, b].
QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol, unsigned max_depth = 15);

}  // namespace hypervol
