#include "hypervol/quadrature.hpp"

#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace hypervol {
namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Nested {
  int m;
  const CubeIntegrand& f;
  double rel_tol;
  unsigned max_depth;
  std::vector<double> x;
  double inner_error = 0.0;
  std::int64_t evaluations = 0;

  double level(int k) {
    if (k == m) {
      ++evaluations;
      return f(std::span<const double>(x.data(), x.size()));
    }
    auto g = [this, k](double t) {
      x[static_cast<std::size_t>(k)] = t;
      return level(k + 1);
    };
    double err = 0.0;
    const double v = Rule::integrate(g, 0.0, 1.0, max_depth, rel_tol, &err);
    if (k > 0) inner_error = std::max(inner_error, err);
    else outer_error = err;
    return v;
  }
  double outer_error = 0.0;
};

}  // namespace

QuadratureResult integrate_cube(int m, const CubeIntegrand& f, double rel_tol, unsigned max_depth) {
  Nested nested{m, f, rel_tol, max_depth, std::vector<double>(static_cast<std::size_t>(m), 0.0)};
  QuadratureResult result;
  result.value = nested.level(0);
  result.error = nested.outer_error + nested.inner_error;
  result.evaluations = nested.evaluations;
  return result;
}

QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol, unsigned max_depth) {
  QuadratureResult result;
  auto counted = [&](double t) {
    ++result.evaluations;
    return f(t);
  };
  result.value = Rule::integrate(counted, a, b, max_depth, rel_tol, &result.error);
  return result;
}

}  // namespace hypervol
