#pragma once

#include <cstdint>
#include <limits>

#include <Eigen/Dense>

namespace hypervol {

/// Counter-based generator: output i of stream (seed, stream) is a pure
/// function of (seed, stream, i), so substreams can be handed to workers in
/// any order and still reproduce the same draws.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  /// Standard normal; always consumes exactly two raw draws.
  double normal();
  /// Uniformly distributed unit vector in R^n.
  Eigen::VectorXd direction(int n);
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Mixes several 64-bit words into one; used to derive substream ids.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c);

}  // namespace hypervol
