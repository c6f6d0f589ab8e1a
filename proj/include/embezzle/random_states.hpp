#ifndef EMBEZZLE_RANDOM_STATES_HPP
#define EMBEZZLE_RANDOM_STATES_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "embezzle/schmidt.hpp"

namespace embezzle {

/// Generators for property checks. Uniform variates are built from raw
/// mt19937_64 bits so a seed reproduces the same states on every platform.
class StateSampler {
public:
  explicit StateSampler(std::uint64_t seed) : rng_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform integer on [lo, hi].
  std::uint64_t integer(std::uint64_t lo, std::uint64_t hi);
  double gaussian();

  /// Symmetric Dirichlet(1) sample of length m, sorted non-increasing.
  std::vector<double> dirichlet(std::size_t m);

  ProbabilityVector probabilities(std::size_t m);
  /// Squared coefficients are Dirichlet(1).
  SchmidtVector schmidt(std::size_t m);

  /// Normalized rows x cols complex Gaussian matrix of rank `rank`
  /// (product of rows x rank and rank x cols factors).
  std::vector<std::complex<double>> amplitudes(std::size_t rows, std::size_t cols,
                                               std::size_t rank);

  std::mt19937_64& engine() noexcept { return rng_; }

private:
  std::mt19937_64 rng_;
};

} // namespace embezzle

#endif
