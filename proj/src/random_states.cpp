#include "embezzle/random_states.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "embezzle/summation.hpp"

namespace embezzle {

double StateSampler::uniform() {
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

std::uint64_t StateSampler::integer(std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo + 1;
  if (span == 0)
    return lo + rng_();
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do {
    x = rng_();
  } while (x >= limit);
  return lo + x % span;
}

double StateSampler::gaussian() {
  // Box-Muller; 1 - u lies in (0, 1].
  const double u = 1.0 - uniform();
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

std::vector<double> StateSampler::dirichlet(std::size_t m) {
  std::vector<double> w(m);
  CompensatedSum total;
  for (double& x : w) {
    x = -std::log(1.0 - uniform());
    total += x;
  }
  for (double& x : w)
    x /= total.value();
  std::sort(w.begin(), w.end(), std::greater<>());
  return w;
}

ProbabilityVector StateSampler::probabilities(std::size_t m) {
  return ProbabilityVector(dirichlet(m));
}

SchmidtVector StateSampler::schmidt(std::size_t m) {
  std::vector<double> c = dirichlet(m);
  for (double& x : c)
    x = std::sqrt(x);
  return SchmidtVector(std::move(c));
}

std::vector<std::complex<double>> StateSampler::amplitudes(std::size_t rows, std::size_t cols,
                                                           std::size_t rank) {
  std::vector<std::complex<double>> left(rows * rank), right(rank * cols);
  for (auto& z : left)
    z = {gaussian(), gaussian()};
  for (auto& z : right)
    z = {gaussian(), gaussian()};
  std::vector<std::complex<double>> out(rows * cols);
  CompensatedSum sq;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      std::complex<double> acc = 0.0;
      for (std::size_t k = 0; k < rank; ++k)
        acc += left[r * rank + k] * right[k * cols + c];
      out[r * cols + c] = acc;
      sq += std::norm(acc);
    }
  }
  const double scale = 1.0 / std::sqrt(sq.value());
  for (auto& z : out)
    z *= scale;
  return out;
}

} // namespace embezzle
