#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>

#include "embezzle/errors.hpp"
#include "embezzle/random_states.hpp"
#include "embezzle/schmidt.hpp"
#include "embezzle/svd.hpp"

using namespace embezzle;

namespace {

// Reference singular values from Eigen's two-sided Jacobi SVD.
std::vector<double> reference(std::size_t rows, std::size_t cols,
                              const std::vector<std::complex<double>>& entries) {
  Eigen::MatrixXcd m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = entries[r * cols + c];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

} // namespace

TEST_CASE("singular values of a random normalized 3x5 complex matrix") {
  StateSampler rng(3);
  const auto entries = rng.amplitudes(3, 5, 3);
  const auto ours = singular_values(3, 5, entries);
  const auto ref = reference(3, 5, entries);
  REQUIRE(ours.size() == ref.size());
  double sq = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    CHECK(std::fabs(ours[i] - ref[i]) <= 1e-10);
    sq += ours[i] * ours[i];
  }
  CHECK(std::fabs(sq - 1.0) <= 1e-9);
}

TEST_CASE("singular values match the reference across shapes and ranks") {
  StateSampler rng(5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t rows = rng.integer(1, 9);
    const std::size_t cols = rng.integer(1, 9);
    const std::size_t rank = rng.integer(1, std::min(rows, cols));
    const auto entries = rng.amplitudes(rows, cols, rank);
    const auto ours = singular_values(rows, cols, entries);
    const auto ref = reference(rows, cols, entries);
    REQUIRE(ours.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i)
      CHECK(std::fabs(ours[i] - ref[i]) <= 1e-10);

    const SchmidtVector s = schmidt_decompose(AmplitudeMatrix(rows, cols, entries));
    CHECK(s.rank() == rank);
  }
}

TEST_CASE("diagonal and permuted inputs") {
  const std::vector<std::complex<double>> diag{0.8, 0.0, 0.0, 0.0, 0.0, 0.6};
  const auto sv = singular_values(2, 3, diag);
  REQUIRE(sv.size() == 2);
  CHECK(sv[0] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(sv[1] == doctest::Approx(0.6).epsilon(1e-15));

  // A column permutation of the identity-like matrix is already orthogonal.
  const std::vector<std::complex<double>> perm{0.0, 0.6, 0.8, 0.0};
  const auto pv = singular_values(2, 2, perm);
  CHECK(pv[0] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(pv[1] == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("shape errors") {
  const std::vector<std::complex<double>> three(3);
  CHECK_THROWS_AS(singular_values(0, 3, {}), Error);
  CHECK_THROWS_AS(singular_values(2, 2, three), Error);
}
