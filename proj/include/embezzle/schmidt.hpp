#ifndef EMBEZZLE_SCHMIDT_HPP
#define EMBEZZLE_SCHMIDT_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace embezzle {

/// Tolerance on the squared-norm (or total probability) when a vector is
/// constructed from caller data.
inline constexpr double kConstructionTolerance = 1e-9;

/// Tolerance used by self-consistency checks and prefix-sum comparisons.
inline constexpr double kConsistencyTolerance = 1e-12;

/// Largest product spectrum that may be materialized in memory.
inline constexpr std::size_t kMaxProductEntries = 100'000'000;

class ProbabilityVector;

/// Schmidt coefficients of a bipartite pure state.
///
/// Always sorted non-increasing with zeros stripped, so size() is the
/// Schmidt rank. Squares sum to one; inputs within the tolerance are
/// rescaled, anything further off is rejected with ErrorCode::Normalization.
class SchmidtVector {
public:
  explicit SchmidtVector(std::vector<double> coeffs,
                         double tolerance = kConstructionTolerance);

  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::size_t rank() const noexcept { return coeffs_.size(); }
  double operator[](std::size_t i) const { return coeffs_[i]; }

  /// Squared coefficients: the spectrum of either reduced state.
  ProbabilityVector spectrum() const;

  friend bool operator==(const SchmidtVector&, const SchmidtVector&) = default;

private:
  std::vector<double> coeffs_;
};

/// Spectrum of a reduced density matrix in its eigenbasis, sorted
/// non-increasing with zeros stripped.
class ProbabilityVector {
public:
  explicit ProbabilityVector(std::vector<double> probs,
                             double tolerance = kConstructionTolerance);

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

  friend bool operator==(const ProbabilityVector&, const ProbabilityVector&) = default;

private:
  std::vector<double> probs_;
};

/// Dense row-major amplitudes c_{ab} of a state sum_{ab} c_{ab} |a>|b>.
class AmplitudeMatrix {
public:
  AmplitudeMatrix(std::size_t rows, std::size_t cols,
                  std::vector<std::complex<double>> entries,
                  double tolerance = kConstructionTolerance);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const std::complex<double>> entries() const noexcept { return entries_; }
  const std::complex<double>& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::complex<double>> entries_;
};

SchmidtVector schmidt_decompose(const AmplitudeMatrix& a);

/// Phi^m: m equal coefficients 1/sqrt(m).
SchmidtVector maximally_entangled(std::size_t m);

/// All pairwise products, sorted non-increasing with ties ordered by the
/// lexicographic (i, j) index pair. Refuses more than kMaxProductEntries.
SchmidtVector tensor_spectrum_full(const SchmidtVector& a, const SchmidtVector& b);
ProbabilityVector tensor_spectrum_full(const ProbabilityVector& a,
                                       const ProbabilityVector& b);

/// sum_j a_j b_j with the shorter vector zero-padded.
double overlap_fidelity(std::span<const double> a, std::span<const double> b);
double overlap_fidelity(const SchmidtVector& a, const SchmidtVector& b);

/// Entropy in bits, 0 log 0 = 0.
double von_neumann_entropy(const ProbabilityVector& p);
double von_neumann_entropy(const SchmidtVector& s);

/// Unnormalized trace norm sum_j |p_j - q_j| of two index-aligned commuting
/// states. Range [0, 2].
double reduced_trace_distance(std::span<const double> p, std::span<const double> q);
double reduced_trace_distance(const ProbabilityVector& p, const ProbabilityVector& q);

/// First prefix length k (1-based) with sum_{j<=k} x_j < sum_{j<=k} y_j - tol,
/// or nullopt when x majorizes y.
std::optional<std::size_t> majorization_violation(std::span<const double> x,
                                                  std::span<const double> y,
                                                  double tolerance = kConsistencyTolerance);

/// x majorizes y.
bool majorizes(std::span<const double> x, std::span<const double> y);
bool majorizes(const ProbabilityVector& x, const ProbabilityVector& y);

/// Whether catalyst c enables x -> y: y (x) c majorizes x (x) c.
bool is_trumped(const ProbabilityVector& x, const ProbabilityVector& y,
                const ProbabilityVector& c);

} // namespace embezzle

#endif
