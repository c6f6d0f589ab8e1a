#ifndef EMBEZZLE_EMBEZZLEMENT_HPP
#define EMBEZZLE_EMBEZZLEMENT_HPP

#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "embezzle/schmidt.hpp"

namespace embezzle {

/// Largest embezzler rank for which the streaming merge is run. Above this
/// the protocol fidelity is refused and only closed-form bounds are reported.
inline constexpr std::uint64_t kMaxExactRank = 100'000'000;

/// Schmidt rank n of the embezzling state mu(n). Always >= 1.
class EmbezzlerIndex {
public:
  explicit EmbezzlerIndex(std::uint64_t n);
  std::uint64_t value() const noexcept { return n_; }

private:
  std::uint64_t n_;
};

/// The state to embezzle, in Schmidt form.
class TargetState {
public:
  explicit TargetState(SchmidtVector alphas) : alphas_(std::move(alphas)) {}

  const SchmidtVector& alphas() const noexcept { return alphas_; }
  std::size_t m() const noexcept { return alphas_.rank(); }

private:
  SchmidtVector alphas_;
};

/// C(n) = sum_{j<=n} 1/j, accumulated smallest term first with compensation.
double harmonic_number(std::uint64_t n);

/// j-th coefficient (1-based) of mu(n) given ln C(n).
double embezzler_coefficient(std::uint64_t j, double log_harmonic);

/// Coefficients 1/sqrt(j C(n)), j = 1..n.
SchmidtVector build_embezzler(EmbezzlerIndex n);

/// Yields the Schmidt coefficients of mu(n) (x) phi in non-increasing order
/// without materializing them.
///
/// Each target coefficient alpha_i spawns the stream alpha_i * mu_j, j = 1..n,
/// which is already sorted, so the global order is an m-way merge. The
/// frontier of every stream sits in a max-heap of size m; equal values pop in
/// ascending stream index, matching the lexicographic tie-break of the full
/// sort. Memory is O(m), each pop costs O(log m).
class OmegaStream {
public:
  OmegaStream(EmbezzlerIndex n, const TargetState& phi);

  bool done() const noexcept { return heap_.empty(); }
  double next();

private:
  struct Head {
    double value;
    std::uint32_t stream;
    std::uint64_t j;
  };
  struct Lower {
    bool operator()(const Head& a, const Head& b) const noexcept {
      if (a.value != b.value)
        return a.value < b.value;
      return a.stream > b.stream;
    }
  };

  std::uint64_t n_;
  double log_c_;
  std::vector<double> alphas_;
  std::priority_queue<Head, std::vector<Head>, Lower> heap_;
};

/// The k largest coefficients of mu(n) (x) phi, non-increasing.
std::vector<double> omega_top_k(EmbezzlerIndex n, const TargetState& phi, std::uint64_t k);

/// One pass over the top-n stream.
struct ProtocolSums {
  double fidelity = 0.0;      ///< sum_j mu_j omega_j
  double sum_omega_sq = 0.0;  ///< sum_j omega_j^2
  double sum_mu_sq = 0.0;     ///< sum_j mu_j^2 (one up to rounding)
};

ProtocolSums protocol_sums(EmbezzlerIndex n, const TargetState& phi);

/// |<mu(n)|omega(n)>|: the exact fidelity of the communication-free protocol.
double protocol_fidelity(EmbezzlerIndex n, const TargetState& phi);

double sum_omega_sq(EmbezzlerIndex n, const TargetState& phi);

/// Tr|omega(n)_A - mu(n)_A| in the two-sum form; the tail beyond n is
/// recovered as 1 - sum_omega_sq.
double protocol_delta(EmbezzlerIndex n, const TargetState& phi);

/// max(0, 1 - log m / log n). Throws UndefinedBound for n < 2 with m >= 2.
double fidelity_lower_bound(std::uint64_t n, std::uint64_t m);

/// 2 log m / log n. Throws UndefinedBound for n < 2 with m >= 2.
double delta_upper_bound(std::uint64_t n, std::uint64_t m);

struct MinRank {
  /// Smallest n > m^(1/epsilon); empty when it does not fit in 63 bits.
  std::optional<std::uint64_t> n;
  /// ceil((1/epsilon) log2 m): the size of the catalyst in qubit pairs.
  std::uint64_t qubit_pairs = 0;
};

MinRank min_rank_for(double epsilon, std::uint64_t m);

/// -delta log2 delta, eta(0) = 0.
double eta(double delta);

struct FannesFloor {
  double delta = 0.0;
  /// Left side at 1/e is still below the entropy; delta is clamped to 1/e.
  bool saturated = false;
};

/// Smallest trace distance any LOCC protocol with a rank-n catalyst can
/// reach: root of delta (log2 m + log2 n) + eta(delta) = S on (0, 1/e].
FannesFloor fannes_min_delta(double target_entropy_bits, std::uint64_t m, std::uint64_t n);

struct BoundReport {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  /// False in bound-only mode (n above kMaxExactRank); the three
  /// stream-derived fields are then NaN.
  bool exact = true;
  double fidelity = 0.0;
  double eq4_bound = 0.0;
  double sum_omega_sq = 0.0;
  double delta = 0.0;
  double eq6_bound = 0.0;
  double fannes_floor = 0.0;
  bool fannes_saturated = false;
  double target_entropy_bits = 0.0;
  double epsilon_implied = 0.0;
};

BoundReport bound_report(EmbezzlerIndex n, const TargetState& phi);

/// Names of violated report invariants; empty when consistent.
std::vector<std::string> check_report(const BoundReport& r,
                                      double tolerance = kConsistencyTolerance);

} // namespace embezzle

#endif
