#include "embezzle/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "embezzle/embezzlement.hpp"
#include "embezzle/random_states.hpp"
#include "embezzle/schmidt.hpp"
#include "embezzle/summation.hpp"

namespace embezzle {

namespace {

constexpr double kTol = kConsistencyTolerance;

constexpr const char* kInvariantNames[] = {
    "normalization-closure",
    "entropy-additivity",
    "rearrangement-maximality",
    "majorization-reflexive",
    "majorization-transitive",
    "trumping-extends-majorization",
    "decompose-self-overlap",
    "omega-le-mu",
    "fidelity-chain",
    "majorization-step",
    "fidelity-log-bound",
    "delta-log-bound",
    "delta-identity",
    "fannes-consistency",
    "stream-sums-consistency",
    "report-consistency",
    "streaming-oracle-equivalence",
    "tie-break-independence",
};

class Ledger {
public:
  Ledger() {
    for (const char* name : kInvariantNames) {
      index_[name] = results_.size();
      results_.push_back(InvariantResult{name, 0, 0, {}});
    }
  }

  void check(const std::string& name, bool ok, const std::function<std::string()>& describe) {
    InvariantResult& r = results_.at(index_.at(name));
    ++r.checks;
    if (!ok) {
      if (r.failures == 0)
        r.first_failure = describe();
      ++r.failures;
    }
  }

  std::vector<InvariantResult> take() { return std::move(results_); }

private:
  std::map<std::string, std::size_t> index_;
  std::vector<InvariantResult> results_;
};

bool valid_distribution(std::span<const double> v, bool squared) {
  if (v.empty())
    return false;
  CompensatedSum total;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (!(v[j] >= 0.0) || (j > 0 && v[j] > v[j - 1]))
      return false;
    total += squared ? v[j] * v[j] : v[j];
  }
  return std::fabs(total.value() - 1.0) <= kConstructionTolerance;
}

std::string describe_ranks(std::size_t a, std::size_t b) {
  std::ostringstream os;
  os << "rank(a)=" << a << " rank(b)=" << b;
  return os.str();
}

std::string describe_instance(std::uint64_t n, std::size_t m, std::uint64_t instance) {
  std::ostringstream os;
  os << "instance " << instance << ": n=" << n << " m=" << m;
  return os.str();
}

// Moves two entries toward each other: the result is majorized by the input.
std::vector<double> average_pair(StateSampler& rng, std::vector<double> v) {
  if (v.size() < 2)
    return v;
  const std::size_t i = rng.integer(0, v.size() - 1);
  std::size_t j = rng.integer(0, v.size() - 2);
  if (j >= i)
    ++j;
  const double t = rng.uniform();
  const double vi = v[i], vj = v[j];
  v[i] = t * vi + (1.0 - t) * vj;
  v[j] = (1.0 - t) * vi + t * vj;
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

std::vector<double> squares(std::span<const double> v) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](double x) { return x * x; });
  return out;
}

void schmidt_core_invariants(StateSampler& rng, Ledger& ledger) {
  constexpr int kInstances = 1000;
  constexpr int kRearrangementInstances = 100;
  constexpr int kPermutations = 100;

  for (int it = 0; it < kInstances; ++it) {
    const SchmidtVector a = rng.schmidt(rng.integer(1, 16));
    const SchmidtVector b = rng.schmidt(rng.integer(1, 16));
    const auto ranks = [&] { return describe_ranks(a.rank(), b.rank()); };

    const SchmidtVector ab = tensor_spectrum_full(a, b);
    ledger.check("normalization-closure", valid_distribution(ab.coeffs(), true), ranks);
    ledger.check("normalization-closure", valid_distribution(a.spectrum().probs(), false), ranks);
    ledger.check("normalization-closure",
                 valid_distribution(maximally_entangled(a.rank()).coeffs(), true), ranks);

    const double s_ab = von_neumann_entropy(ab);
    const double s_sum = von_neumann_entropy(a) + von_neumann_entropy(b);
    ledger.check("entropy-additivity", std::fabs(s_ab - s_sum) <= kConstructionTolerance, ranks);

    if (it < kRearrangementInstances) {
      const std::size_t len = std::max(a.rank(), b.rank());
      std::vector<double> pa(len, 0.0), pb(len, 0.0);
      std::copy(a.coeffs().begin(), a.coeffs().end(), pa.begin());
      std::copy(b.coeffs().begin(), b.coeffs().end(), pb.begin());
      const double best = overlap_fidelity(a, b);
      for (int p = 0; p < kPermutations; ++p) {
        std::shuffle(pb.begin(), pb.end(), rng.engine());
        const double permuted = std::inner_product(pa.begin(), pa.end(), pb.begin(), 0.0);
        ledger.check("rearrangement-maximality", best >= permuted - kTol, ranks);
      }
    }

    const ProbabilityVector x = rng.probabilities(rng.integer(1, 16));
    ledger.check("majorization-reflexive", majorizes(x, x), ranks);

    const ProbabilityVector y(average_pair(rng, {x.probs().begin(), x.probs().end()}));
    const ProbabilityVector z(average_pair(rng, {y.probs().begin(), y.probs().end()}));
    const auto chain = [&] {
      std::ostringstream os;
      os << "chain of length " << x.size();
      return os.str();
    };
    ledger.check("majorization-transitive", majorizes(x, y) && majorizes(y, z), chain);
    ledger.check("majorization-transitive", majorizes(x, z), chain);

    const ProbabilityVector c = rng.probabilities(rng.integer(1, 4));
    // y was obtained from x by averaging, so x majorizes y: x trumps y with any catalyst.
    ledger.check("trumping-extends-majorization", is_trumped(y, x, c), chain);

    const std::size_t rows = rng.integer(1, 6);
    const std::size_t cols = rng.integer(1, 6);
    const std::size_t rank = rng.integer(1, std::min(rows, cols));
    const SchmidtVector d = schmidt_decompose(AmplitudeMatrix(rows, cols, rng.amplitudes(rows, cols, rank)));
    const auto shape = [&] {
      std::ostringstream os;
      os << rows << "x" << cols << " rank " << rank;
      return os.str();
    };
    ledger.check("normalization-closure", valid_distribution(d.coeffs(), true), shape);
    ledger.check("decompose-self-overlap", std::fabs(overlap_fidelity(d, d) - 1.0) <= kTol, shape);
  }
}

void embezzlement_invariants(StateSampler& rng, Ledger& ledger, double omega_scale) {
  constexpr int kTargets = 1000;
  constexpr std::uint64_t kRanks[] = {16, 256, 4096};

  std::map<std::uint64_t, SchmidtVector> mu_cache;
  for (std::uint64_t n : kRanks)
    mu_cache.emplace(n, build_embezzler(EmbezzlerIndex(n)));

  for (int t = 0; t < kTargets; ++t) {
    const std::size_t m = rng.integer(1, 16);
    const TargetState phi(rng.schmidt(m));
    const double entropy = von_neumann_entropy(phi.alphas());

    for (std::uint64_t n : kRanks) {
      const auto where = [&] { return describe_instance(n, m, t); };
      const EmbezzlerIndex idx(n);
      const std::span<const double> mu = mu_cache.at(n).coeffs();

      std::vector<double> omega = omega_top_k(idx, phi, n * m);
      for (double& w : omega)
        w *= omega_scale;

      bool below = true;
      for (std::uint64_t j = 0; j < n; ++j)
        below = below && omega[j] <= mu[j] + kTol;
      ledger.check("omega-le-mu", below, where);

      CompensatedSum fid, head_sq, head_mu_diff, tail_sq;
      for (std::uint64_t j = 0; j < n; ++j) {
        fid += mu[j] * omega[j];
        head_sq += omega[j] * omega[j];
        head_mu_diff += mu[j] * mu[j] - omega[j] * omega[j];
      }
      for (std::uint64_t j = n; j < omega.size(); ++j)
        tail_sq += omega[j] * omega[j];
      const double fidelity = fid.value();
      const double sum_sq = head_sq.value();
      const double delta = head_mu_diff.value() + tail_sq.value();

      ledger.check("fidelity-chain", fidelity >= sum_sq - kTol, where);

      std::vector<double> psi;
      psi.reserve(n * m);
      for (std::uint64_t j = 0; j < n; ++j)
        psi.insert(psi.end(), m, mu[j] * mu[j] / static_cast<double>(m));
      ledger.check("majorization-step", majorizes(squares(omega), psi), where);

      if (n >= 2) {
        ledger.check("fidelity-log-bound", sum_sq >= fidelity_lower_bound(n, m) - kTol, where);
        ledger.check("delta-log-bound", delta <= delta_upper_bound(n, m) + kTol, where);
      }

      ledger.check("delta-identity", std::fabs(delta - 2.0 * (1.0 - sum_sq)) <= kTol, where);
      const double trace = reduced_trace_distance(squares(mu), squares(omega));
      ledger.check("delta-identity", std::fabs(delta - trace) <= kTol, where);

      if (delta < 1.0 / std::numbers::e) {
        const double floor = fannes_min_delta(entropy, m, n).delta;
        ledger.check("fannes-consistency", floor <= delta + kTol, where);
      }

      const ProtocolSums sums = protocol_sums(idx, phi);
      ledger.check("stream-sums-consistency",
                   std::fabs(sums.fidelity - fidelity) <= kTol &&
                       std::fabs(sums.sum_omega_sq - sum_sq) <= kTol &&
                       std::fabs(protocol_delta(idx, phi) - delta) <= kTol,
                   where);

      ledger.check("report-consistency", check_report(bound_report(idx, phi)).empty(), where);
    }
  }
}

void streaming_invariants(StateSampler& rng, Ledger& ledger) {
  constexpr int kInstances = 200;
  for (int t = 0; t < kInstances; ++t) {
    const std::uint64_t n = rng.integer(1, 500);
    const std::size_t m = rng.integer(1, 8);
    const TargetState phi(rng.schmidt(m));
    const auto streamed = omega_top_k(EmbezzlerIndex(n), phi, n * m);
    const auto full = tensor_spectrum_full(build_embezzler(EmbezzlerIndex(n)), phi.alphas());
    bool same = streamed.size() == full.rank();
    for (std::size_t j = 0; same && j < streamed.size(); ++j)
      same = std::fabs(streamed[j] - full[j]) <= kTol;
    ledger.check("streaming-oracle-equivalence", same,
                 [&] { return describe_instance(n, m, t); });
  }

  constexpr int kTieInstances = 100;
  for (int t = 0; t < kTieInstances; ++t) {
    const std::uint64_t n = rng.integer(2, 2000);
    const std::size_t m = rng.integer(2, 16);
    // Repeated coefficients: Phi^m itself, or a few distinct levels.
    std::vector<double> coeffs;
    if (t % 2 == 0) {
      coeffs.assign(m, 1.0 / std::sqrt(static_cast<double>(m)));
    } else {
      const std::size_t levels = rng.integer(1, std::max<std::size_t>(1, m / 2));
      const auto weights = rng.dirichlet(levels);
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t level = i % levels;
        const std::size_t copies = m / levels + (level < m % levels ? 1 : 0);
        coeffs.push_back(std::sqrt(weights[level] / static_cast<double>(copies)));
      }
    }
    const double reference = protocol_fidelity(EmbezzlerIndex(n), TargetState(SchmidtVector(coeffs)));
    std::shuffle(coeffs.begin(), coeffs.end(), rng.engine());
    const double shuffled = protocol_fidelity(EmbezzlerIndex(n), TargetState(SchmidtVector(coeffs)));
    ledger.check("tie-break-independence", reference == shuffled,
                 [&] { return describe_instance(n, m, t); });
  }
}

} // namespace

SelftestSummary run_selftest(const SelftestOptions& options) {
  Ledger ledger;
  StateSampler rng(options.seed);
  schmidt_core_invariants(rng, ledger);
  embezzlement_invariants(rng, ledger, options.fault_omega_scale);
  streaming_invariants(rng, ledger);
  return SelftestSummary{ledger.take()};
}

} // namespace embezzle
