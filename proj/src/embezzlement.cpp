#include "embezzle/embezzlement.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "embezzle/errors.hpp"
#include "embezzle/summation.hpp"

namespace embezzle {

namespace {

constexpr double kInvE = 1.0 / std::numbers::e;
constexpr double kFannesLowerBracket = 1e-18;
constexpr int kFannesMaxIterations = 200;

// Relative distance under which m^(1/epsilon) is treated as the nearby
// integer, so epsilon = 0.2 means exactly 1/5.
constexpr long double kPowerSnap = 1e-12L;

void require_bound_defined(std::uint64_t n, std::uint64_t m, const char* what) {
  if (n < 2 && m >= 2) {
    std::ostringstream os;
    os << what << ": bounds undefined for n<2 (log n = 0), got n=" << n;
    fail(ErrorCode::UndefinedBound, os.str());
  }
  if (m == 0)
    fail(ErrorCode::InvalidArgument, std::string(what) + ": m must be at least 1");
}

double fannes_lhs(double delta, double log_dim) { return delta * log_dim + eta(delta); }

} // namespace

EmbezzlerIndex::EmbezzlerIndex(std::uint64_t n) : n_(n) {
  if (n == 0)
    fail(ErrorCode::InvalidArgument, "embezzler rank n must be at least 1");
}

double harmonic_number(std::uint64_t n) {
  if (n == 0)
    fail(ErrorCode::InvalidArgument, "harmonic_number: n must be at least 1");
  CompensatedSum s;
  for (std::uint64_t j = n; j >= 1; --j)
    s += 1.0 / static_cast<double>(j);
  return s.value();
}

double embezzler_coefficient(std::uint64_t j, double log_harmonic) {
  return std::exp(-0.5 * (std::log(static_cast<double>(j)) + log_harmonic));
}

SchmidtVector build_embezzler(EmbezzlerIndex n) {
  if (n.value() > kMaxProductEntries) {
    std::ostringstream os;
    os << "build_embezzler: n=" << n.value() << " exceeds the memory budget of "
       << kMaxProductEntries << " coefficients";
    fail(ErrorCode::SizeLimit, os.str());
  }
  const double log_c = std::log(harmonic_number(n.value()));
  std::vector<double> mu(n.value());
  for (std::uint64_t j = 1; j <= n.value(); ++j)
    mu[j - 1] = embezzler_coefficient(j, log_c);
  return SchmidtVector(std::move(mu));
}

OmegaStream::OmegaStream(EmbezzlerIndex n, const TargetState& phi)
    : n_(n.value()),
      log_c_(std::log(harmonic_number(n.value()))),
      alphas_(phi.alphas().coeffs().begin(), phi.alphas().coeffs().end()) {
  const double mu1 = embezzler_coefficient(1, log_c_);
  for (std::uint32_t i = 0; i < alphas_.size(); ++i)
    heap_.push(Head{alphas_[i] * mu1, i, 1});
}

double OmegaStream::next() {
  if (heap_.empty())
    fail(ErrorCode::InvalidArgument, "OmegaStream: exhausted");
  const Head top = heap_.top();
  heap_.pop();
  if (top.j < n_) {
    const std::uint64_t j = top.j + 1;
    heap_.push(Head{alphas_[top.stream] * embezzler_coefficient(j, log_c_), top.stream, j});
  }
  return top.value;
}

std::vector<double> omega_top_k(EmbezzlerIndex n, const TargetState& phi, std::uint64_t k) {
  const std::uint64_t m = phi.m();
  if (n.value() > std::numeric_limits<std::uint64_t>::max() / m || k > n.value() * m) {
    std::ostringstream os;
    os << "omega_top_k: k=" << k << " exceeds n*m for n=" << n.value() << ", m=" << m;
    fail(ErrorCode::InvalidArgument, os.str());
  }
  if (k > kMaxProductEntries) {
    std::ostringstream os;
    os << "omega_top_k: k=" << k << " exceeds the limit of " << kMaxProductEntries;
    fail(ErrorCode::SizeLimit, os.str());
  }
  OmegaStream stream(n, phi);
  std::vector<double> out;
  out.reserve(k);
  for (std::uint64_t i = 0; i < k; ++i)
    out.push_back(stream.next());
  return out;
}

ProtocolSums protocol_sums(EmbezzlerIndex n, const TargetState& phi) {
  if (phi.m() == 1)
    return ProtocolSums{1.0, 1.0, 1.0};
  if (n.value() > kMaxExactRank) {
    std::ostringstream os;
    os << "exact fidelity refused for n=" << n.value() << " (limit " << kMaxExactRank
       << " merge steps); only closed-form bounds are available";
    fail(ErrorCode::SizeLimit, os.str());
  }
  OmegaStream stream(n, phi);
  const double log_c = std::log(harmonic_number(n.value()));
  CompensatedSum fid, omega_sq, mu_sq;
  for (std::uint64_t j = 1; j <= n.value(); ++j) {
    const double mu = embezzler_coefficient(j, log_c);
    const double omega = stream.next();
    fid += mu * omega;
    omega_sq += omega * omega;
    mu_sq += mu * mu;
  }
  return ProtocolSums{fid.value(), omega_sq.value(), mu_sq.value()};
}

double protocol_fidelity(EmbezzlerIndex n, const TargetState& phi) {
  return protocol_sums(n, phi).fidelity;
}

double sum_omega_sq(EmbezzlerIndex n, const TargetState& phi) {
  return protocol_sums(n, phi).sum_omega_sq;
}

double protocol_delta(EmbezzlerIndex n, const TargetState& phi) {
  if (phi.m() == 1)
    return 0.0;
  const ProtocolSums s = protocol_sums(n, phi);
  return (s.sum_mu_sq - s.sum_omega_sq) + (1.0 - s.sum_omega_sq);
}

double fidelity_lower_bound(std::uint64_t n, std::uint64_t m) {
  require_bound_defined(n, m, "fidelity_lower_bound");
  if (m == 1)
    return 1.0;
  return std::max(0.0, 1.0 - std::log2(static_cast<double>(m)) / std::log2(static_cast<double>(n)));
}

double delta_upper_bound(std::uint64_t n, std::uint64_t m) {
  require_bound_defined(n, m, "delta_upper_bound");
  if (m == 1)
    return 0.0;
  return 2.0 * std::log2(static_cast<double>(m)) / std::log2(static_cast<double>(n));
}

MinRank min_rank_for(double epsilon, std::uint64_t m) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    std::ostringstream os;
    os << "min_rank_for: epsilon must lie in (0, 1), got " << epsilon;
    fail(ErrorCode::InvalidArgument, os.str());
  }
  if (m == 0)
    fail(ErrorCode::InvalidArgument, "min_rank_for: m must be at least 1");
  if (m == 1)
    return MinRank{1, 0};

  const long double exponent = 1.0L / static_cast<long double>(epsilon);
  const long double log2_power = exponent * std::log2(static_cast<long double>(m));
  MinRank out;
  long double pairs = std::ceil(log2_power);
  if (std::fabs(log2_power - std::round(log2_power)) <= kPowerSnap * log2_power)
    pairs = std::round(log2_power);
  out.qubit_pairs = static_cast<std::uint64_t>(pairs);
  if (log2_power >= 63.0L)
    return out;

  long double power = std::pow(static_cast<long double>(m), exponent);
  const long double nearest = std::round(power);
  if (std::fabs(power - nearest) <= kPowerSnap * power)
    power = nearest;
  const auto n = static_cast<std::uint64_t>(std::floor(power)) + 1;
  if (n == 0 || n > (std::uint64_t{1} << 63))
    return out;
  out.n = n;
  return out;
}

double eta(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    std::ostringstream os;
    os << "eta: delta must lie in [0, 1], got " << delta;
    fail(ErrorCode::InvalidArgument, os.str());
  }
  if (delta == 0.0)
    return 0.0;
  return -delta * std::log2(delta);
}

FannesFloor fannes_min_delta(double target_entropy_bits, std::uint64_t m, std::uint64_t n) {
  if (m == 0 || n == 0)
    fail(ErrorCode::InvalidArgument, "fannes_min_delta: m and n must be at least 1");
  const double log_dim = std::log2(static_cast<double>(m)) + std::log2(static_cast<double>(n));
  if (!(log_dim > 0.0))
    fail(ErrorCode::UndefinedBound, "fannes_min_delta: needs n >= 2 or m >= 2");
  const double s = target_entropy_bits;
  if (!(s >= 0.0) || s > std::log2(static_cast<double>(m)) + kConstructionTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "fannes_min_delta: entropy " << s << " bits is inconsistent with rank m=" << m;
    fail(ErrorCode::InvalidArgument, os.str());
  }
  if (s == 0.0)
    return FannesFloor{0.0, false};
  if (fannes_lhs(kInvE, log_dim) < s)
    return FannesFloor{kInvE, true};

  // Left side is strictly increasing on (0, 1/e]: derivative log_dim - log2(e delta) > 0.
  double lo = kFannesLowerBracket;
  double hi = kInvE;
  for (int it = 0; it < kFannesMaxIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    if (fannes_lhs(mid, log_dim) < s)
      lo = mid;
    else
      hi = mid;
  }
  return FannesFloor{0.5 * (lo + hi), false};
}

BoundReport bound_report(EmbezzlerIndex n, const TargetState& phi) {
  if (n.value() < 2)
    fail(ErrorCode::UndefinedBound, "bounds undefined for n<2");
  BoundReport r;
  r.n = n.value();
  r.m = phi.m();
  r.eq4_bound = fidelity_lower_bound(r.n, r.m);
  r.eq6_bound = delta_upper_bound(r.n, r.m);
  r.target_entropy_bits = von_neumann_entropy(phi.alphas());
  const FannesFloor floor = fannes_min_delta(r.target_entropy_bits, r.m, r.n);
  r.fannes_floor = floor.delta;
  r.fannes_saturated = floor.saturated;

  if (r.m == 1 || r.n <= kMaxExactRank) {
    const ProtocolSums s = protocol_sums(n, phi);
    r.fidelity = s.fidelity;
    r.sum_omega_sq = s.sum_omega_sq;
    r.delta = r.m == 1 ? 0.0 : (s.sum_mu_sq - s.sum_omega_sq) + (1.0 - s.sum_omega_sq);
    r.epsilon_implied = 1.0 - r.fidelity;
  } else {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.exact = false;
    r.fidelity = r.sum_omega_sq = r.delta = r.epsilon_implied = nan;
  }
  return r;
}

std::vector<std::string> check_report(const BoundReport& r, double tolerance) {
  std::vector<std::string> failed;
  const bool have_stream = !std::isnan(r.fidelity);
  if (have_stream) {
    if (r.fidelity < r.sum_omega_sq - tolerance)
      failed.emplace_back("fidelity>=sum_omega_sq");
    if (r.sum_omega_sq < r.eq4_bound - tolerance)
      failed.emplace_back("sum_omega_sq>=eq4_bound");
    if (r.delta > r.eq6_bound + tolerance)
      failed.emplace_back("delta<=eq6_bound");
    if (r.delta < kInvE && r.fannes_floor > r.delta + tolerance)
      failed.emplace_back("fannes_floor<=delta");
  }
  return failed;
}

} // namespace embezzle
