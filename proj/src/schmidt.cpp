#include "embezzle/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "embezzle/errors.hpp"
#include "embezzle/summation.hpp"
#include "embezzle/svd.hpp"

namespace embezzle {

namespace {

// Singular values at or below this are numerical zeros of a unit-norm matrix.
constexpr double kDecompositionCutoff = 1e-13;

// Inputs whose norm is already this close to one are kept bit-for-bit.
constexpr double kRescaleThreshold = 1e-14;

std::vector<double> canonicalize(std::vector<double> v, const char* what) {
  if (v.empty())
    fail(ErrorCode::InvalidArgument, std::string(what) + ": empty vector");
  for (double x : v) {
    if (!std::isfinite(x) || x < 0.0) {
      std::ostringstream os;
      os << what << ": entries must be finite and non-negative, got " << x;
      fail(ErrorCode::InvalidArgument, os.str());
    }
  }
  std::erase(v, 0.0);
  if (v.empty())
    fail(ErrorCode::InvalidArgument, std::string(what) + ": all entries are zero");
  if (!std::is_sorted(v.begin(), v.end(), std::greater<>()))
    std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

// Returns the factor that brings `total` to one, or throws when it is
// further than `tolerance` away.
double normalization_factor(double total, double tolerance, const char* what) {
  const double deviation = total - 1.0;
  if (!(std::fabs(deviation) <= tolerance)) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": normalization off by " << deviation << " (total " << total
       << ", tolerance " << tolerance << ")";
    fail(ErrorCode::Normalization, os.str());
  }
  return std::fabs(deviation) > kRescaleThreshold ? 1.0 / total : 1.0;
}

void guard_product_size(std::size_t a, std::size_t b) {
  if (a != 0 && b > kMaxProductEntries / a) {
    std::ostringstream os;
    os << "product spectrum of " << a << " x " << b << " entries exceeds the limit of "
       << kMaxProductEntries;
    fail(ErrorCode::SizeLimit, os.str());
  }
}

template <class Mul>
std::vector<double> sorted_products(std::span<const double> a, std::span<const double> b,
                                    Mul mul) {
  guard_product_size(a.size(), b.size());
  std::vector<double> out;
  out.reserve(a.size() * b.size());
  for (double x : a)
    for (double y : b)
      out.push_back(mul(x, y));
  // Generated in lexicographic (i, j) order, so a stable sort fixes ties.
  std::stable_sort(out.begin(), out.end(), std::greater<>());
  return out;
}

} // namespace

SchmidtVector::SchmidtVector(std::vector<double> coeffs, double tolerance)
    : coeffs_(canonicalize(std::move(coeffs), "SchmidtVector")) {
  CompensatedSum sq;
  for (double c : coeffs_)
    sq += c * c;
  const double factor = normalization_factor(sq.value(), tolerance, "SchmidtVector");
  if (factor != 1.0) {
    const double scale = std::sqrt(factor);
    for (double& c : coeffs_)
      c *= scale;
  }
}

ProbabilityVector SchmidtVector::spectrum() const {
  std::vector<double> p(coeffs_.size());
  std::transform(coeffs_.begin(), coeffs_.end(), p.begin(), [](double c) { return c * c; });
  return ProbabilityVector(std::move(p));
}

ProbabilityVector::ProbabilityVector(std::vector<double> probs, double tolerance)
    : probs_(canonicalize(std::move(probs), "ProbabilityVector")) {
  CompensatedSum total;
  for (double p : probs_)
    total += p;
  const double factor = normalization_factor(total.value(), tolerance, "ProbabilityVector");
  if (factor != 1.0)
    for (double& p : probs_)
      p *= factor;
}

AmplitudeMatrix::AmplitudeMatrix(std::size_t rows, std::size_t cols,
                                 std::vector<std::complex<double>> entries, double tolerance)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0)
    fail(ErrorCode::InvalidArgument, "AmplitudeMatrix: dimension 0");
  if (entries_.size() != rows_ * cols_) {
    std::ostringstream os;
    os << "AmplitudeMatrix: expected " << rows_ * cols_ << " entries, got " << entries_.size();
    fail(ErrorCode::InvalidArgument, os.str());
  }
  CompensatedSum sq;
  for (const auto& e : entries_) {
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
      fail(ErrorCode::InvalidArgument, "AmplitudeMatrix: non-finite entry");
    sq += std::norm(e);
  }
  const double factor = normalization_factor(sq.value(), tolerance, "AmplitudeMatrix");
  if (factor != 1.0) {
    const double scale = std::sqrt(factor);
    for (auto& e : entries_)
      e *= scale;
  }
}

SchmidtVector schmidt_decompose(const AmplitudeMatrix& a) {
  std::vector<double> sv = singular_values(a.rows(), a.cols(), a.entries());
  std::erase_if(sv, [](double s) { return s <= kDecompositionCutoff; });
  return SchmidtVector(std::move(sv));
}

SchmidtVector maximally_entangled(std::size_t m) {
  if (m == 0)
    fail(ErrorCode::InvalidArgument, "maximally_entangled: rank must be at least 1");
  return SchmidtVector(std::vector<double>(m, 1.0 / std::sqrt(static_cast<double>(m))));
}

SchmidtVector tensor_spectrum_full(const SchmidtVector& a, const SchmidtVector& b) {
  return SchmidtVector(sorted_products(a.coeffs(), b.coeffs(), std::multiplies<>()));
}

ProbabilityVector tensor_spectrum_full(const ProbabilityVector& a, const ProbabilityVector& b) {
  return ProbabilityVector(sorted_products(a.probs(), b.probs(), std::multiplies<>()));
}

double overlap_fidelity(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = std::min(a.size(), b.size());
  CompensatedSum s;
  for (std::size_t j = 0; j < n; ++j)
    s += a[j] * b[j];
  return s.value();
}

double overlap_fidelity(const SchmidtVector& a, const SchmidtVector& b) {
  return std::min(1.0, overlap_fidelity(a.coeffs(), b.coeffs()));
}

double von_neumann_entropy(const ProbabilityVector& p) {
  CompensatedSum s;
  for (double x : p.probs())
    if (x > 0.0)
      s += -x * std::log2(x);
  return std::max(0.0, s.value());
}

double von_neumann_entropy(const SchmidtVector& s) { return von_neumann_entropy(s.spectrum()); }

double reduced_trace_distance(std::span<const double> p, std::span<const double> q) {
  const std::size_t n = std::max(p.size(), q.size());
  CompensatedSum s;
  for (std::size_t j = 0; j < n; ++j) {
    const double pj = j < p.size() ? p[j] : 0.0;
    const double qj = j < q.size() ? q[j] : 0.0;
    s += std::fabs(pj - qj);
  }
  return s.value();
}

double reduced_trace_distance(const ProbabilityVector& p, const ProbabilityVector& q) {
  return reduced_trace_distance(p.probs(), q.probs());
}

std::optional<std::size_t> majorization_violation(std::span<const double> x,
                                                  std::span<const double> y,
                                                  double tolerance) {
  const std::size_t n = std::max(x.size(), y.size());
  CompensatedSum sx, sy;
  for (std::size_t k = 0; k < n; ++k) {
    if (k < x.size())
      sx += x[k];
    if (k < y.size())
      sy += y[k];
    if (sx.value() < sy.value() - tolerance)
      return k + 1;
  }
  return std::nullopt;
}

bool majorizes(std::span<const double> x, std::span<const double> y) {
  return !majorization_violation(x, y).has_value();
}

bool majorizes(const ProbabilityVector& x, const ProbabilityVector& y) {
  return majorizes(x.probs(), y.probs());
}

bool is_trumped(const ProbabilityVector& x, const ProbabilityVector& y,
                const ProbabilityVector& c) {
  return majorizes(tensor_spectrum_full(y, c), tensor_spectrum_full(x, c));
}

} // namespace embezzle
