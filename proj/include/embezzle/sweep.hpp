#ifndef EMBEZZLE_SWEEP_HPP
#define EMBEZZLE_SWEEP_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "embezzle/embezzlement.hpp"

namespace embezzle {

enum class SweepFormat { Csv, JsonLines };

/// Version 1 of the sweep table. Columns are never reordered; a new layout
/// gets a new version and a new header.
inline constexpr int kSweepSchemaVersion = 1;
inline constexpr std::string_view kSweepCsvHeader =
    "n,m,fidelity,eq4_bound,sum_omega_sq,delta,eq6_bound,fannes_floor,entropy_bits";

inline constexpr std::size_t kMaxSweepRows = 10'000;

/// start, start*factor, ..., count values. factor >= 2.
std::vector<std::uint64_t> geometric_n_values(std::uint64_t start, std::uint64_t factor,
                                              std::uint64_t count);

/// Sorted, de-duplicated copy; rejects n < 2 and more than kMaxSweepRows values.
std::vector<std::uint64_t> normalize_n_values(std::vector<std::uint64_t> n_values);

/// One report per n in ascending order. Rows are computed on up to
/// `threads` workers (0 = hardware concurrency); the first failing row in
/// n order is rethrown.
std::vector<BoundReport> run_sweep(const TargetState& phi, std::vector<std::uint64_t> n_values,
                                   unsigned threads = 0);

std::string render_csv(const std::vector<BoundReport>& rows);
std::string render_jsonl(const std::vector<BoundReport>& rows);

/// Single JSON object with every report field, 17 significant digits.
std::string render_report_json(const BoundReport& r);

/// Computes and writes the table. Output goes to a sibling temporary first
/// and is renamed into place, so a failure leaves no partial file.
void write_sweep(const TargetState& phi, const std::vector<std::uint64_t>& n_values,
                 SweepFormat format, const std::filesystem::path& out, unsigned threads = 0);

struct TableCheck {
  std::size_t rows = 0;
  /// "line <k>: <invariant>" for each violation, including header and
  /// ordering problems.
  std::vector<std::string> failures;

  bool ok() const noexcept { return failures.empty(); }
};

/// Re-parses a CSV sweep table and re-checks every row on its own.
TableCheck validate_sweep_csv(std::string_view csv);

} // namespace embezzle

#endif
