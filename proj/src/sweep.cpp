#include "embezzle/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "embezzle/errors.hpp"
#include "format.hpp"

namespace embezzle {

namespace {

using detail::format_json_real;
using detail::format_real;

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos)
      break;
    start = pos + 1;
  }
  return out;
}

bool parse_field(std::string_view text, double& out) {
  if (text == "nan") {
    out = std::numeric_limits<double>::quiet_NaN();
    return true;
  }
  // strtod accepts the %.17g spellings; from_chars for double is not in GCC 11.
  std::string tmp(text);
  char* end = nullptr;
  out = std::strtod(tmp.c_str(), &end);
  return !tmp.empty() && end == tmp.c_str() + tmp.size();
}

bool parse_field(std::string_view text, std::uint64_t& out) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

} // namespace

std::vector<std::uint64_t> geometric_n_values(std::uint64_t start, std::uint64_t factor,
                                              std::uint64_t count) {
  if (factor < 2)
    fail(ErrorCode::InvalidArgument, "sweep: n factor must be at least 2");
  if (count == 0 || count > kMaxSweepRows)
    fail(ErrorCode::InvalidArgument, "sweep: n count must lie in [1, 10000]");
  std::vector<std::uint64_t> out;
  out.reserve(count);
  std::uint64_t n = start;
  for (std::uint64_t i = 0; i < count; ++i) {
    out.push_back(n);
    if (i + 1 < count) {
      if (n > std::numeric_limits<std::uint64_t>::max() / factor)
        fail(ErrorCode::InvalidArgument, "sweep: geometric range overflows 64-bit n");
      n *= factor;
    }
  }
  return out;
}

std::vector<std::uint64_t> normalize_n_values(std::vector<std::uint64_t> n_values) {
  if (n_values.empty())
    fail(ErrorCode::InvalidArgument, "sweep: no n values");
  std::sort(n_values.begin(), n_values.end());
  n_values.erase(std::unique(n_values.begin(), n_values.end()), n_values.end());
  if (n_values.front() < 2)
    fail(ErrorCode::UndefinedBound, "sweep: bounds undefined for n<2");
  if (n_values.size() > kMaxSweepRows)
    fail(ErrorCode::InvalidArgument, "sweep: more than 10000 n values");
  return n_values;
}

std::vector<BoundReport> run_sweep(const TargetState& phi, std::vector<std::uint64_t> n_values,
                                   unsigned threads) {
  n_values = normalize_n_values(std::move(n_values));
  const std::size_t count = n_values.size();
  std::vector<BoundReport> rows(count);
  std::vector<std::exception_ptr> errors(count);

  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));

  std::atomic<std::size_t> cursor{0};
  auto work = [&] {
    for (std::size_t i; (i = cursor.fetch_add(1)) < count;) {
      try {
        rows[i] = bound_report(EmbezzlerIndex(n_values[i]), phi);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t)
      pool.emplace_back(work);
    work();
  }
  for (const auto& e : errors)
    if (e)
      std::rethrow_exception(e);
  return rows;
}

std::string render_csv(const std::vector<BoundReport>& rows) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.n) + ',' + std::to_string(r.m) + ',' + format_real(r.fidelity) + ',' +
           format_real(r.eq4_bound) + ',' + format_real(r.sum_omega_sq) + ',' +
           format_real(r.delta) + ',' + format_real(r.eq6_bound) + ',' +
           format_real(r.fannes_floor) + ',' + format_real(r.target_entropy_bits) + '\n';
  }
  return out;
}

std::string render_jsonl(const std::vector<BoundReport>& rows) {
  std::string out;
  for (const auto& r : rows) {
    out += "{\"n\":" + std::to_string(r.n) + ",\"m\":" + std::to_string(r.m) +
           ",\"fidelity\":" + format_json_real(r.fidelity) +
           ",\"eq4_bound\":" + format_json_real(r.eq4_bound) +
           ",\"sum_omega_sq\":" + format_json_real(r.sum_omega_sq) +
           ",\"delta\":" + format_json_real(r.delta) +
           ",\"eq6_bound\":" + format_json_real(r.eq6_bound) +
           ",\"fannes_floor\":" + format_json_real(r.fannes_floor) +
           ",\"entropy_bits\":" + format_json_real(r.target_entropy_bits) + "}\n";
  }
  return out;
}

std::string render_report_json(const BoundReport& r) {
  auto flag = [](bool b) { return b ? "true" : "false"; };
  std::string out = "{\"n\":" + std::to_string(r.n) + ",\"m\":" + std::to_string(r.m);
  out += std::string(",\"exact\":") + flag(r.exact);
  out += ",\"fidelity\":" + format_json_real(r.fidelity);
  out += ",\"eq4_bound\":" + format_json_real(r.eq4_bound);
  out += ",\"sum_omega_sq\":" + format_json_real(r.sum_omega_sq);
  out += ",\"delta\":" + format_json_real(r.delta);
  out += ",\"eq6_bound\":" + format_json_real(r.eq6_bound);
  out += ",\"fannes_floor\":" + format_json_real(r.fannes_floor);
  out += std::string(",\"fannes_saturated\":") + flag(r.fannes_saturated);
  out += ",\"target_entropy_bits\":" + format_json_real(r.target_entropy_bits);
  out += ",\"epsilon_implied\":" + format_json_real(r.epsilon_implied);
  out += "}\n";
  return out;
}

void write_sweep(const TargetState& phi, const std::vector<std::uint64_t>& n_values,
                 SweepFormat format, const std::filesystem::path& out, unsigned threads) {
  std::filesystem::path tmp = out;
  tmp += ".partial";
  try {
    const auto rows = run_sweep(phi, n_values, threads);
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      if (!f)
        fail(ErrorCode::Io, "cannot write " + tmp.string());
      f << (format == SweepFormat::Csv ? render_csv(rows) : render_jsonl(rows));
      f.close();
      if (!f)
        fail(ErrorCode::Io, "write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, out);
  } catch (const std::filesystem::filesystem_error& e) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    fail(ErrorCode::Io, e.what());
  } catch (...) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw;
  }
}

TableCheck validate_sweep_csv(std::string_view csv) {
  TableCheck check;
  auto lines = split(csv, '\n');
  if (!lines.empty() && lines.back().empty())
    lines.pop_back();
  if (lines.empty() || lines.front() != kSweepCsvHeader) {
    check.failures.emplace_back("line 1: header");
    return check;
  }
  std::uint64_t previous_n = 0;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const std::string where = "line " + std::to_string(k + 1) + ": ";
    const auto fields = split(lines[k], ',');
    BoundReport r;
    bool ok = fields.size() == 9 && parse_field(fields[0], r.n) && parse_field(fields[1], r.m) &&
              parse_field(fields[2], r.fidelity) && parse_field(fields[3], r.eq4_bound) &&
              parse_field(fields[4], r.sum_omega_sq) && parse_field(fields[5], r.delta) &&
              parse_field(fields[6], r.eq6_bound) && parse_field(fields[7], r.fannes_floor) &&
              parse_field(fields[8], r.target_entropy_bits);
    if (!ok) {
      check.failures.push_back(where + "malformed row");
      continue;
    }
    ++check.rows;
    if (r.n <= previous_n)
      check.failures.push_back(where + "ascending-n");
    previous_n = r.n;
    for (const auto& name : check_report(r))
      check.failures.push_back(where + name);
  }
  return check;
}

} // namespace embezzle
