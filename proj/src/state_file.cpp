#include "embezzle/state_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "embezzle/errors.hpp"
#include "embezzle/summation.hpp"
#include "format.hpp"

namespace embezzle {

namespace {

using nlohmann::json;

// Deviations below this are rounding in the file, not worth a warning.
constexpr double kWarnThreshold = 1e-12;

[[noreturn]] void schema_error(const std::string& origin, const std::string& pointer,
                               const std::string& what) {
  fail(ErrorCode::Parse, origin + ": at " + (pointer.empty() ? "/" : pointer) + ": " + what);
}

const json& member(const json& obj, const char* key, const std::string& origin) {
  auto it = obj.find(key);
  if (it == obj.end())
    schema_error(origin, "", std::string("missing key \"") + key + "\"");
  return *it;
}

double number_at(const json& v, const std::string& origin, const std::string& pointer) {
  if (!v.is_number())
    schema_error(origin, pointer, "expected a number, got " + std::string(v.type_name()));
  return v.get<double>();
}

std::vector<double> real_array(const json& obj, const char* key, const std::string& origin) {
  const json& arr = member(obj, key, origin);
  const std::string base = std::string("/") + key;
  if (!arr.is_array())
    schema_error(origin, base, "expected an array");
  if (arr.empty())
    schema_error(origin, base, "empty state");
  std::vector<double> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.push_back(number_at(arr[i], origin, base + "/" + std::to_string(i)));
  return out;
}

std::size_t dimension(const json& obj, const char* key, const std::string& origin) {
  const json& v = member(obj, key, origin);
  if (!v.is_number_integer() || v.get<long long>() <= 0)
    schema_error(origin, std::string("/") + key, "expected a positive integer");
  return v.get<std::size_t>();
}

void check_deviation(double deviation, const std::string& origin) {
  if (!(std::fabs(deviation) <= kFileTolerance)) {
    std::ostringstream os;
    os.precision(17);
    os << origin << ": normalization off by " << deviation << " (tolerance " << kFileTolerance
       << ")";
    fail(ErrorCode::Normalization, os.str());
  }
}

ParsedState finish(SchmidtVector s, double deviation) {
  ProbabilityVector p = s.spectrum();
  return ParsedState{std::move(s), std::move(p), std::fabs(deviation) > kWarnThreshold,
                     deviation};
}

} // namespace

ParsedState parse_state_json(std::string_view text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::ostringstream os;
    os << origin << ": malformed JSON at byte " << e.byte << ": " << e.what();
    fail(ErrorCode::Parse, os.str());
  }
  if (!doc.is_object())
    schema_error(origin, "", "expected a JSON object");
  const json& kind_v = member(doc, "kind", origin);
  if (!kind_v.is_string())
    schema_error(origin, "/kind", "expected a string");
  const std::string kind = kind_v.get<std::string>();

  try {
    if (kind == "schmidt") {
      std::vector<double> coeffs = real_array(doc, "coeffs", origin);
      CompensatedSum sq;
      for (double c : coeffs)
        sq += c * c;
      const double deviation = sq.value() - 1.0;
      check_deviation(deviation, origin);
      return finish(SchmidtVector(std::move(coeffs), kFileTolerance), deviation);
    }

    if (kind == "probabilities") {
      std::vector<double> probs = real_array(doc, "probs", origin);
      CompensatedSum total;
      for (double p : probs)
        total += p;
      const double deviation = total.value() - 1.0;
      check_deviation(deviation, origin);
      ProbabilityVector spectrum(std::move(probs), kFileTolerance);
      std::vector<double> coeffs(spectrum.size());
      for (std::size_t i = 0; i < spectrum.size(); ++i)
        coeffs[i] = std::sqrt(spectrum[i]);
      return ParsedState{SchmidtVector(std::move(coeffs)), std::move(spectrum),
                         std::fabs(deviation) > kWarnThreshold, deviation};
    }

    if (kind == "amplitudes") {
      const std::size_t rows = dimension(doc, "rows", origin);
      const std::size_t cols = dimension(doc, "cols", origin);
      const json& arr = member(doc, "entries", origin);
      if (!arr.is_array())
        schema_error(origin, "/entries", "expected an array");
      if (arr.size() != rows * cols) {
        std::ostringstream os;
        os << "expected rows*cols = " << rows * cols << " entries, got " << arr.size();
        schema_error(origin, "/entries", os.str());
      }
      std::vector<std::complex<double>> entries;
      entries.reserve(arr.size());
      CompensatedSum sq;
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string ptr = "/entries/" + std::to_string(i);
        const json& e = arr[i];
        if (!e.is_array() || e.size() != 2)
          schema_error(origin, ptr, "expected a [real, imaginary] pair");
        const std::complex<double> z(number_at(e[0], origin, ptr + "/0"),
                                     number_at(e[1], origin, ptr + "/1"));
        sq += std::norm(z);
        entries.push_back(z);
      }
      const double deviation = sq.value() - 1.0;
      check_deviation(deviation, origin);
      AmplitudeMatrix a(rows, cols, std::move(entries), kFileTolerance);
      return finish(schmidt_decompose(a), deviation);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument)
      fail(ErrorCode::Parse, origin + ": " + e.what());
    throw;
  }

  schema_error(origin, "/kind",
               "unknown kind \"" + kind + "\" (expected schmidt, amplitudes or probabilities)");
}

ParsedState parse_state_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    fail(ErrorCode::Io, "cannot open state file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_json(buf.str(), path.string());
}

TargetState to_target(const ParsedState& parsed) { return TargetState(parsed.state); }

std::string render_state_json(const SchmidtVector& s) {
  std::string out = R"({"kind":"schmidt","coeffs":[)";
  for (std::size_t i = 0; i < s.rank(); ++i) {
    if (i)
      out += ',';
    out += detail::format_real(s[i]);
  }
  out += "]}\n";
  return out;
}

void write_state_file(const std::filesystem::path& path, const SchmidtVector& s) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    fail(ErrorCode::Io, "cannot write state file " + path.string());
  out << render_state_json(s);
  if (!out)
    fail(ErrorCode::Io, "write failed for " + path.string());
}

} // namespace embezzle
