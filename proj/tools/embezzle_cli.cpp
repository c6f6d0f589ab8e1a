// Command-line front end. Talks to the library only through embezzle.h.
//
// Exit codes: 0 success, 1 invariant or bound violation, 2 input error.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "embezzle/embezzle.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;

struct StateDeleter {
  void operator()(emb_state* s) const { emb_state_free(s); }
};
using StatePtr = std::unique_ptr<emb_state, StateDeleter>;

struct SelftestDeleter {
  void operator()(emb_selftest* s) const { emb_selftest_free(s); }
};

struct Exit {
  int code;
};

int report_failure(emb_status status) {
  std::fprintf(stderr, "error (%s): %s\n", emb_status_name(status), emb_last_error());
  return status == EMB_ERR_INVARIANT ? kExitViolation : kExitInput;
}

// Throws the exit code on failure so commands read linearly.
void check(emb_status status) {
  if (status != EMB_OK)
    throw Exit{report_failure(status)};
}

StatePtr load_state(const std::string& path) {
  emb_state* raw = nullptr;
  int renormalized = 0;
  check(emb_state_load(path.c_str(), &raw, &renormalized));
  if (renormalized)
    std::fprintf(stderr, "warning: %s was not normalized; rescaled to unit norm\n", path.c_str());
  return StatePtr(raw);
}

std::string real(double x) {
  if (x != x)
    return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int cmd_report(std::uint64_t n, const std::string& target_path) {
  if (n < 2) {
    std::fprintf(stderr, "error (undefined-bound): bounds undefined for n<2\n");
    return kExitInput;
  }
  StatePtr target = load_state(target_path);
  emb_report report{};
  check(emb_bound_report(n, target.get(), &report));

  size_t len = 0;
  emb_report_json(&report, nullptr, 0, &len);
  std::string json(len + 1, '\0');
  check(emb_report_json(&report, json.data(), json.size(), &len));
  json.resize(len);
  std::printf("%s\n", json.c_str());

  char names[256] = {0};
  if (emb_report_check(&report, names, sizeof names) != EMB_OK) {
    std::fprintf(stderr, "invariant violated: %s\n", names);
    return kExitViolation;
  }
  return kExitOk;
}

struct SweepArgs {
  std::string target;
  std::vector<std::uint64_t> n;
  std::uint64_t n_start = 0;
  std::uint64_t n_factor = 0;
  std::uint64_t n_count = 0;
  std::string out;
  std::string format = "csv";
  unsigned threads = 0;
};

int cmd_sweep(const SweepArgs& args) {
  std::vector<std::uint64_t> n_values = args.n;
  if (n_values.empty()) {
    if (args.n_count == 0) {
      std::fprintf(stderr, "error: give either --n or --n-start/--n-factor/--n-count\n");
      return kExitInput;
    }
    n_values.resize(args.n_count);
    check(emb_geometric_n_values(args.n_start, args.n_factor, args.n_count, n_values.data()));
  }
  StatePtr target = load_state(args.target);
  const emb_format format = args.format == "csv" ? EMB_FORMAT_CSV : EMB_FORMAT_JSONL;
  check(emb_sweep_write(target.get(), n_values.data(), n_values.size(), format, args.out.c_str(),
                        args.threads));
  if (format == EMB_FORMAT_CSV) {
    size_t rows = 0;
    check(emb_sweep_validate_csv(args.out.c_str(), &rows));
    std::fprintf(stderr, "wrote %zu rows to %s\n", rows, args.out.c_str());
  }
  return kExitOk;
}

int cmd_trump(const std::string& x_path, const std::string& y_path, const std::string& c_path) {
  StatePtr x = load_state(x_path);
  StatePtr y = load_state(y_path);
  StatePtr c = load_state(c_path);
  emb_trump_result r{};
  check(emb_trump(x.get(), y.get(), c.get(), &r));
  std::printf("{\"trumped\":%s,\"majorized\":%s,\"majorization_witness\":%zu,"
              "\"trumping_witness\":%zu}\n",
              r.trumped ? "true" : "false", r.majorized ? "true" : "false",
              r.majorization_witness, r.trumping_witness);
  return kExitOk;
}

int cmd_selftest(std::uint64_t seed, double fault_scale) {
  emb_selftest* raw = nullptr;
  check(emb_selftest_run(seed, fault_scale, &raw));
  std::unique_ptr<emb_selftest, SelftestDeleter> st(raw);

  std::printf("selftest seed=%llu\n", static_cast<unsigned long long>(seed));
  std::string failed;
  for (size_t i = 0; i < emb_selftest_count(st.get()); ++i) {
    const char* name = nullptr;
    const char* first = nullptr;
    std::uint64_t checks = 0, failures = 0;
    check(emb_selftest_entry(st.get(), i, &name, &checks, &failures, &first));
    std::printf("%-32s checks=%-8llu failures=%llu%s%s\n", name,
                static_cast<unsigned long long>(checks), static_cast<unsigned long long>(failures),
                failures ? "  first: " : "", failures ? first : "");
    if (failures)
      failed += (failed.empty() ? "" : ",") + std::string(name);
  }
  if (!emb_selftest_passed(st.get())) {
    std::printf("FAIL: %s\n", failed.c_str());
    return kExitViolation;
  }
  std::printf("PASS\n");
  return kExitOk;
}

int cmd_min_rank(double epsilon, std::uint64_t m) {
  emb_min_rank r{};
  check(emb_min_rank_for(epsilon, m, &r));
  double bound = 1.0;
  std::string bound_text = "null";
  if (r.fits && r.n >= 2 && emb_fidelity_lower_bound(r.n, m, &bound) == EMB_OK)
    bound_text = real(bound);
  if (r.fits)
    std::printf("{\"epsilon\":%s,\"m\":%llu,\"n\":%llu,\"qubit_pairs\":%llu,"
                "\"fidelity_lower_bound\":%s}\n",
                real(epsilon).c_str(), static_cast<unsigned long long>(m),
                static_cast<unsigned long long>(r.n),
                static_cast<unsigned long long>(r.qubit_pairs), bound_text.c_str());
  else
    std::printf("{\"epsilon\":%s,\"m\":%llu,\"n\":null,\"qubit_pairs\":%llu,"
                "\"fidelity_lower_bound\":null}\n",
                real(epsilon).c_str(), static_cast<unsigned long long>(m),
                static_cast<unsigned long long>(r.qubit_pairs));
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Embezzling-state fidelity, bounds and trumping checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(emb_version()));

  std::uint64_t report_n = 0;
  std::string report_target;
  auto* report = app.add_subcommand("report", "Bound report for one (n, target) pair as JSON");
  report->add_option("--n", report_n, "Schmidt rank of the embezzling state")->required();
  report->add_option("--target", report_target, "State file of the target")->required();

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Bound reports over many n, as CSV or JSON lines");
  sweep->add_option("--target", sweep_args.target, "State file of the target")->required();
  auto* n_list = sweep->add_option("--n", sweep_args.n, "Explicit n values")->delimiter(',');
  auto* n_start = sweep->add_option("--n-start", sweep_args.n_start, "First n of a geometric range");
  auto* n_factor = sweep->add_option("--n-factor", sweep_args.n_factor, "Integer ratio of the range");
  auto* n_count = sweep->add_option("--n-count", sweep_args.n_count, "Number of n values");
  n_start->needs(n_factor, n_count)->excludes(n_list);
  n_factor->needs(n_start);
  n_count->needs(n_start);
  sweep->add_option("--out", sweep_args.out, "Output path")->required();
  sweep->add_option("--format", sweep_args.format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  sweep->add_option("--threads", sweep_args.threads, "Worker threads (0 = all cores)");

  std::string x_path, y_path, c_path;
  auto* trump = app.add_subcommand("trump", "Does y trump x with the given catalyst?");
  trump->add_option("--x", x_path, "Source state file")->required();
  trump->add_option("--y", y_path, "Target state file")->required();
  trump->add_option("--catalyst", c_path, "Catalyst state file")->required();

  std::uint64_t seed = emb_selftest_default_seed();
  double fault_scale = 1.0;
  auto* selftest = app.add_subcommand("selftest", "Run the invariant suite");
  selftest->add_option("--seed", seed, "Random seed");
  selftest->add_option("--fault-omega-scale", fault_scale)->group("");

  double epsilon = 0.0;
  std::uint64_t m = 0;
  auto* min_rank = app.add_subcommand("min-rank", "Smallest embezzler rank for fidelity 1 - epsilon");
  min_rank->add_option("--epsilon", epsilon, "Allowed infidelity, in (0, 1)")->required();
  min_rank->add_option("--m", m, "Schmidt rank of the target")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*report)
      return cmd_report(report_n, report_target);
    if (*sweep)
      return cmd_sweep(sweep_args);
    if (*trump)
      return cmd_trump(x_path, y_path, c_path);
    if (*selftest)
      return cmd_selftest(seed, fault_scale);
    if (*min_rank)
      return cmd_min_rank(epsilon, m);
  } catch (const Exit& e) {
    return e.code;
  }
  return kExitInput;
}
