#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "embezzle/errors.hpp"
#include "embezzle/sweep.hpp"

using namespace embezzle;
namespace fs = std::filesystem;

namespace {

TargetState bell() { return TargetState(maximally_entangled(2)); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "embezzle_sweep_test") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("n value lists") {
  CHECK(geometric_n_values(4, 4, 3) == std::vector<std::uint64_t>{4, 16, 64});
  CHECK_THROWS_AS(geometric_n_values(4, 1, 3), Error);
  CHECK_THROWS_AS(geometric_n_values(4, 2, 0), Error);
  CHECK_THROWS_AS(geometric_n_values(4, 2, kMaxSweepRows + 1), Error);
  CHECK_THROWS_AS(geometric_n_values(std::uint64_t{1} << 40, 1 << 20, 3), Error);

  CHECK(normalize_n_values({256, 4, 16, 4}) == std::vector<std::uint64_t>{4, 16, 256});
  try {
    normalize_n_values({1, 4});
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UndefinedBound);
  }
  CHECK_THROWS_AS(normalize_n_values(std::vector<std::uint64_t>(kMaxSweepRows + 1, 0)), Error);
}

TEST_CASE("sweep rows") {
  SUBCASE("Bell target, n in {4, 16, 256}") {
    const auto rows = run_sweep(bell(), {256, 4, 16});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].n == 4);
    CHECK(rows[2].n == 256);
    for (const auto& r : rows)
      CHECK(r.fidelity >= r.eq4_bound);
  }
  SUBCASE("Bell target, n = 2^k for k = 2..20") {
    const auto rows = run_sweep(bell(), geometric_n_values(4, 2, 19), 4);
    REQUIRE(rows.size() == 19);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double k = static_cast<double>(i + 2);
      CHECK(rows[i].fidelity >= 1.0 - 1.0 / k);
    }
  }
  SUBCASE("product target") {
    const auto rows = run_sweep(TargetState(SchmidtVector({1.0})), {2, 3, 1000, 1u << 30});
    for (const auto& r : rows)
      CHECK(r.fidelity == 1.0);
  }
}

TEST_CASE("CSV layout and validation") {
  const auto rows = run_sweep(bell(), {4, 16, 256});
  const std::string csv = render_csv(rows);
  CHECK(csv.rfind("n,m,fidelity,eq4_bound,sum_omega_sq,delta,eq6_bound,fannes_floor,entropy_bits\n", 0) == 0);
  CHECK(csv.find("\n4,2,0.83797531957505") != std::string::npos);

  const TableCheck ok = validate_sweep_csv(csv);
  CHECK(ok.ok());
  CHECK(ok.rows == 3);

  SUBCASE("a tampered row is caught") {
    std::string bad = csv;
    const auto start = bad.find("\n16,2,") + 6;
    bad.replace(start, bad.find(',', start) - start, "0.1");  // fidelity below sum_omega_sq
    const TableCheck check = validate_sweep_csv(bad);
    REQUIRE_FALSE(check.ok());
    CHECK(check.failures.front() == "line 3: fidelity>=sum_omega_sq");
  }
  SUBCASE("header and ordering") {
    CHECK_FALSE(validate_sweep_csv("n,m\n").ok());
    const std::string swapped = render_csv({rows[1], rows[0]});
    CHECK(validate_sweep_csv(swapped).failures.front() == "line 3: ascending-n");
  }
  SUBCASE("bound-only rows render as nan and still validate") {
    const auto big = run_sweep(bell(), {std::uint64_t{1} << 45});
    const std::string text = render_csv(big);
    CHECK(text.find(",nan,") != std::string::npos);
    CHECK(validate_sweep_csv(text).ok());
  }
}

TEST_CASE("JSON lines") {
  const auto rows = run_sweep(bell(), {4, 16});
  std::istringstream in(render_jsonl(rows));
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    const auto obj = nlohmann::json::parse(line);
    for (const char* key : {"n", "m", "fidelity", "eq4_bound", "sum_omega_sq", "delta", "eq6_bound",
                            "fannes_floor", "entropy_bits"})
      CHECK(obj.contains(key));
    CHECK(obj["fidelity"].get<double>() == rows[count].fidelity);
    ++count;
  }
  CHECK(count == 2);
}

TEST_CASE("report JSON carries every field") {
  const auto r = bound_report(EmbezzlerIndex(2), bell());
  const auto obj = nlohmann::json::parse(render_report_json(r));
  for (const char* key : {"n", "m", "fidelity", "eq4_bound", "sum_omega_sq", "delta", "eq6_bound",
                          "fannes_floor", "target_entropy_bits", "epsilon_implied"})
    CHECK(obj.contains(key));
  CHECK(obj["fidelity"].get<double>() == r.fidelity);
}

TEST_CASE("written tables") {
  TempDir tmp;
  const auto a = tmp.path / "a.csv";
  const auto b = tmp.path / "b.csv";
  const auto values = geometric_n_values(4, 2, 12);

  SUBCASE("deterministic regardless of thread count") {
    write_sweep(bell(), values, SweepFormat::Csv, a, 1);
    write_sweep(bell(), values, SweepFormat::Csv, b, 4);
    CHECK(slurp(a) == slurp(b));
    write_sweep(bell(), values, SweepFormat::Csv, b, 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(validate_sweep_csv(slurp(a)).ok());
  }
  SUBCASE("failure leaves no output behind") {
    CHECK_THROWS_AS(write_sweep(bell(), {1, 4}, SweepFormat::Csv, a), Error);
    CHECK_FALSE(fs::exists(a));
    CHECK_FALSE(fs::exists(tmp.path / "a.csv.partial"));
  }
  SUBCASE("unwritable destination") {
    try {
      write_sweep(bell(), {4}, SweepFormat::JsonLines, tmp.path / "missing" / "x.jsonl");
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Io);
    }
  }
}
