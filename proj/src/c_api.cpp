#include "embezzle/embezzle.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "embezzle/embezzlement.hpp"
#include "embezzle/errors.hpp"
#include "embezzle/schmidt.hpp"
#include "embezzle/selftest.hpp"
#include "embezzle/state_file.hpp"
#include "embezzle/sweep.hpp"

struct emb_state {
  embezzle::SchmidtVector state;
  embezzle::ProbabilityVector spectrum;
};

struct emb_selftest {
  embezzle::SelftestSummary summary;
};

namespace {

using namespace embezzle;

thread_local std::string g_last_error;

template <class F>
emb_status guarded(F&& body) noexcept {
  g_last_error.clear();
  try {
    body();
    return EMB_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<emb_status>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return EMB_ERR_SIZE_LIMIT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return EMB_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return EMB_ERR_INTERNAL;
  }
}

template <class... Ptrs>
void require(const char* what, const Ptrs*... ptrs) {
  if (((ptrs == nullptr) || ...))
    throw Error(static_cast<ErrorCode>(EMB_ERR_NULL_POINTER),
                std::string(what) + ": null pointer argument");
}

emb_state* make_state(SchmidtVector s) {
  ProbabilityVector p = s.spectrum();
  return new emb_state{std::move(s), std::move(p)};
}

void copy_out(std::span<const double> values, double* out, size_t cap, size_t* len) {
  if (len)
    *len = values.size();
  if (out)
    std::memcpy(out, values.data(), std::min(cap, values.size()) * sizeof(double));
}

void copy_string(const std::string& s, char* out, size_t cap) {
  if (!out || cap == 0)
    return;
  const size_t n = std::min(cap - 1, s.size());
  std::memcpy(out, s.data(), n);
  out[n] = '\0';
}

emb_report to_c(const BoundReport& r) {
  return emb_report{r.n,        r.m,           r.exact ? 1 : 0, r.fidelity,
                    r.eq4_bound, r.sum_omega_sq, r.delta,         r.eq6_bound,
                    r.fannes_floor, r.fannes_saturated ? 1 : 0, r.target_entropy_bits,
                    r.epsilon_implied};
}

BoundReport from_c(const emb_report& c) {
  BoundReport r;
  r.n = c.n;
  r.m = c.m;
  r.exact = c.exact != 0;
  r.fidelity = c.fidelity;
  r.eq4_bound = c.eq4_bound;
  r.sum_omega_sq = c.sum_omega_sq;
  r.delta = c.delta;
  r.eq6_bound = c.eq6_bound;
  r.fannes_floor = c.fannes_floor;
  r.fannes_saturated = c.fannes_saturated != 0;
  r.target_entropy_bits = c.target_entropy_bits;
  r.epsilon_implied = c.epsilon_implied;
  return r;
}

TargetState target_of(const emb_state* s) { return TargetState(s->state); }

} // namespace

extern "C" {

const char* emb_version(void) { return "1.0.0"; }

const char* emb_last_error(void) { return g_last_error.c_str(); }

const char* emb_status_name(emb_status status) {
  switch (status) {
  case EMB_OK: return "ok";
  case EMB_ERR_INVALID_ARGUMENT: return "invalid-argument";
  case EMB_ERR_NORMALIZATION: return "normalization";
  case EMB_ERR_SIZE_LIMIT: return "size-limit";
  case EMB_ERR_UNDEFINED_BOUND: return "undefined-bound";
  case EMB_ERR_PARSE: return "parse";
  case EMB_ERR_IO: return "io";
  case EMB_ERR_INVARIANT: return "invariant";
  case EMB_ERR_NULL_POINTER: return "null-pointer";
  case EMB_ERR_BUFFER_TOO_SMALL: return "buffer-too-small";
  case EMB_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

emb_status emb_state_from_coeffs(const double* coeffs, size_t len, emb_state** out) {
  return guarded([&] {
    require("emb_state_from_coeffs", coeffs, out);
    *out = make_state(SchmidtVector(std::vector<double>(coeffs, coeffs + len)));
  });
}

emb_status emb_state_from_probabilities(const double* probs, size_t len, emb_state** out) {
  return guarded([&] {
    require("emb_state_from_probabilities", probs, out);
    ProbabilityVector p(std::vector<double>(probs, probs + len));
    std::vector<double> c(p.size());
    for (size_t i = 0; i < p.size(); ++i)
      c[i] = std::sqrt(p[i]);
    *out = new emb_state{SchmidtVector(std::move(c)), std::move(p)};
  });
}

emb_status emb_state_from_amplitudes(size_t rows, size_t cols, const double* entries,
                                     emb_state** out) {
  return guarded([&] {
    require("emb_state_from_amplitudes", entries, out);
    std::vector<std::complex<double>> z(rows * cols);
    for (size_t i = 0; i < z.size(); ++i)
      z[i] = {entries[2 * i], entries[2 * i + 1]};
    *out = make_state(schmidt_decompose(AmplitudeMatrix(rows, cols, std::move(z))));
  });
}

emb_status emb_state_load(const char* path, emb_state** out, int* renormalized) {
  return guarded([&] {
    require("emb_state_load", path, out);
    ParsedState parsed = parse_state_file(path);
    if (renormalized)
      *renormalized = parsed.renormalized ? 1 : 0;
    *out = new emb_state{std::move(parsed.state), std::move(parsed.spectrum)};
  });
}

emb_status emb_state_save(const emb_state* state, const char* path) {
  return guarded([&] {
    require("emb_state_save", state, path);
    write_state_file(path, state->state);
  });
}

emb_status emb_maximally_entangled(uint64_t m, emb_state** out) {
  return guarded([&] {
    require("emb_maximally_entangled", out);
    *out = make_state(maximally_entangled(m));
  });
}

emb_status emb_build_embezzler(uint64_t n, emb_state** out) {
  return guarded([&] {
    require("emb_build_embezzler", out);
    *out = make_state(build_embezzler(EmbezzlerIndex(n)));
  });
}

emb_status emb_tensor(const emb_state* a, const emb_state* b, emb_state** out) {
  return guarded([&] {
    require("emb_tensor", a, b, out);
    *out = new emb_state{tensor_spectrum_full(a->state, b->state),
                         tensor_spectrum_full(a->spectrum, b->spectrum)};
  });
}

void emb_state_free(emb_state* state) { delete state; }

size_t emb_state_rank(const emb_state* state) { return state ? state->state.rank() : 0; }

emb_status emb_state_coeffs(const emb_state* state, double* out, size_t cap, size_t* len) {
  return guarded([&] {
    require("emb_state_coeffs", state);
    copy_out(state->state.coeffs(), out, cap, len);
  });
}

emb_status emb_state_spectrum(const emb_state* state, double* out, size_t cap, size_t* len) {
  return guarded([&] {
    require("emb_state_spectrum", state);
    copy_out(state->spectrum.probs(), out, cap, len);
  });
}

emb_status emb_overlap_fidelity(const emb_state* a, const emb_state* b, double* out) {
  return guarded([&] {
    require("emb_overlap_fidelity", a, b, out);
    *out = overlap_fidelity(a->state, b->state);
  });
}

emb_status emb_entropy_bits(const emb_state* state, double* out) {
  return guarded([&] {
    require("emb_entropy_bits", state, out);
    *out = von_neumann_entropy(state->spectrum);
  });
}

emb_status emb_trace_distance(const emb_state* p, const emb_state* q, double* out) {
  return guarded([&] {
    require("emb_trace_distance", p, q, out);
    *out = reduced_trace_distance(p->spectrum, q->spectrum);
  });
}

emb_status emb_majorizes(const emb_state* x, const emb_state* y, int* out) {
  return guarded([&] {
    require("emb_majorizes", x, y, out);
    *out = majorizes(x->spectrum, y->spectrum) ? 1 : 0;
  });
}

emb_status emb_trump(const emb_state* x, const emb_state* y, const emb_state* catalyst,
                     emb_trump_result* out) {
  return guarded([&] {
    require("emb_trump", x, y, catalyst, out);
    const auto plain = majorization_violation(y->spectrum.probs(), x->spectrum.probs());
    const ProbabilityVector yc = tensor_spectrum_full(y->spectrum, catalyst->spectrum);
    const ProbabilityVector xc = tensor_spectrum_full(x->spectrum, catalyst->spectrum);
    const auto catalysed = majorization_violation(yc.probs(), xc.probs());
    out->majorized = plain ? 0 : 1;
    out->majorization_witness = plain.value_or(0);
    out->trumped = catalysed ? 0 : 1;
    out->trumping_witness = catalysed.value_or(0);
  });
}

emb_status emb_harmonic_number(uint64_t n, double* out) {
  return guarded([&] {
    require("emb_harmonic_number", out);
    *out = harmonic_number(n);
  });
}

emb_status emb_omega_top_k(uint64_t n, const emb_state* target, uint64_t k, double* out) {
  return guarded([&] {
    require("emb_omega_top_k", target, out);
    const auto omega = omega_top_k(EmbezzlerIndex(n), target_of(target), k);
    std::memcpy(out, omega.data(), omega.size() * sizeof(double));
  });
}

emb_status emb_protocol_fidelity(uint64_t n, const emb_state* target, double* out) {
  return guarded([&] {
    require("emb_protocol_fidelity", target, out);
    *out = protocol_fidelity(EmbezzlerIndex(n), target_of(target));
  });
}

emb_status emb_sum_omega_sq(uint64_t n, const emb_state* target, double* out) {
  return guarded([&] {
    require("emb_sum_omega_sq", target, out);
    *out = sum_omega_sq(EmbezzlerIndex(n), target_of(target));
  });
}

emb_status emb_protocol_delta(uint64_t n, const emb_state* target, double* out) {
  return guarded([&] {
    require("emb_protocol_delta", target, out);
    *out = protocol_delta(EmbezzlerIndex(n), target_of(target));
  });
}

emb_status emb_fidelity_lower_bound(uint64_t n, uint64_t m, double* out) {
  return guarded([&] {
    require("emb_fidelity_lower_bound", out);
    *out = fidelity_lower_bound(n, m);
  });
}

emb_status emb_delta_upper_bound(uint64_t n, uint64_t m, double* out) {
  return guarded([&] {
    require("emb_delta_upper_bound", out);
    *out = delta_upper_bound(n, m);
  });
}

emb_status emb_min_rank_for(double epsilon, uint64_t m, emb_min_rank* out) {
  return guarded([&] {
    require("emb_min_rank_for", out);
    const MinRank r = min_rank_for(epsilon, m);
    out->fits = r.n ? 1 : 0;
    out->n = r.n.value_or(0);
    out->qubit_pairs = r.qubit_pairs;
  });
}

emb_status emb_eta(double delta, double* out) {
  return guarded([&] {
    require("emb_eta", out);
    *out = eta(delta);
  });
}

emb_status emb_fannes_min_delta(double entropy_bits, uint64_t m, uint64_t n, double* out,
                                int* saturated) {
  return guarded([&] {
    require("emb_fannes_min_delta", out);
    const FannesFloor f = fannes_min_delta(entropy_bits, m, n);
    *out = f.delta;
    if (saturated)
      *saturated = f.saturated ? 1 : 0;
  });
}

emb_status emb_bound_report(uint64_t n, const emb_state* target, emb_report* out) {
  return guarded([&] {
    require("emb_bound_report", target, out);
    *out = to_c(bound_report(EmbezzlerIndex(n), target_of(target)));
  });
}

emb_status emb_report_check(const emb_report* report, char* names, size_t cap) {
  return guarded([&] {
    require("emb_report_check", report);
    const auto failed = check_report(from_c(*report));
    std::string joined;
    for (const auto& name : failed)
      joined += (joined.empty() ? "" : ",") + name;
    copy_string(joined, names, cap);
    if (!failed.empty())
      fail(ErrorCode::Invariant, "report invariant violated: " + joined);
  });
}

emb_status emb_report_json(const emb_report* report, char* out, size_t cap, size_t* len) {
  return guarded([&] {
    require("emb_report_json", report);
    const std::string json = render_report_json(from_c(*report));
    if (len)
      *len = json.size();
    if (!out || cap <= json.size())
      throw Error(static_cast<ErrorCode>(EMB_ERR_BUFFER_TOO_SMALL),
                  "emb_report_json: buffer needs " + std::to_string(json.size() + 1) + " bytes");
    copy_string(json, out, cap);
  });
}

emb_status emb_geometric_n_values(uint64_t start, uint64_t factor, uint64_t count,
                                  uint64_t* out) {
  return guarded([&] {
    require("emb_geometric_n_values", out);
    const auto values = geometric_n_values(start, factor, count);
    std::copy(values.begin(), values.end(), out);
  });
}

emb_status emb_sweep_write(const emb_state* target, const uint64_t* n_values, size_t count,
                           emb_format format, const char* path, unsigned threads) {
  return guarded([&] {
    require("emb_sweep_write", target, n_values, path);
    if (format != EMB_FORMAT_CSV && format != EMB_FORMAT_JSONL)
      fail(ErrorCode::InvalidArgument, "emb_sweep_write: unknown format");
    write_sweep(target_of(target), std::vector<std::uint64_t>(n_values, n_values + count),
                format == EMB_FORMAT_CSV ? SweepFormat::Csv : SweepFormat::JsonLines, path,
                threads);
  });
}

emb_status emb_sweep_validate_csv(const char* path, size_t* rows) {
  return guarded([&] {
    require("emb_sweep_validate_csv", path);
    std::ifstream in(path, std::ios::binary);
    if (!in)
      fail(ErrorCode::Io, std::string("cannot open ") + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const TableCheck check = validate_sweep_csv(buf.str());
    if (rows)
      *rows = check.rows;
    if (!check.ok())
      fail(ErrorCode::Invariant, check.failures.front());
  });
}

uint64_t emb_selftest_default_seed(void) { return kDefaultSelftestSeed; }

emb_status emb_selftest_run(uint64_t seed, double fault_omega_scale, emb_selftest** out) {
  return guarded([&] {
    require("emb_selftest_run", out);
    SelftestOptions options;
    options.seed = seed;
    options.fault_omega_scale = fault_omega_scale;
    *out = new emb_selftest{run_selftest(options)};
  });
}

size_t emb_selftest_count(const emb_selftest* st) { return st ? st->summary.results.size() : 0; }

emb_status emb_selftest_entry(const emb_selftest* st, size_t index, const char** name,
                              uint64_t* checks, uint64_t* failures, const char** first_failure) {
  return guarded([&] {
    require("emb_selftest_entry", st);
    if (index >= st->summary.results.size())
      fail(ErrorCode::InvalidArgument, "emb_selftest_entry: index out of range");
    const InvariantResult& r = st->summary.results[index];
    if (name)
      *name = r.name.c_str();
    if (checks)
      *checks = r.checks;
    if (failures)
      *failures = r.failures;
    if (first_failure)
      *first_failure = r.first_failure.c_str();
  });
}

int emb_selftest_passed(const emb_selftest* st) { return st && st->summary.passed() ? 1 : 0; }

void emb_selftest_free(emb_selftest* st) { delete st; }

} // extern "C"
