#ifndef EMBEZZLE_STATE_FILE_HPP
#define EMBEZZLE_STATE_FILE_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "embezzle/embezzlement.hpp"
#include "embezzle/schmidt.hpp"

namespace embezzle {

/// Normalization slack accepted on files; within it the state is rescaled
/// and `renormalized` is set so callers can warn.
inline constexpr double kFileTolerance = 1e-4;

/// A state file in one of three shapes:
///   {"kind":"schmidt","coeffs":[...]}
///   {"kind":"amplitudes","rows":R,"cols":C,"entries":[[re,im],...]}  (row-major)
///   {"kind":"probabilities","probs":[...]}  (a reduced spectrum)
struct ParsedState {
  SchmidtVector state;
  /// Reduced spectrum; for "probabilities" files this is the input itself.
  ProbabilityVector spectrum;
  bool renormalized = false;
  /// Squared norm (or total probability) minus one, before rescaling.
  double norm_deviation = 0.0;
};

ParsedState parse_state_json(std::string_view text, const std::string& origin = "<string>");
ParsedState parse_state_file(const std::filesystem::path& path);

TargetState to_target(const ParsedState& parsed);

/// {"kind":"schmidt","coeffs":[...]} with 17 significant digits.
std::string render_state_json(const SchmidtVector& s);
void write_state_file(const std::filesystem::path& path, const SchmidtVector& s);

} // namespace embezzle

#endif
