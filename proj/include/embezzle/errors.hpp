#ifndef EMBEZZLE_ERRORS_HPP
#define EMBEZZLE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace embezzle {

// Mirrors emb_status in the C header; values must stay in sync.
enum class ErrorCode : int {
  InvalidArgument = 1,
  Normalization = 2,
  SizeLimit = 3,
  UndefinedBound = 4,
  Parse = 5,
  Io = 6,
  Invariant = 7,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

} // namespace embezzle

#endif
