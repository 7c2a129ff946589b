#pragma once

#include <stdexcept>
#include <string>

namespace progss {

// One taxonomy for everything that can go wrong below the CLI. The C surface
// and the CLI map these onto their integer codes; everything not listed here
// is a programming error and stays an assert/exception.
enum class ErrorCode {
  Validation = 1,       // bad config, bad arguments, schema violations
  Io = 2,               // filesystem and parse-at-the-border failures
  InfeasibleOrdering = 3,
  NoContactFound = 4,
  DurationExceedsMax = 5,
  EmptyLibrary = 6,
  DimensionMismatch = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace progss
