#pragma once

#include <stdexcept>
#include <string>

namespace normlab {

// Base error; `code` is a stable machine-readable tag used by the CLI
// and asserted on in tests.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

struct InvalidTableError : Error {
  explicit InvalidTableError(const std::string& w) : Error("invalid-table", w) {}
};
struct SizeLimitError : Error {
  explicit SizeLimitError(const std::string& w) : Error("size-limit", w) {}
};
struct NonAbelianGroupError : Error {
  explicit NonAbelianGroupError(const std::string& w) : Error("non-abelian-group", w) {}
};
struct EmptySubsetError : Error {
  explicit EmptySubsetError(const std::string& w) : Error("empty-subset", w) {}
};
struct SpaceMismatchError : Error {
  explicit SpaceMismatchError(const std::string& w) : Error("space-mismatch", w) {}
};
struct DimensionMismatchError : Error {
  explicit DimensionMismatchError(const std::string& w) : Error("dimension-mismatch", w) {}
};
struct NotFreeActionError : Error {
  explicit NotFreeActionError(const std::string& w) : Error("not-free-action", w) {}
};
struct PatternViolationError : Error {
  explicit PatternViolationError(const std::string& w) : Error("pattern-violation", w) {}
};
struct UnsupportedPError : Error {
  explicit UnsupportedPError(const std::string& w) : Error("unsupported-p", w) {}
};
struct InvalidWeightsError : Error {
  explicit InvalidWeightsError(const std::string& w) : Error("invalid-weights", w) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error("parse-error", w) {}
};
struct ValidationError : Error {
  explicit ValidationError(const std::string& w) : Error("validation-error", w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error("io-error", w) {}
};
struct InfeasibleFreeActionError : Error {
  explicit InfeasibleFreeActionError(const std::string& w) : Error("infeasible-free-action", w) {}
};
struct UnknownCommandError : Error {
  explicit UnknownCommandError(const std::string& w) : Error("unknown-command", w) {}
};

}  // namespace normlab
