#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nlc {

struct SourceLoc {
  int line = 0;
  int col = 0;

  bool valid() const { return line > 0; }
};

enum class ErrorCode {
  Syntax,
  UnknownPrimitive,
  Undeclared,
  OutOfRange,
  Inout,
  Duplicate,
  Unsupported,
  Recursion,
  Unresolved,
  MultipleDrivers,
  CombinationalLoop,
  Arity,
  MissingPin,
  Schedule,
  Width,
  Vector,
  Io,
};

const char* to_string(ErrorCode code);

/// Error raised by every stage of the pipeline. `witness` carries the
/// instance names of a rejected feedback cycle.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, SourceLoc loc = {},
        std::vector<std::string> witness = {});

  ErrorCode code() const { return code_; }
  const SourceLoc& loc() const { return loc_; }
  const std::vector<std::string>& witness() const { return witness_; }

  /// `file:line:col: error: message`, omitting the position when unknown.
  std::string format(const std::string& file) const;

 private:
  ErrorCode code_;
  SourceLoc loc_;
  std::vector<std::string> witness_;
};

enum class Severity { Warning, Error };

struct Diagnostic {
  Severity severity = Severity::Warning;
  SourceLoc loc;
  std::string message;
};

/// Collects non-fatal diagnostics. Fatal problems are thrown as `Error`.
class Diagnostics {
 public:
  void warn(SourceLoc loc, std::string message);
  const std::vector<Diagnostic>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  std::string format(const std::string& file) const;

 private:
  std::vector<Diagnostic> items_;
};

std::string format_location(const std::string& file, SourceLoc loc);

}  // namespace nlc
