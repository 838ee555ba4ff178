#include "nlc/diagnostics.hpp"

#include <sstream>

namespace nlc {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "syntax";
    case ErrorCode::UnknownPrimitive: return "unknown-primitive";
    case ErrorCode::Undeclared: return "undeclared-identifier";
    case ErrorCode::OutOfRange: return "out-of-range";
    case ErrorCode::Inout: return "inout";
    case ErrorCode::Duplicate: return "duplicate-declaration";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Recursion: return "recursive-instantiation";
    case ErrorCode::Unresolved: return "unresolved-module";
    case ErrorCode::MultipleDrivers: return "multiple-drivers";
    case ErrorCode::CombinationalLoop: return "combinational-loop";
    case ErrorCode::Arity: return "arity";
    case ErrorCode::MissingPin: return "missing-pin";
    case ErrorCode::Schedule: return "schedule";
    case ErrorCode::Width: return "width";
    case ErrorCode::Vector: return "vector";
    case ErrorCode::Io: return "io";
  }
  return "error";
}

Error::Error(ErrorCode code, std::string message, SourceLoc loc,
             std::vector<std::string> witness)
    : std::runtime_error(std::move(message)),
      code_(code),
      loc_(loc),
      witness_(std::move(witness)) {}

std::string format_location(const std::string& file, SourceLoc loc) {
  std::ostringstream os;
  os << (file.empty() ? "<input>" : file);
  if (loc.valid()) os << ':' << loc.line << ':' << loc.col;
  return os.str();
}

std::string Error::format(const std::string& file) const {
  return format_location(file, loc_) + ": error: " + what();
}

void Diagnostics::warn(SourceLoc loc, std::string message) {
  items_.push_back({Severity::Warning, loc, std::move(message)});
}

std::string Diagnostics::format(const std::string& file) const {
  std::ostringstream os;
  for (const auto& d : items_) {
    os << format_location(file, d.loc) << ": "
       << (d.severity == Severity::Warning ? "warning" : "error") << ": "
       << d.message << '\n';
  }
  return os.str();
}

}  // namespace nlc
