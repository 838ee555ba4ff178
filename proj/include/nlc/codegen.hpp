#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nlc/netlist.hpp"
#include "nlc/schedule.hpp"

namespace nlc {

/// `.` becomes `__`; other characters outside [A-Za-z0-9_] become `_xHH`.
/// A leading digit gets an `n` prefix.
std::string mangle(std::string_view name);

/// Identifiers used by every backend for one program. Collisions after
/// mangling are resolved with `_2`, `_3`, ... suffixes in declaration order.
struct Symbols {
  std::string top;
  std::vector<std::string> ports;  // declaration order, inputs and outputs mixed
  std::vector<std::string> ffs;    // per flip-flop state slot
};

Symbols make_symbols(const Program& p, const FlatDesign& d);

/// C type carrying a port of `width` bits: uint8_t .. uint64_t. Throws
/// Error{Width} above 64 bits.
std::string c_type(int width, const std::string& port = {});

/// One IR function per primitive kind (and per LUT mask) used by `p`.
std::string emit_primitive_fns(const Program& p);

/// Complete LLVM textual module: flip-flop globals, primitive functions and
/// the top function calling them in schedule order.
std::string emit_ir(const Program& p, const FlatDesign& d);

/// C header declaring the top function. Throws Error{Width} for ports wider
/// than 64 bits.
std::string emit_header(const Program& p, const FlatDesign& d);

/// Self-contained C99 translation of the same program.
std::string emit_c_source(const Program& p, const FlatDesign& d);

/// `main` that reads one pass per stdin line (input values in port order,
/// whitespace separated) and prints the outputs comma separated.
std::string emit_c_testbench(const Program& p, const FlatDesign& d,
                             const std::string& header_name);

}  // namespace nlc
