#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nlc/cells.hpp"
#include "nlc/diagnostics.hpp"

namespace nlc {

enum class Direction { Input, Output };

/// Declared index range. `[msb:lsb]` may run in either direction.
struct BitRange {
  int msb = 0;
  int lsb = 0;

  int width() const { return (msb >= lsb ? msb - lsb : lsb - msb) + 1; }
  bool contains(int index) const {
    return msb >= lsb ? (index <= msb && index >= lsb)
                      : (index >= msb && index <= lsb);
  }
  /// Bit position of `index`, 0 being the rightmost (lsb) bit.
  int offset(int index) const { return msb >= lsb ? index - lsb : lsb - index; }

  friend bool operator==(const BitRange&, const BitRange&) = default;
};

struct PortDecl {
  std::string name;
  Direction dir = Direction::Input;
  std::optional<BitRange> range;  // absent = scalar
  SourceLoc loc;

  int width() const { return range ? range->width() : 1; }
  BitRange bits() const { return range.value_or(BitRange{}); }
};

struct NetDecl {
  std::string name;
  std::optional<BitRange> range;
  SourceLoc loc;

  int width() const { return range ? range->width() : 1; }
  BitRange bits() const { return range.value_or(BitRange{}); }
};

/// One operand of a connection: a (possibly sliced) net/port reference or a
/// sized constant.
struct BitRef {
  enum class Kind { Ref, Const };

  Kind kind = Kind::Ref;
  std::string name;                // Ref
  std::optional<BitRange> select;  // Ref: absent = whole signal
  std::uint64_t value = 0;         // Const
  int const_width = 1;             // Const
  SourceLoc loc;
};

/// Actual expression bound to a formal port: concatenation of parts, most
/// significant first. No parts = explicitly unconnected.
struct Connection {
  std::string formal;
  std::vector<BitRef> parts;
  SourceLoc loc;
};

struct CellInst {
  std::string name;
  std::string kind;  // primitive name or module name
  std::map<std::string, std::uint64_t> params;
  std::vector<Connection> conns;
  SourceLoc loc;
};

/// `assign lhs = rhs;` between plain references (no operators).
struct Alias {
  std::vector<BitRef> lhs;
  std::vector<BitRef> rhs;
  SourceLoc loc;
};

struct ModuleDef {
  std::string name;
  std::vector<PortDecl> ports;
  std::vector<NetDecl> nets;
  std::vector<CellInst> cells;
  std::vector<Alias> aliases;
  SourceLoc loc;

  const PortDecl* find_port(const std::string& n) const;
  const NetDecl* find_net(const std::string& n) const;
  /// Declared range of a port or net, if any such name exists.
  std::optional<BitRange> signal_range(const std::string& n) const;
};

struct Netlist {
  std::vector<ModuleDef> modules;  // source order
  std::string top;

  const ModuleDef* find(const std::string& name) const;
};

struct ParseOptions {
  std::string filename;
  /// Designated top module. Empty: infer the unique module that no other
  /// module instantiates.
  std::string top;
};

/// Parses and validates a structural netlist. Throws Error with a source
/// position on the first fatal problem; warnings go to `diags`.
Netlist parse_netlist(const std::string& source, const ParseOptions& opts = {},
                      Diagnostics* diags = nullptr);

/// Re-emits a netlist in the accepted grammar. Reparsing the output yields a
/// structurally equal netlist.
std::string print_netlist(const Netlist& n);

/// Structural equality ignoring source positions.
bool same_structure(const Netlist& a, const Netlist& b);

// ---------------------------------------------------------------------------
// Flattened design

/// A single design bit after flattening: a bit of a flat net, or a constant.
struct FlatBit {
  int net = -1;  // -1: constant
  int offset = 0;
  bool value = false;

  bool is_const() const { return net < 0; }
  friend bool operator==(const FlatBit&, const FlatBit&) = default;
};

struct FlatNet {
  std::string name;  // hierarchical, '.'-separated
  int width = 1;
  BitRange range;
  bool is_port = false;
  Direction dir = Direction::Input;
};

struct FlatCell {
  std::string name;  // hierarchical, '.'-separated
  PrimitiveKind kind = PrimitiveKind::BUF;
  std::uint64_t init = 0;
  /// One entry per primitive pin (see `info(kind).pins`). Unconnected pins
  /// are nullopt; inputs among them read constant 0.
  std::vector<std::optional<FlatBit>> pins;
  SourceLoc loc;
};

struct FlatDesign {
  std::string name;
  std::vector<FlatNet> nets;  // top ports first, in declaration order
  std::vector<int> ports;     // indices of top ports in declaration order
  std::vector<FlatCell> cells;
  /// Plain-wire aliases from `assign`, bit by bit (lhs, rhs).
  std::vector<std::pair<FlatBit, FlatBit>> aliases;

  std::vector<int> inputs() const;
  std::vector<int> outputs() const;
};

/// Flattens the hierarchy below `top` so every cell is a primitive. Nets and
/// cells of submodule instances are prefixed with the instance path.
FlatDesign elaborate(const Netlist& n, const std::string& top);
inline FlatDesign elaborate(const Netlist& n) { return elaborate(n, n.top); }

}  // namespace nlc
