#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nlc {

enum class PrimitiveKind : std::uint8_t {
  AND2, AND3, AND4,
  OR2, OR3, OR4,
  XOR2, XNOR2, NAND2, NOR2,
  INV, BUF,
  CONST0, CONST1,
  LUT1, LUT2, LUT3, LUT4, LUT5, LUT6,
  FD, FDR, FDRE, FDC, FDCE,
};

enum class CellClass { Combinational, Clocked };
enum class PinDir { In, Out };

/// What a pin means to the flip-flop evaluator. Gate and LUT inputs are Data.
enum class PinRole { Data, Clock, Reset, Enable, Clear, Output };

struct PinInfo {
  std::string_view name;
  PinDir dir;
  PinRole role;
};

struct KindInfo {
  PrimitiveKind kind;
  std::string_view name;
  CellClass cls;
  std::span<const PinInfo> pins;  // inputs first, single output last
  int lut_inputs;                 // 0 unless LUTk
};

std::span<const KindInfo> catalog();
const KindInfo& info(PrimitiveKind kind);
std::optional<PrimitiveKind> find_kind(std::string_view name);

inline std::string_view name_of(PrimitiveKind kind) { return info(kind).name; }
bool is_clocked(PrimitiveKind kind);
bool is_lut(PrimitiveKind kind);
int lut_inputs(PrimitiveKind kind);
int input_count(PrimitiveKind kind);
/// Index of the output pin (always the last one in the signature).
int output_pin(PrimitiveKind kind);
/// Pin index by name, or -1.
int find_pin(PrimitiveKind kind, std::string_view pin);
/// Index of the pin with `role`, or -1 when the kind has no such pin.
int pin_with_role(PrimitiveKind kind, PinRole role);

/// True for vendor DSP / block-RAM / LUTRAM cell names, which are
/// recognised only to produce a clear diagnostic.
bool is_unsupported_macro(std::string_view name);

/// The primitive catalog as JSON (one record per kind).
std::string catalog_json();

// ---------------------------------------------------------------------------
// Combinational semantics

/// Boolean function of a fixed gate. Throws Error{Arity} on input count
/// mismatch or when `kind` is a LUT or flip-flop.
bool eval_gate(PrimitiveKind kind, std::span<const std::uint8_t> inputs);

struct LutSpec {
  int k = 1;
  std::uint64_t init_mask = 0;

  /// Throws Error{OutOfRange} unless 1 <= k <= 6 and mask < 2^(2^k).
  void validate() const;
};

/// Mask bit at address sum(inputs[i] << i); I0 is the address LSB.
bool eval_lut(const LutSpec& spec, std::span<const std::uint8_t> inputs);

/// One product term per set mask bit: the minterm address whose literals are
/// ANDed together. No minimisation is performed.
std::vector<std::uint32_t> sop_terms(const LutSpec& spec);

/// Evaluates an OR of product terms built from `sop_terms`, literal by
/// literal. Shares nothing with the mask lookup in `eval_lut`.
bool eval_sop(std::span<const std::uint32_t> terms, int k,
              std::span<const std::uint8_t> inputs);

// ---------------------------------------------------------------------------
// Clocked semantics

/// Double-buffered flip-flop storage. gv1 holds the pending value captured on
/// an edge, gv2 the value presented on Q, prev_clk the last clock level seen.
struct FlipFlopState {
  std::uint8_t gv1 = 0;
  std::uint8_t gv2 = 0;
  std::uint8_t prev_clk = 0;

  friend bool operator==(const FlipFlopState&, const FlipFlopState&) = default;
};

/// Extra pins of a flip-flop kind. Each must be present exactly when the
/// kind has the pin.
struct FlipFlopControls {
  std::optional<bool> r;
  std::optional<bool> ce;
  std::optional<bool> clr;
};

struct FlipFlopResult {
  bool q;
  FlipFlopState state;
};

/// One invocation of a flip-flop function. Async clear zeroes both buffers;
/// a rising edge (with CE) loads gv1; Q is gv2 before the trailing
/// gv2 := gv1 copy, so Q during an edge call is the pre-edge value.
/// Throws Error{MissingPin} when `ctrl` omits a pin the kind has, or supplies
/// one it lacks.
FlipFlopResult eval_ff(PrimitiveKind kind, FlipFlopState state, bool clk,
                       bool d, const FlipFlopControls& ctrl);

/// Unchecked form of `eval_ff` used on hot paths. Absent pins take their
/// inactive level: r = 0, ce = 1, clr = 0.
inline bool step_ff(FlipFlopState& s, bool clk, bool d, bool r, bool ce,
                    bool clr) {
  if (clr) {
    s.gv1 = 0;
    s.gv2 = 0;
  }
  const bool posedge = ((s.prev_clk ^ clk) & clk) != 0;
  if (posedge && ce && !clr) s.gv1 = r ? 0 : d;
  const bool q = s.gv2 != 0;
  s.gv2 = s.gv1;
  s.prev_clk = clk;
  return q;
}

}  // namespace nlc
