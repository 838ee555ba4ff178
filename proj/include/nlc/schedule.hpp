#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlc/graph.hpp"
#include "nlc/netlist.hpp"

namespace nlc {

struct AsapSchedule {
  /// Start step per vertex (ports included; input ports are at 0).
  std::vector<int> start;
  /// Cell vertices ordered by (start, vertex index).
  std::vector<int> slots;
};

/// Minimal solution of start(v) - start(u) >= 1 for every edge, found as the
/// longest path over a topological order. Throws Error{Schedule} on a cycle.
AsapSchedule asap_schedule(const Dfg& g);

enum class SlotMode { Normal, ClockDisabledCopy, ReinsertedOriginal };

const char* to_string(SlotMode mode);

struct ScheduleSlot {
  int vertex = 0;
  SlotMode mode = SlotMode::Normal;
  int start = 0;

  friend bool operator==(const ScheduleSlot&, const ScheduleSlot&) = default;
};

struct FinalSchedule {
  std::vector<ScheduleSlot> slots;
};

/// Replaces every cut flip-flop's ASAP slot with a clock-disabled copy and
/// re-inserts the original after the last slot of the latest start time among
/// all its original drivers (kept and cut) and its own copy.
FinalSchedule schedule_fixup(const AsapSchedule& s, const CutMap& cuts, const Dfg& original);

/// Tab-separated `index, instance, mode, start` lines.
std::string dump_schedule(const FinalSchedule& s, const Dfg& g);

/// Violations of the schedule invariants, empty when all hold:
/// producer-before-consumer on kept edges, each cut flip-flop exactly once as
/// a copy followed later by its original, other cells exactly once, and each
/// original after every one of its original drivers.
std::vector<std::string> check_schedule(const FinalSchedule& s, const Dfg& original,
                                        const CycleRemoval& removal);

// ---------------------------------------------------------------------------
// Executable form shared by the interpreter and the code generators.

/// A value read by a step: a signal slot or a constant.
struct Operand {
  int signal = -1;  // -1: constant
  bool value = false;

  bool is_const() const { return signal < 0; }
};

struct Step {
  int cell = 0;  // FlatDesign cell index
  PrimitiveKind kind = PrimitiveKind::BUF;
  std::uint64_t init = 0;
  SlotMode mode = SlotMode::Normal;
  /// One operand per input pin. For a clock-disabled copy, pins whose edge
  /// was cut read constant 0 and the clock pin is ignored.
  std::vector<Operand> inputs;
  int output = 0;     // signal written
  int ff_index = -1;  // flip-flop state slot, clocked kinds only
};

struct PortSignal {
  std::string name;
  int width = 1;
  int net = 0;
  /// Inputs: signal of each bit (lsb first). Outputs: operand of each bit.
  std::vector<Operand> bits;
};

/// Straight-line program: inputs are loaded into their signals, steps run in
/// order, outputs are gathered from their operands.
struct Program {
  std::string name;
  int signal_count = 0;
  std::vector<PortSignal> inputs;   // declaration order
  std::vector<PortSignal> outputs;  // declaration order
  std::vector<Direction> port_order;  // directions in declaration order
  std::vector<Step> steps;
  std::vector<int> ff_cells;  // cell index per flip-flop state slot
};

Program lower(const FlatDesign& d, const Dfg& original, const CycleRemoval& removal,
              const FinalSchedule& s);

}  // namespace nlc
