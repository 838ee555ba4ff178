#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nlc/cells.hpp"
#include "nlc/netlist.hpp"
#include "nlc/schedule.hpp"

namespace nlc {

struct PortInfo {
  std::string name;
  int width = 1;
};

/// A design that can be driven one evaluation pass at a time. Inputs and
/// outputs are ordered as declared; values are right-aligned integers.
class Simulator {
 public:
  virtual ~Simulator() = default;
  virtual const std::vector<PortInfo>& inputs() const = 0;
  virtual const std::vector<PortInfo>& outputs() const = 0;
  virtual std::vector<std::uint64_t> eval_pass(std::span<const std::uint64_t> in) = 0;
  /// Back to the all-zero power-on state.
  virtual void reset() = 0;
};

// ---------------------------------------------------------------------------
// Compiled-schedule interpreter

struct SimState {
  std::vector<std::uint8_t> values;  // one per program signal
  std::vector<FlipFlopState> ffs;
  std::uint64_t passes = 0;
};

SimState initial_state(const Program& p);

/// Runs every step of `p` once with `inputs` held constant and returns the
/// top outputs after the pass.
std::vector<std::uint64_t> eval_pass(const Program& p, SimState& state,
                                     std::span<const std::uint64_t> inputs);

class CompiledSimulator final : public Simulator {
 public:
  /// Throws Error{Width} if a port is wider than 64 bits.
  explicit CompiledSimulator(Program program);

  const std::vector<PortInfo>& inputs() const override { return inputs_; }
  const std::vector<PortInfo>& outputs() const override { return outputs_; }
  std::vector<std::uint64_t> eval_pass(std::span<const std::uint64_t> in) override;
  void reset() override;

  const Program& program() const { return program_; }
  SimState state() const {
    SimState s = state_;
    s.values.assign(values_.begin(), values_.end() - 2);
    return s;
  }

 private:
  // Pre-decoded step: combinational cells become truth tables over their
  // inputs; flip-flop operands are reordered to (C, D, R, CE, CLR).
  struct Op {
    std::uint64_t table;
    int first;  // into operands_
    int count;
    int output;
    int ff;  // -1 for combinational
    bool copy;
  };

  Program program_;
  SimState state_;
  std::vector<PortInfo> inputs_;
  std::vector<PortInfo> outputs_;
  std::vector<Op> ops_;
  std::vector<int> operands_;  // signal indices; the two slots past the end hold 0 and 1
  std::vector<std::uint8_t> values_;
};

// ---------------------------------------------------------------------------
// Event-driven reference

/// Reference simulator working directly from the flattened design, with no
/// schedule. Changed nets wake their readers; combinational activity is
/// propagated to a fixpoint in rounds, then every flip-flop samples its
/// settled pins. New flip-flop values become visible on the next pass.
class EventSimulator final : public Simulator {
 public:
  explicit EventSimulator(const FlatDesign& d);

  const std::vector<PortInfo>& inputs() const override { return inputs_; }
  const std::vector<PortInfo>& outputs() const override { return outputs_; }
  /// Throws Error{CombinationalLoop} if activity does not settle within
  /// |cells| + 1 rounds.
  std::vector<std::uint64_t> eval_pass(std::span<const std::uint64_t> in) override;
  void reset() override;

 private:
  struct Cell {
    PrimitiveKind kind;
    std::uint64_t init;
    std::vector<int> in;  // node per input pin; 0/1 are the constant nodes
    int out;
    int ff = -1;
  };
  struct Flop {
    bool q = false;
    bool prev_clk = false;
  };

  bool eval_cell(const Cell& c) const;

  std::vector<PortInfo> inputs_;
  std::vector<PortInfo> outputs_;
  std::vector<std::vector<int>> input_nodes_;   // per input port, lsb first
  std::vector<std::vector<int>> output_nodes_;  // per output port, lsb first
  std::vector<Cell> cells_;
  std::vector<std::vector<int>> readers_;  // node -> cells
  std::vector<Flop> flops_;
  std::vector<std::uint8_t> values_;
  std::vector<int> pending_;  // cells to wake at the start of the next pass
  bool first_pass_ = true;
};

// ---------------------------------------------------------------------------
// Stimulus and transcripts

/// CSV stimulus: header names the input ports, then `expect_<output>`
/// columns; one row per pass. Values are decimal or 0x-hex; an empty expect
/// cell means "don't care".
struct VectorSet {
  struct Row {
    std::vector<std::uint64_t> in;
    std::vector<std::optional<std::uint64_t>> expect;
  };

  std::vector<std::string> inputs;
  std::vector<std::string> expected;
  std::vector<Row> rows;

  /// Row ranges [first, last) of test cases. A case ends at a row carrying
  /// at least one expectation; trailing rows without one form a final case.
  std::vector<std::pair<std::size_t, std::size_t>> cases() const;
};

VectorSet parse_vectors(std::string_view csv);
std::string format_vectors(const VectorSet& vs);

/// `count` cases drawn uniformly without replacement, kept in file order.
/// Deterministic for a given seed. Returns `vs` unchanged if it has no more
/// than `count` cases.
VectorSet sample_cases(const VectorSet& vs, std::size_t count, std::uint64_t seed);

struct Transcript {
  std::vector<std::string> outputs;
  std::vector<std::vector<std::uint64_t>> rows;
  std::vector<std::optional<bool>> verdicts;
  std::size_t passed = 0;
  std::size_t failed = 0;

  std::string to_csv() const;
  /// `RESULT pass=<n> fail=<n>`
  std::string summary() const;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

/// Drives `sim` with every row. Every top input must have a column; unknown
/// columns, values wider than their port, and an empty set are Error{Vector}.
Transcript run_vectors(Simulator& sim, const VectorSet& vs);

/// First differing (row, output) between two transcripts of the same design.
std::optional<std::pair<std::size_t, std::string>> first_divergence(const Transcript& a,
                                                                    const Transcript& b);

}  // namespace nlc
