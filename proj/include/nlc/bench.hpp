#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nlc/cells.hpp"
#include "nlc/sim.hpp"

namespace nlc {

/// Emits a flat structural module in the supported Verilog subset. Signals
/// are plain strings: `name`, `name[i]`, `1'b0`, `1'b1`.
class NetlistBuilder {
 public:
  explicit NetlistBuilder(std::string module, std::string prefix = "u");

  void input(const std::string& name, int width = 1);
  void output(const std::string& name, int width = 1);
  /// Bits of a port, lsb first.
  static std::vector<std::string> bus(const std::string& name, int width);

  /// Instance of `kind` with named input pins. The output goes to `out` if
  /// given, otherwise to a fresh wire. Returns the output signal.
  std::string cell(PrimitiveKind kind, const std::map<std::string, std::string>& pins,
                   std::optional<std::string> out = {}, std::optional<std::uint64_t> init = {});
  /// LUT over `ins` (I0 first) computing `f(address)`.
  std::string lut(const std::vector<std::string>& ins, const std::function<bool(unsigned)>& f,
                  std::optional<std::string> out = {});
  void assign(const std::string& lhs, const std::string& rhs);
  /// Declares a fresh 1-bit wire.
  std::string wire();

  int cell_count() const { return cells_; }
  std::string str() const;

 private:
  std::string module_;
  std::string prefix_;
  std::vector<std::pair<std::string, int>> ports_;
  std::vector<std::string> decls_;
  std::vector<std::string> body_;
  int wires_ = 0;
  int cells_ = 0;
};

/// INIT mask of a k-input LUT computing `f(address)`.
std::uint64_t lut_mask(int k, const std::function<bool(unsigned)>& f);

struct Benchmark {
  std::string name;
  bool clocked = false;
  std::string top;
  std::vector<std::string> inputs;   // vector columns
  std::vector<std::string> outputs;  // expectation columns
  std::uint64_t cases = 0;           // default case space
  std::uint64_t full_cases = 0;      // case space under --full, 0 if none
  std::size_t sample = 0;            // default sample size, 0 for exhaustive
  std::function<std::string()> netlist;
  /// Appends the rows of case `id`. `full` selects the --full case space.
  std::function<void(std::uint64_t id, bool full, std::vector<VectorSet::Row>&)> rows;
};

const std::vector<Benchmark>& benchmarks();
const Benchmark* find_benchmark(const std::string& name);

/// `count` distinct ids from [0, space), ascending; all of them when
/// count >= space. Deterministic per seed.
std::vector<std::uint64_t> choose_cases(std::uint64_t space, std::uint64_t count,
                                        std::uint64_t seed);

/// Vectors for a benchmark. `sample` of 0 uses the benchmark default.
VectorSet bench_vectors(const Benchmark& b, std::size_t sample, std::uint64_t seed,
                        bool full = false);

// ---------------------------------------------------------------------------
// Reference models

std::uint64_t ref_adder(std::uint64_t a, std::uint64_t b, bool cin);  // {cout, sum[15:0]}
void ref_bcdadd(unsigned a, unsigned b, bool cin, unsigned& sum, bool& cout);
void ref_divide(unsigned a, unsigned b, unsigned& q, unsigned& r);
unsigned ref_mod3(unsigned x);
unsigned ref_popcount(std::uint64_t x);
/// Result and the number of clock cycles the subtractive loop needs.
void ref_gcd(unsigned a, unsigned b, unsigned& result, unsigned& cycles);

// ---------------------------------------------------------------------------
// Random designs

struct RandomNetlistOptions {
  int cells = 20;
  int data_inputs = 3;
  int outputs = 3;
  /// Allow flip-flop data pins to read later cells, closing loops that
  /// pass through a flip-flop.
  bool feedback = false;
  /// Share of clocked cells, in percent.
  int ff_percent = 25;
};

/// Well-formed flat netlist with inputs `clk`, `rst` and `d0..`; outputs
/// `q0..`. Combinational cells only read earlier signals, so every loop
/// contains a flip-flop. Clear pins read `rst` only.
std::string random_netlist(std::uint64_t seed, const RandomNetlistOptions& opts = {});

/// Random stimulus for `inputs`; clock-like 1-bit inputs toggle often.
VectorSet random_vectors(const std::vector<PortInfo>& inputs, std::size_t rows,
                         std::uint64_t seed);

}  // namespace nlc
