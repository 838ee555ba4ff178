#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nlc/graph.hpp"
#include "nlc/pipeline.hpp"
#include "nlc/sim.hpp"

namespace nlc::test {

std::string read_text(const std::filesystem::path& p);
void write_text(const std::filesystem::path& p, const std::string& text);

std::filesystem::path fixture(const std::string& name);
std::filesystem::path golden(const std::string& name);
std::string fixture_text(const std::string& name);
Compilation compile_fixture(const std::string& name);

/// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& tag);

// ---------------------------------------------------------------------------
// Graph oracles

/// Random digraph with `n` vertices; every vertex is a cell, and each is a
/// flip-flop with probability `ff_share`.
Dfg random_digraph(std::mt19937_64& rng, int n, double edge_p, double ff_share);

/// Components by mutual reachability (transitive closure), each sorted,
/// the list sorted.
std::vector<std::vector<int>> brute_force_scc(const Dfg& g);

/// True when a cycle survives dropping every data/control edge into a
/// flip-flop, i.e. compilation has to abort.
bool has_ff_free_cycle(const Dfg& g);

/// Shortest-path solution of start(v) - start(u) >= 1 per edge, with every
/// vertex >= 0, by Bellman-Ford on the negated constraint graph.
std::optional<std::vector<int>> solve_difference_constraints(const Dfg& g);

// ---------------------------------------------------------------------------
// Flip-flop models

/// Flip-flop with a single storage bit: Q follows D within the same call.
struct NaiveFlop {
  bool q = false;
  bool prev_clk = false;

  bool step(bool clk, bool d) {
    if (!prev_clk && clk) q = d;
    prev_clk = clk;
    return q;
  }
};

// ---------------------------------------------------------------------------
// External C compiler

/// Path of a C compiler, or empty if none is found.
std::string c_compiler();

/// Run a shell command; returns its exit status and captured stdout.
int run_command(const std::string& cmd, std::string* out = nullptr);

/// Emits header, C source and testbench for `c` into `dir`, compiles them
/// strictly and returns the binary path. Empty on a compile failure, with
/// the compiler log in `log`.
std::filesystem::path build_c_model(const Compilation& c, const std::filesystem::path& dir,
                                    std::string* log = nullptr);

/// Feeds the rows of `vs` to the compiled testbench and parses its output
/// into transcript rows (outputs in program order).
std::vector<std::vector<std::uint64_t>> run_c_model(const std::filesystem::path& exe,
                                                    const Program& p, const VectorSet& vs);

}  // namespace nlc::test
