// nlc: structural netlist compiler and simulator driver.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "nlc/bench.hpp"
#include "nlc/codegen.hpp"
#include "nlc/diagnostics.hpp"
#include "nlc/pipeline.hpp"
#include "nlc/sim.hpp"

namespace fs = std::filesystem;
using namespace nlc;

#ifndef NLC_BENCH_DIR
#define NLC_BENCH_DIR "benchmarks"
#endif

namespace {

enum Exit { kOk = 0, kFail = 1, kLoop = 2, kIo = 3 };

struct Options {
  std::string netlist;
  std::string top;
  std::string out;
  std::string vectors;
  std::string dump_schedule;
  std::string dump_dfg;
  std::string bench_dir = NLC_BENCH_DIR;
  std::vector<std::string> benches;
  std::size_t sample = 0;
  std::uint64_t seed = 1;
  std::size_t fuzz_count = 50;
  bool seed_given = false;
  bool emit_c = false;
  bool all = false;
  bool full = false;
  bool scc = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
}

Compilation load(const Options& o, const std::string& file, const std::string& source) {
  Diagnostics diags;
  ParseOptions popts;
  popts.filename = file;
  popts.top = o.top;
  try {
    auto c = compile_source(source, popts, &diags);
    std::cerr << diags.format(file);
    return c;
  } catch (...) {
    std::cerr << diags.format(file);
    throw;
  }
}

void write_dumps(const Options& o, const Compilation& c) {
  if (!o.dump_schedule.empty()) write_file(o.dump_schedule, dump_schedule(c.schedule, c.dfg));
  if (!o.dump_dfg.empty()) {
    const auto scc = tarjan_scc(c.dfg);
    write_file(o.dump_dfg, to_dot(c.dfg, &scc));
  }
}

std::string case_line(const std::string& name, const Transcript& t) {
  return name + ": " + std::to_string(t.passed) + "/" + std::to_string(t.passed + t.failed) +
         " pass";
}

std::string row_csv(const VectorSet& vs, std::size_t r) {
  std::ostringstream os;
  for (std::size_t i = 0; i < vs.inputs.size(); ++i) {
    os << (i ? "," : "") << vs.inputs[i] << "=" << vs.rows[r].in[i];
  }
  return os.str();
}

int cmd_compile(const Options& o) {
  const auto c = load(o, o.netlist, read_file(o.netlist));
  const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
  const auto name = make_symbols(c.program, c.design).top;
  write_file(dir / (name + ".ll"), emit_ir(c.program, c.design));
  write_file(dir / (name + ".h"), emit_header(c.program, c.design));
  if (o.emit_c) write_file(dir / (name + ".c"), emit_c_source(c.program, c.design));
  write_dumps(o, c);
  std::cout << "wrote " << (dir / (name + ".ll")).string() << " and "
            << (dir / (name + ".h")).string() << (o.emit_c ? " (+ .c)" : "") << "\n";
  return kOk;
}

VectorSet load_vectors(const Options& o) {
  auto vs = parse_vectors(read_file(o.vectors));
  if (o.sample) vs = sample_cases(vs, o.sample, o.seed);
  return vs;
}

/// Compiled vs reference on one design. Returns true when transcripts agree
/// and no expectation fails.
bool differential(const std::string& name, const Compilation& c, const VectorSet& vs,
                  std::size_t& passed, std::size_t& failed) {
  CompiledSimulator compiled(c.program);
  EventSimulator oracle(c.design);
  const auto a = run_vectors(compiled, vs);
  const auto b = run_vectors(oracle, vs);
  passed += a.passed;
  failed += a.failed;
  std::cout << case_line(name, a) << "\n";
  bool ok = true;
  if (auto d = first_divergence(a, b)) {
    const auto [row, port] = *d;
    std::cout << name << ": divergence at pass " << row << ", port " << port << "\n";
    if (row < vs.rows.size()) std::cout << "  reproducer: " << row_csv(vs, row) << "\n";
    ok = false;
  }
  for (std::size_t r = 0; r < a.verdicts.size(); ++r) {
    if (a.verdicts[r] == false) {
      std::cout << name << ": expectation failed at pass " << r << "\n"
                << "  reproducer: " << row_csv(vs, r) << "\n";
      ok = false;
      break;
    }
  }
  return ok;
}

std::vector<const Benchmark*> selected(const Options& o) {
  std::vector<const Benchmark*> out;
  if (o.all) {
    for (const auto& b : benchmarks()) out.push_back(&b);
  }
  for (const auto& n : o.benches) {
    const auto* b = find_benchmark(n);
    if (!b) throw Error(ErrorCode::Io, "unknown benchmark '" + n + "'");
    out.push_back(b);
  }
  return out;
}

std::string bench_source(const Options& o, const Benchmark& b, std::string& file) {
  const auto path = fs::path(o.bench_dir) / (b.name + ".v");
  if (fs::exists(path)) {
    file = path.string();
    return read_file(file);
  }
  file = b.name + ".v";
  return b.netlist();
}

int run_suite(const Options& o, bool check) {
  std::size_t passed = 0, failed = 0;
  bool ok = true;
  for (const auto* b : selected(o)) {
    std::string file;
    const auto src = bench_source(o, *b, file);
    Options local = o;
    local.top = b->top;
    const auto c = load(local, file, src);
    const auto vs = bench_vectors(*b, o.sample, o.seed, o.full);
    if (check) {
      ok = differential(b->name, c, vs, passed, failed) && ok;
    } else {
      CompiledSimulator sim(c.program);
      const auto t = run_vectors(sim, vs);
      passed += t.passed;
      failed += t.failed;
      std::cout << case_line(b->name, t) << "\n";
    }
  }
  const Transcript total{{}, {}, {}, passed, failed};
  std::cout << total.summary() << "\n";
  return ok && failed == 0 ? kOk : kFail;
}

int cmd_sim(const Options& o) {
  if (o.all || !o.benches.empty()) return run_suite(o, false);
  if (o.vectors.empty()) throw Error(ErrorCode::Vector, "--vectors is required");
  const auto c = load(o, o.netlist, read_file(o.netlist));
  const auto vs = load_vectors(o);
  CompiledSimulator sim(c.program);
  const auto t = run_vectors(sim, vs);
  auto& log = o.out.empty() ? std::cerr : std::cout;
  if (o.out.empty()) {
    std::cout << t.to_csv();
  } else {
    write_file(o.out, t.to_csv());
  }
  log << case_line(c.design.name, t) << "\n" << t.summary() << "\n";
  write_dumps(o, c);
  return t.failed == 0 ? kOk : kFail;
}

int cmd_fuzz(const Options& o) {
  std::size_t passed = 0, failed = 0;
  bool ok = true;
  for (std::size_t i = 0; i < o.fuzz_count; ++i) {
    RandomNetlistOptions ro;
    ro.feedback = i % 2 == 1;
    ro.cells = 10 + static_cast<int>((o.seed + i) % 40);
    const auto seed = o.seed * 1000003 + i;
    const auto src = random_netlist(seed, ro);
    const auto c = load(o, "rnd" + std::to_string(seed) + ".v", src);
    CompiledSimulator compiled(c.program);
    const auto vs = random_vectors(compiled.inputs(), 64, seed);
    EventSimulator oracle(c.design);
    const auto a = run_vectors(compiled, vs);
    const auto b = run_vectors(oracle, vs);
    if (auto d = first_divergence(a, b)) {
      std::cout << "rnd" << seed << ": divergence at pass " << d->first << ", port " << d->second
                << "\n  reproducer: " << row_csv(vs, d->first) << "\n";
      ok = false;
      ++failed;
    } else {
      ++passed;
    }
  }
  const Transcript total{{}, {}, {}, passed, failed};
  std::cout << total.summary() << "\n";
  return ok ? kOk : kFail;
}

int cmd_check(const Options& o) {
  if (o.all || !o.benches.empty()) return run_suite(o, true);
  if (o.netlist.empty()) {
    if (o.seed_given) return cmd_fuzz(o);
    throw Error(ErrorCode::Io, "check needs a netlist, --all, --bench or --seed");
  }
  if (o.vectors.empty()) throw Error(ErrorCode::Vector, "--vectors is required");
  const auto c = load(o, o.netlist, read_file(o.netlist));
  const auto vs = load_vectors(o);
  std::size_t passed = 0, failed = 0;
  const bool ok = differential(c.design.name, c, vs, passed, failed);
  const Transcript total{{}, {}, {}, passed, failed};
  std::cout << total.summary() << "\n";
  return ok ? kOk : kFail;
}

int cmd_dump(const Options& o) {
  const auto c = load(o, o.netlist, read_file(o.netlist));
  write_dumps(o, c);
  if (o.scc) std::cout << scc_text(c.dfg, tarjan_scc(c.dfg));
  if (o.dump_schedule.empty() && o.dump_dfg.empty() && !o.scc) {
    std::cout << dump_schedule(c.schedule, c.dfg);
  }
  return kOk;
}

int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::CombinationalLoop: return kLoop;
    case ErrorCode::Io: return kIo;
    default: return kFail;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compile structural netlists to straight-line code and simulate them"};
  app.set_config("--config", "", "Read options from a key = value file; flags win");
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--top", o.top, "Top module");
    sub->add_option("--dump-schedule", o.dump_schedule, "Write the final schedule (TSV)");
    sub->add_option("--dump-dfg", o.dump_dfg, "Write the dataflow graph (Graphviz)");
  };
  auto simulating = [&](CLI::App* sub) {
    sub->add_option("--vectors", o.vectors, "Stimulus CSV");
    sub->add_option("--sample", o.sample, "Sample this many test cases");
    sub->add_option("--seed", o.seed, "Sampling / fuzzing seed")->each([&](const std::string&) {
      o.seed_given = true;
    });
    sub->add_flag("--all", o.all, "Run every bundled benchmark");
    sub->add_option("--bench", o.benches, "Run the named bundled benchmark(s)");
    sub->add_flag("--full", o.full, "Use the full case space where one is defined");
    sub->add_option("--bench-dir", o.bench_dir, "Directory of bundled benchmark netlists");
  };

  auto* compile = app.add_subcommand("compile", "Emit <name>.ll and <name>.h (and .c)");
  compile->add_option("netlist", o.netlist, "Netlist file")->required();
  compile->add_option("-o,--out", o.out, "Output directory");
  compile->add_flag("--emit-c", o.emit_c, "Also emit a C99 translation");
  common(compile);

  auto* sim = app.add_subcommand("sim", "Run vectors on the compiled schedule");
  sim->add_option("netlist", o.netlist, "Netlist file");
  sim->add_option("-o,--out", o.out, "Transcript CSV path (default stdout)");
  common(sim);
  simulating(sim);

  auto* check = app.add_subcommand("check", "Compare the compiled schedule with the event-driven reference");
  check->add_option("netlist", o.netlist, "Netlist file");
  check->add_option("--count", o.fuzz_count, "Random designs in fuzz mode");
  common(check);
  simulating(check);

  auto* dump = app.add_subcommand("dump", "Write DFG / SCC / schedule debug artifacts");
  dump->add_option("netlist", o.netlist, "Netlist file")->required();
  dump->add_flag("--scc", o.scc, "Print strongly connected components");
  common(dump);

  CLI11_PARSE(app, argc, argv);

  const std::string file = o.netlist;
  try {
    if (compile->parsed()) return cmd_compile(o);
    if (sim->parsed()) {
      if (o.netlist.empty() && !o.all && o.benches.empty()) {
        throw Error(ErrorCode::Io, "sim needs a netlist, --all or --bench");
      }
      return cmd_sim(o);
    }
    if (check->parsed()) return cmd_check(o);
    if (dump->parsed()) return cmd_dump(o);
  } catch (const Error& e) {
    std::cerr << e.format(file) << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kOk;
}
