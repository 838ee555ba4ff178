#include "support.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <sys/wait.h>
#include <unistd.h>

#include "nlc/codegen.hpp"

namespace fs = std::filesystem;

namespace nlc::test {

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

fs::path fixture(const std::string& name) { return fs::path(NLC_TEST_DIR) / "fixtures" / name; }
fs::path golden(const std::string& name) { return fs::path(NLC_TEST_DIR) / "golden" / name; }
std::string fixture_text(const std::string& name) { return read_text(fixture(name)); }

Compilation compile_fixture(const std::string& name) {
  ParseOptions o;
  o.filename = name;
  return compile_source(fixture_text(name), o);
}

fs::path scratch_dir(const std::string& tag) {
  static int counter = 0;
  auto dir = fs::temp_directory_path() /
             ("nlc_test_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// ---------------------------------------------------------------------------

Dfg random_digraph(std::mt19937_64& rng, int n, double edge_p, double ff_share) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Dfg g;
  for (int v = 0; v < n; ++v) {
    const bool ff = u(rng) < ff_share;
    g.add_vertex("v" + std::to_string(v), ff ? VertexKind::FlipFlop : VertexKind::Combinational,
                 v);
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (u(rng) >= edge_p) continue;
      Edge e;
      e.from = a;
      e.to = b;
      e.pin = static_cast<int>(g.in_edges(b).size());
      e.clock = g.vertex(b).kind == VertexKind::FlipFlop && u(rng) < 0.15;
      g.add_edge(e);
    }
  }
  return g;
}

namespace {

std::vector<std::vector<char>> closure(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  for (auto [a, b] : edges) r[a][b] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (r[i][k])
        for (int j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = 1;
  return r;
}

}  // namespace

std::vector<std::vector<int>> brute_force_scc(const Dfg& g) {
  const int n = g.size();
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : g.edges()) edges.emplace_back(e.from, e.to);
  const auto r = closure(n, edges);
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int v = 0; v < n; ++v) {
    if (comp[v] >= 0) continue;
    comp[v] = static_cast<int>(out.size());
    out.push_back({v});
    for (int w = v + 1; w < n; ++w) {
      if (comp[w] < 0 && r[v][w] && r[w][v]) {
        comp[w] = comp[v];
        out.back().push_back(w);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool has_ff_free_cycle(const Dfg& g) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : g.edges()) {
    if (g.vertex(e.to).kind == VertexKind::FlipFlop && !e.clock) continue;
    edges.emplace_back(e.from, e.to);
  }
  const auto r = closure(g.size(), edges);
  for (int v = 0; v < g.size(); ++v)
    if (r[v][v]) return true;
  return false;
}

std::optional<std::vector<int>> solve_difference_constraints(const Dfg& g) {
  const int n = g.size();
  // Potentials y = -start; every constraint is y(to) <= y(from) - 1.
  std::vector<long> y(n, 0);
  for (int round = 0; round <= n; ++round) {
    bool changed = false;
    for (const auto& e : g.edges()) {
      if (y[e.from] - 1 < y[e.to]) {
        y[e.to] = y[e.from] - 1;
        changed = true;
      }
    }
    if (!changed) {
      std::vector<int> start(n);
      for (int v = 0; v < n; ++v) start[v] = static_cast<int>(-y[v]);
      return start;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::string c_compiler() {
  for (const char* cc : {"cc", "gcc", "clang"}) {
    if (run_command(std::string("command -v ") + cc + " >/dev/null 2>&1") == 0) return cc;
  }
  return {};
}

int run_command(const std::string& cmd, std::string* out) {
  FILE* f = ::popen(cmd.c_str(), "r");
  if (!f) return -1;
  char buf[65536];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) {
    if (out) out->append(buf, n);
  }
  const int status = ::pclose(f);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path build_c_model(const Compilation& c, const fs::path& dir, std::string* log) {
  const auto cc = c_compiler();
  if (cc.empty()) {
    if (log) *log = "no C compiler";
    return {};
  }
  const auto top = make_symbols(c.program, c.design).top;
  write_text(dir / (top + ".h"), emit_header(c.program, c.design));
  write_text(dir / (top + ".c"), emit_c_source(c.program, c.design));
  write_text(dir / "tb.c", emit_c_testbench(c.program, c.design, top + ".h"));
  const auto exe = dir / "model";
  const std::string cmd = cc + " -std=c99 -Wall -Wextra -pedantic -Werror -O1 -I" +
                          dir.string() + " -o " + exe.string() + " " +
                          (dir / (top + ".c")).string() + " " + (dir / "tb.c").string() +
                          " 2>&1";
  std::string text;
  const int rc = run_command(cmd, &text);
  if (log) *log = text;
  return rc == 0 ? exe : fs::path{};
}

std::vector<std::vector<std::uint64_t>> run_c_model(const fs::path& exe, const Program& p,
                                                    const VectorSet& vs) {
  std::vector<int> column;
  for (const auto& port : p.inputs) {
    const auto it = std::find(vs.inputs.begin(), vs.inputs.end(), port.name);
    if (it == vs.inputs.end()) throw std::runtime_error("no column for " + port.name);
    column.push_back(static_cast<int>(it - vs.inputs.begin()));
  }
  std::ostringstream in;
  for (const auto& row : vs.rows) {
    for (std::size_t i = 0; i < column.size(); ++i) in << (i ? " " : "") << row.in[column[i]];
    in << '\n';
  }
  const auto stim = exe.parent_path() / "stim.txt";
  write_text(stim, in.str());
  std::string out;
  if (run_command(exe.string() + " < " + stim.string(), &out) != 0) {
    throw std::runtime_error("testbench failed");
  }
  std::vector<std::vector<std::uint64_t>> rows;
  std::istringstream is(out);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::uint64_t> r;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) r.push_back(std::stoull(cell));
    if (p.outputs.empty()) r.clear();
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace nlc::test
