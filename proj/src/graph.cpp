#include "nlc/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>

namespace nlc {

int Dfg::add_vertex(std::string name, VertexKind kind, int ref) {
  vertices_.push_back({std::move(name), kind, ref});
  in_.emplace_back();
  out_.emplace_back();
  return static_cast<int>(vertices_.size()) - 1;
}

void Dfg::add_edge(const Edge& e) {
  const int id = static_cast<int>(edges_.size());
  edges_.push_back(e);
  out_[e.from].push_back(id);
  in_[e.to].push_back(id);
}

Dfg Dfg::filtered(const std::vector<bool>& keep) const {
  Dfg g;
  for (const auto& v : vertices_) g.add_vertex(v.name, v.kind, v.ref);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (keep[i]) g.add_edge(edges_[i]);
  }
  g.sources = sources;
  g.cell_vertex = cell_vertex;
  g.net_vertex = net_vertex;
  return g;
}

namespace {

/// Disjoint sets over every design bit, plus two constant nodes.
class BitClasses {
 public:
  explicit BitClasses(const FlatDesign& d) {
    int next = 2;
    for (const auto& n : d.nets) {
      base_.push_back(next);
      next += n.width;
    }
    parent_.resize(next);
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int node(const FlatBit& b) const {
    return b.is_const() ? (b.value ? 1 : 0) : base_[b.net] + b.offset;
  }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);  // constants (0/1) stay representatives
    parent_[a] = b;
  }
  int size() const { return static_cast<int>(parent_.size()); }

 private:
  std::vector<int> base_;
  std::vector<int> parent_;
};

std::string bit_name(const FlatDesign& d, const FlatBit& b) {
  if (b.is_const()) return b.value ? "1'b1" : "1'b0";
  const auto& n = d.nets[b.net];
  if (n.width == 1 && n.range == BitRange{}) return n.name;
  const int index = n.range.msb >= n.range.lsb ? n.range.lsb + b.offset : n.range.lsb - b.offset;
  return n.name + "[" + std::to_string(index) + "]";
}

}  // namespace

Dfg build_dfg(const FlatDesign& d, Diagnostics* diags) {
  Dfg g;
  g.net_vertex.assign(d.nets.size(), -1);
  for (int p : d.ports) {
    const auto& n = d.nets[p];
    g.net_vertex[p] = g.add_vertex(
        n.name, n.dir == Direction::Input ? VertexKind::InputPort : VertexKind::OutputPort, p);
  }
  for (std::size_t c = 0; c < d.cells.size(); ++c) {
    const auto& cell = d.cells[c];
    g.cell_vertex.push_back(g.add_vertex(
        cell.name, is_clocked(cell.kind) ? VertexKind::FlipFlop : VertexKind::Combinational,
        static_cast<int>(c)));
  }

  BitClasses classes(d);
  for (const auto& [lhs, rhs] : d.aliases) classes.unite(classes.node(lhs), classes.node(rhs));
  if (classes.find(0) == classes.find(1)) {
    throw Error(ErrorCode::MultipleDrivers, "a net is tied to both constant 0 and constant 1");
  }

  // Driver of every class: a constant, an input-port bit, or a cell output.
  struct Driver {
    Source src;
    std::string what;
    SourceLoc loc;
  };
  std::vector<std::optional<Driver>> driver(classes.size());
  auto claim = [&](int node, Driver drv) {
    const int root = classes.find(node);
    if (root <= 1 && !drv.src.is_const()) {
      throw Error(ErrorCode::MultipleDrivers,
                  drv.what + " drives a net tied to constant " + std::to_string(root), drv.loc);
    }
    auto& slot = driver[root];
    if (slot) {
      throw Error(ErrorCode::MultipleDrivers,
                  "net driven by both " + slot->what + " and " + drv.what, drv.loc);
    }
    slot = std::move(drv);
  };
  driver[0] = Driver{{-1, 0, false}, "constant 0", {}};
  driver[1] = Driver{{-1, 0, true}, "constant 1", {}};
  for (int p : d.ports) {
    const auto& n = d.nets[p];
    if (n.dir != Direction::Input) continue;
    for (int b = 0; b < n.width; ++b) {
      claim(classes.node({p, b, false}), {{g.net_vertex[p], b, false}, "input '" + n.name + "'", {}});
    }
  }
  for (std::size_t c = 0; c < d.cells.size(); ++c) {
    const auto& cell = d.cells[c];
    const auto& out = cell.pins[output_pin(cell.kind)];
    if (!out) continue;
    claim(classes.node(*out), {{g.cell_vertex[c], 0, false}, "'" + cell.name + "'", cell.loc});
  }

  auto source_of = [&](const FlatBit& b, SourceLoc loc) -> Source {
    const auto& drv = driver[classes.find(classes.node(b))];
    if (drv) return drv->src;
    if (diags) diags->warn(loc, "'" + bit_name(d, b) + "' has no driver; reading constant 0");
    return {};
  };

  g.sources.resize(g.size());
  std::vector<Edge> edges;
  for (int p : d.ports) {
    const auto& n = d.nets[p];
    if (n.dir != Direction::Output) continue;
    const int v = g.net_vertex[p];
    for (int b = 0; b < n.width; ++b) {
      const Source s = source_of({p, b, false}, {});
      g.sources[v].push_back(s);
      if (!s.is_const()) edges.push_back({s.vertex, v, s.bit, b, false});
    }
  }
  for (std::size_t c = 0; c < d.cells.size(); ++c) {
    const auto& cell = d.cells[c];
    const int v = g.cell_vertex[c];
    const auto pins = info(cell.kind).pins;
    for (int pin = 0; pin < input_count(cell.kind); ++pin) {
      Source s;
      if (cell.pins[pin]) s = source_of(*cell.pins[pin], cell.loc);
      g.sources[v].push_back(s);
      if (!s.is_const()) edges.push_back({s.vertex, v, s.bit, pin, pins[pin].role == PinRole::Clock});
    }
  }
  for (const auto& e : edges) g.add_edge(e);
  return g;
}

SccPartition tarjan_scc(const Dfg& g) {
  const int n = g.size();
  SccPartition p;
  p.component_of.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  int counter = 0;

  struct Frame {
    int v;
    std::size_t next;
  };
  std::vector<Frame> calls;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    calls.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!calls.empty()) {
      Frame& f = calls.back();
      const auto& outs = g.out_edges(f.v);
      if (f.next < outs.size()) {
        const int w = g.edges()[outs[f.next++]].to;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          calls.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const int v = f.v;
      calls.pop_back();
      if (!calls.empty()) low[calls.back().v] = std::min(low[calls.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          p.component_of[w] = static_cast<int>(p.components.size());
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        p.components.push_back(std::move(comp));
      }
    }
  }
  return p;
}

bool is_cyclic_component(const Dfg& g, const SccPartition& p, int component) {
  const auto& members = p.components[component];
  if (members.size() > 1) return true;
  const int v = members.front();
  return std::any_of(g.out_edges(v).begin(), g.out_edges(v).end(),
                     [&](int e) { return g.edges()[e].to == v; });
}

std::vector<std::string> find_cycle(const Dfg& g, const std::vector<int>& within) {
  if (within.empty()) return {};
  std::vector<char> member(g.size(), 0);
  for (int v : within) member[v] = 1;
  // Breadth-first from the first member back to itself.
  const int start = within.front();
  std::vector<int> parent(g.size(), -2);
  std::queue<int> q;
  q.push(start);
  int last = -1;
  while (!q.empty() && last < 0) {
    const int v = q.front();
    q.pop();
    for (int e : g.out_edges(v)) {
      const int w = g.edges()[e].to;
      if (!member[w]) continue;
      if (w == start) {
        last = v;
        break;
      }
      if (parent[w] == -2) {
        parent[w] = v;
        q.push(w);
      }
    }
  }
  if (last < 0) return {};
  std::vector<std::string> names;
  for (int v = last; v != start; v = parent[v]) names.push_back(g.vertex(v).name);
  names.push_back(g.vertex(start).name);
  std::reverse(names.begin(), names.end());
  return names;
}

namespace {

std::string cycle_text(const std::vector<std::string>& names) {
  std::string s;
  for (const auto& n : names) s += n + " -> ";
  return s + (names.empty() ? "" : names.front());
}

}  // namespace

CycleRemoval cycle_removal(const Dfg& g) {
  const SccPartition scc = tarjan_scc(g);
  std::vector<int> order(scc.components.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return scc.components[a].front() < scc.components[b].front();
  });

  std::vector<int> cyclic;
  for (int c : order) {
    if (!is_cyclic_component(g, scc, c)) continue;
    const auto& members = scc.components[c];
    const bool has_ff = std::any_of(members.begin(), members.end(), [&](int v) {
      return g.vertex(v).kind == VertexKind::FlipFlop;
    });
    if (!has_ff) {
      auto witness = find_cycle(g, members);
      std::string msg = "combinational loop: " + cycle_text(witness);
      throw Error(ErrorCode::CombinationalLoop, std::move(msg), {}, std::move(witness));
    }
    cyclic.push_back(c);
  }

  CycleRemoval out;
  std::vector<bool> keep(g.edges().size(), true);
  for (int c : cyclic) {
    for (int v : scc.components[c]) {
      if (g.vertex(v).kind != VertexKind::FlipFlop) continue;
      for (int e : g.in_edges(v)) {
        const Edge& edge = g.edges()[e];
        if (edge.clock || scc.component_of[edge.from] != c) continue;
        keep[e] = false;
        out.cuts[v].push_back(edge);
      }
    }
  }
  out.graph = g.filtered(keep);

  if (!cyclic.empty()) {
    const SccPartition rest = tarjan_scc(out.graph);
    for (std::size_t c = 0; c < rest.components.size(); ++c) {
      if (!is_cyclic_component(out.graph, rest, static_cast<int>(c))) continue;
      auto witness = find_cycle(out.graph, rest.components[c]);
      std::string msg =
          "combinational loop not broken by any flip-flop data input: " + cycle_text(witness);
      throw Error(ErrorCode::CombinationalLoop, std::move(msg), {}, std::move(witness));
    }
  }
  return out;
}

std::optional<std::vector<int>> topological_order(const Dfg& g) {
  std::vector<int> indegree(g.size(), 0);
  for (const auto& e : g.edges()) ++indegree[e.to];
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 0; v < g.size(); ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<int> order;
  while (!ready.empty()) {
    const int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int e : g.out_edges(v)) {
      if (--indegree[g.edges()[e].to] == 0) ready.push(g.edges()[e].to);
    }
  }
  if (static_cast<int>(order.size()) != g.size()) return std::nullopt;
  return order;
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

const char* shape_of(VertexKind k) {
  switch (k) {
    case VertexKind::InputPort: return "invhouse";
    case VertexKind::OutputPort: return "house";
    case VertexKind::FlipFlop: return "box";
    case VertexKind::Combinational: return "ellipse";
  }
  return "ellipse";
}

}  // namespace

std::string to_dot(const Dfg& g, const SccPartition* scc) {
  std::ostringstream os;
  os << "digraph dfg {\n";
  for (int v = 0; v < g.size(); ++v) {
    os << "  v" << v << " [label=" << quoted(g.vertex(v).name)
       << ", shape=" << shape_of(g.vertex(v).kind);
    if (scc) os << ", scc=" << scc->component_of[v];
    os << "];\n";
  }
  for (const auto& e : g.edges()) {
    os << "  v" << e.from << " -> v" << e.to << " [bit=" << e.bit << ", pin=" << e.pin;
    if (e.clock) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string scc_text(const Dfg& g, const SccPartition& p) {
  std::ostringstream os;
  for (std::size_t c = 0; c < p.components.size(); ++c) {
    os << c;
    for (int v : p.components[c]) os << '\t' << g.vertex(v).name;
    os << '\n';
  }
  return os.str();
}

}  // namespace nlc
