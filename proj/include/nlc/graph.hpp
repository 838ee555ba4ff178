#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nlc/diagnostics.hpp"
#include "nlc/netlist.hpp"

namespace nlc {

enum class VertexKind { InputPort, OutputPort, Combinational, FlipFlop };

struct Vertex {
  std::string name;
  VertexKind kind = VertexKind::Combinational;
  int ref = -1;  // FlatDesign net index for ports, cell index for cells

  bool is_cell() const {
    return kind == VertexKind::Combinational || kind == VertexKind::FlipFlop;
  }
};

/// Driver-to-consumer dependency through one bit.
struct Edge {
  int from = 0;
  int to = 0;
  int bit = 0;  // bit of the driver (input ports are multi-bit)
  int pin = 0;  // consumer pin index, or bit of an output port
  bool clock = false;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Where a consumer pin reads its value from.
struct Source {
  int vertex = -1;  // -1: constant
  int bit = 0;
  bool value = false;

  bool is_const() const { return vertex < 0; }
};

/// Bit-level dataflow graph. Vertex order is declaration order: top ports,
/// then cells.
class Dfg {
 public:
  int add_vertex(std::string name, VertexKind kind, int ref = -1);
  void add_edge(const Edge& e);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const Vertex& vertex(int v) const { return vertices_[v]; }
  const std::vector<Edge>& edges() const { return edges_; }
  int size() const { return static_cast<int>(vertices_.size()); }

  /// Edge indices, in insertion order.
  const std::vector<int>& in_edges(int v) const { return in_[v]; }
  const std::vector<int>& out_edges(int v) const { return out_[v]; }

  /// Copy of this graph keeping only edges for which `keep[i]` is true.
  Dfg filtered(const std::vector<bool>& keep) const;

  /// Pin sources for design-derived graphs: per cell vertex one entry per
  /// input pin, per output-port vertex one entry per bit. Empty otherwise.
  std::vector<std::vector<Source>> sources;

  /// Vertex of each FlatDesign cell, and of each FlatDesign port net (-1 for
  /// non-port nets).
  std::vector<int> cell_vertex;
  std::vector<int> net_vertex;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> in_;
  std::vector<std::vector<int>> out_;
};

/// One vertex per cell and per top port; one edge per (driving bit, consuming
/// pin). Floating consumer bits read constant 0 with a warning; a bit with
/// two drivers is an Error{MultipleDrivers}.
Dfg build_dfg(const FlatDesign& d, Diagnostics* diags = nullptr);

struct SccPartition {
  /// Components in reverse topological order of the condensation; vertices
  /// inside a component ascending.
  std::vector<std::vector<int>> components;
  std::vector<int> component_of;
};

SccPartition tarjan_scc(const Dfg& g);

/// Self-loop or more than one vertex.
bool is_cyclic_component(const Dfg& g, const SccPartition& p, int component);

/// Flip-flop vertex -> in-SCC edges removed from it, in edge order.
using CutMap = std::map<int, std::vector<Edge>>;

struct CycleRemoval {
  Dfg graph;
  CutMap cuts;
};

/// Cuts every in-SCC data/control edge into every flip-flop of a cyclic SCC.
/// Throws Error{CombinationalLoop} (with the cycle as witness) for an SCC
/// without flip-flops, or for a cycle that survives the cuts because it only
/// enters flip-flops through clock pins.
CycleRemoval cycle_removal(const Dfg& g);

/// Kahn order with ties broken by vertex index; nullopt if cyclic.
std::optional<std::vector<int>> topological_order(const Dfg& g);

/// Names of one cycle inside the given vertex set (first vertex not repeated).
std::vector<std::string> find_cycle(const Dfg& g, const std::vector<int>& within);

/// Graphviz text, one vertex or edge per line. Vertices are grouped by SCC
/// when a partition is given.
std::string to_dot(const Dfg& g, const SccPartition* scc = nullptr);

/// One line per component: index, then member names.
std::string scc_text(const Dfg& g, const SccPartition& p);

}  // namespace nlc
