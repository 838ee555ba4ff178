#include "nlc/schedule.hpp"

#include <algorithm>
#include <sstream>

namespace nlc {

const char* to_string(SlotMode mode) {
  switch (mode) {
    case SlotMode::Normal: return "normal";
    case SlotMode::ClockDisabledCopy: return "clock-disabled-copy";
    case SlotMode::ReinsertedOriginal: return "reinserted-original";
  }
  return "?";
}

AsapSchedule asap_schedule(const Dfg& g) {
  const auto order = topological_order(g);
  if (!order) {
    throw Error(ErrorCode::Schedule, "cannot schedule a cyclic graph; run cycle removal first");
  }
  AsapSchedule s;
  s.start.assign(g.size(), 0);
  for (int v : *order) {
    for (int e : g.in_edges(v)) {
      s.start[v] = std::max(s.start[v], s.start[g.edges()[e].from] + 1);
    }
  }
  for (int v = 0; v < g.size(); ++v) {
    if (g.vertex(v).is_cell()) s.slots.push_back(v);
  }
  std::stable_sort(s.slots.begin(), s.slots.end(),
                   [&](int a, int b) { return s.start[a] < s.start[b]; });
  return s;
}

FinalSchedule schedule_fixup(const AsapSchedule& s, const CutMap& cuts, const Dfg& original) {
  FinalSchedule out;
  for (int v : s.slots) out.slots.push_back({v, SlotMode::Normal, s.start[v]});

  std::vector<int> position(original.size(), -1);
  for (int i = 0; i < static_cast<int>(out.slots.size()); ++i) position[out.slots[i].vertex] = i;
  for (const auto& [v, removed] : cuts) {
    if (position[v] < 0) {
      throw Error(ErrorCode::Schedule,
                  "cut flip-flop '" + original.vertex(v).name + "' is missing from the schedule");
    }
    out.slots[position[v]].mode = SlotMode::ClockDisabledCopy;
  }

  for (const auto& [v, removed] : cuts) {
    // Never ahead of its own copy.
    int latest = s.start[v];
    for (int e : original.in_edges(v)) {
      const int u = original.edges()[e].from;
      if (original.vertex(u).is_cell() && position[u] < 0) {
        throw Error(ErrorCode::Schedule, "driver '" + original.vertex(u).name + "' of '" +
                                             original.vertex(v).name +
                                             "' is absent from the schedule");
      }
      latest = std::max(latest, s.start[u]);
    }
    // Immediately after the last slot of time `latest`.
    const auto pos = std::upper_bound(
        out.slots.begin(), out.slots.end(), latest,
        [](int t, const ScheduleSlot& slot) { return t < slot.start; });
    out.slots.insert(pos, ScheduleSlot{v, SlotMode::ReinsertedOriginal, latest});
  }
  return out;
}

std::string dump_schedule(const FinalSchedule& s, const Dfg& g) {
  std::ostringstream os;
  os << "index\tinstance\tmode\tstart\n";
  for (std::size_t i = 0; i < s.slots.size(); ++i) {
    const auto& slot = s.slots[i];
    os << i << '\t' << g.vertex(slot.vertex).name << '\t' << to_string(slot.mode) << '\t'
       << slot.start << '\n';
  }
  return os.str();
}

std::vector<std::string> check_schedule(const FinalSchedule& s, const Dfg& original,
                                        const CycleRemoval& removal) {
  std::vector<std::string> bad;
  const int n = original.size();
  std::vector<int> first(n, -1), copy_at(n, -1), original_at(n, -1), count(n, 0);
  for (int i = 0; i < static_cast<int>(s.slots.size()); ++i) {
    const auto& slot = s.slots[i];
    ++count[slot.vertex];
    if (first[slot.vertex] < 0) first[slot.vertex] = i;
    if (slot.mode == SlotMode::ClockDisabledCopy) copy_at[slot.vertex] = i;
    if (slot.mode == SlotMode::ReinsertedOriginal) original_at[slot.vertex] = i;
  }
  auto name = [&](int v) { return original.vertex(v).name; };
  for (int v = 0; v < n; ++v) {
    if (!original.vertex(v).is_cell()) continue;
    if (removal.cuts.count(v)) {
      if (count[v] != 2 || copy_at[v] < 0 || original_at[v] < 0) {
        bad.push_back(name(v) + ": cut flip-flop must appear once as copy and once as original");
      } else if (copy_at[v] > original_at[v]) {
        bad.push_back(name(v) + ": original precedes its clock-disabled copy");
      }
      for (int e : original.in_edges(v)) {
        const int u = original.edges()[e].from;
        if (original.vertex(u).is_cell() && first[u] > original_at[v]) {
          bad.push_back(name(v) + ": original precedes driver " + name(u));
        }
      }
    } else if (count[v] != 1) {
      bad.push_back(name(v) + ": expected exactly one slot, found " + std::to_string(count[v]));
    }
  }
  for (const auto& e : removal.graph.edges()) {
    if (!original.vertex(e.from).is_cell() || !original.vertex(e.to).is_cell()) continue;
    if (first[e.from] < 0 || first[e.to] < 0 || first[e.from] >= first[e.to]) {
      bad.push_back("edge " + name(e.from) + " -> " + name(e.to) + " scheduled out of order");
    }
  }
  return bad;
}

Program lower(const FlatDesign& d, const Dfg& original, const CycleRemoval& removal,
              const FinalSchedule& s) {
  Program p;
  p.name = d.name;

  // Signals: input-port bits first, then one output per cell vertex.
  std::vector<int> first_signal(original.size(), -1);
  int next = 0;
  for (int net : d.ports) {
    const auto& n = d.nets[net];
    p.port_order.push_back(n.dir);
    if (n.dir != Direction::Input) continue;
    const int v = original.net_vertex[net];
    first_signal[v] = next;
    PortSignal port{n.name, n.width, net, {}};
    for (int b = 0; b < n.width; ++b) port.bits.push_back({next++, false});
    p.inputs.push_back(std::move(port));
  }
  std::vector<int> ff_slot(original.size(), -1);
  for (int c = 0; c < static_cast<int>(d.cells.size()); ++c) {
    const int v = original.cell_vertex[c];
    first_signal[v] = next++;
    if (is_clocked(d.cells[c].kind)) {
      ff_slot[v] = static_cast<int>(p.ff_cells.size());
      p.ff_cells.push_back(c);
    }
  }
  p.signal_count = next;

  auto operand = [&](const Source& src) -> Operand {
    if (src.is_const()) return {-1, src.value};
    return {first_signal[src.vertex] + src.bit, false};
  };

  for (int net : d.ports) {
    const auto& n = d.nets[net];
    if (n.dir != Direction::Output) continue;
    const int v = original.net_vertex[net];
    PortSignal port{n.name, n.width, net, {}};
    for (const auto& src : original.sources[v]) port.bits.push_back(operand(src));
    p.outputs.push_back(std::move(port));
  }

  for (const auto& slot : s.slots) {
    const int c = original.vertex(slot.vertex).ref;
    const auto& cell = d.cells[c];
    Step step;
    step.cell = c;
    step.kind = cell.kind;
    step.init = cell.init;
    step.mode = slot.mode;
    step.output = first_signal[slot.vertex];
    step.ff_index = ff_slot[slot.vertex];
    for (const auto& src : original.sources[slot.vertex]) step.inputs.push_back(operand(src));
    if (slot.mode == SlotMode::ClockDisabledCopy) {
      for (const auto& e : removal.cuts.at(slot.vertex)) step.inputs[e.pin] = {-1, false};
    }
    p.steps.push_back(std::move(step));
  }
  return p;
}

}  // namespace nlc
