#pragma once

#include <string>

#include "nlc/graph.hpp"
#include "nlc/netlist.hpp"
#include "nlc/schedule.hpp"

namespace nlc {

/// Every intermediate product of compiling one netlist.
struct Compilation {
  Netlist netlist;
  FlatDesign design;
  Dfg dfg;
  CycleRemoval removal;
  AsapSchedule asap;
  FinalSchedule schedule;
  Program program;
};

/// parse -> elaborate -> build_dfg -> cycle_removal -> asap -> fixup -> lower.
Compilation compile_source(const std::string& source, const ParseOptions& opts = {},
                           Diagnostics* diags = nullptr);

/// Same pipeline starting from an already-flattened design.
Compilation compile_design(FlatDesign design, Diagnostics* diags = nullptr);

}  // namespace nlc
