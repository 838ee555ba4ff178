#include "nlc/pipeline.hpp"

namespace nlc {

Compilation compile_design(FlatDesign design, Diagnostics* diags) {
  Compilation c;
  c.design = std::move(design);
  c.dfg = build_dfg(c.design, diags);
  c.removal = cycle_removal(c.dfg);
  c.asap = asap_schedule(c.removal.graph);
  c.schedule = schedule_fixup(c.asap, c.removal.cuts, c.dfg);
  c.program = lower(c.design, c.dfg, c.removal, c.schedule);
  return c;
}

Compilation compile_source(const std::string& source, const ParseOptions& opts,
                           Diagnostics* diags) {
  Netlist n = parse_netlist(source, opts, diags);
  FlatDesign d = elaborate(n);
  Compilation c = compile_design(std::move(d), diags);
  c.netlist = std::move(n);
  return c;
}

}  // namespace nlc
