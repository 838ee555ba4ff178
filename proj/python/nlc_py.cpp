#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nlc/bench.hpp"
#include "nlc/codegen.hpp"
#include "nlc/pipeline.hpp"
#include "nlc/sim.hpp"

namespace py = pybind11;
using namespace nlc;

namespace {

struct Design {
  Compilation c;

  std::vector<std::string> schedule() const {
    std::vector<std::string> out;
    for (const auto& s : c.schedule.slots) out.push_back(c.dfg.vertex(s.vertex).name);
    return out;
  }
};

Design compile(const std::string& source, const std::string& top) {
  ParseOptions o;
  o.top = top;
  return Design{compile_source(source, o)};
}

std::vector<std::pair<std::string, int>> ports(const std::vector<PortInfo>& p) {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& x : p) out.emplace_back(x.name, x.width);
  return out;
}

py::dict run(Simulator& sim, const std::string& csv) {
  const auto t = run_vectors(sim, parse_vectors(csv));
  py::dict d;
  d["passed"] = t.passed;
  d["failed"] = t.failed;
  d["rows"] = t.rows;
  d["summary"] = t.summary();
  return d;
}

}  // namespace

PYBIND11_MODULE(_nlc, m) {
  m.doc() = "Structural netlist compiler and simulators";

  py::register_exception<Error>(m, "NetlistError", PyExc_ValueError);

  py::class_<Design>(m, "Design")
      .def_property_readonly("name", [](const Design& d) { return d.c.design.name; })
      .def_property_readonly("cell_count", [](const Design& d) { return d.c.design.cells.size(); })
      .def("schedule", &Design::schedule, "Instance names in final schedule order")
      .def("dump_schedule", [](const Design& d) { return dump_schedule(d.c.schedule, d.c.dfg); })
      .def("ir", [](const Design& d) { return emit_ir(d.c.program, d.c.design); })
      .def("header", [](const Design& d) { return emit_header(d.c.program, d.c.design); })
      .def("c_source", [](const Design& d) { return emit_c_source(d.c.program, d.c.design); })
      .def("compiled", [](const Design& d) { return std::make_unique<CompiledSimulator>(d.c.program); })
      .def("event", [](const Design& d) { return std::make_unique<EventSimulator>(d.c.design); });

  py::class_<Simulator>(m, "Simulator")
      .def_property_readonly("inputs", [](const Simulator& s) { return ports(s.inputs()); })
      .def_property_readonly("outputs", [](const Simulator& s) { return ports(s.outputs()); })
      .def("eval_pass",
           [](Simulator& s, const std::vector<std::uint64_t>& in) { return s.eval_pass(in); })
      .def("reset", &Simulator::reset)
      .def("run", &run, py::arg("csv"), "Drive the rows of a vector CSV");
  py::class_<CompiledSimulator, Simulator>(m, "CompiledSimulator");
  py::class_<EventSimulator, Simulator>(m, "EventSimulator");

  m.def("compile", &compile, py::arg("source"), py::arg("top") = "");
  m.def("benchmarks", [] {
    std::vector<std::string> out;
    for (const auto& b : benchmarks()) out.push_back(b.name);
    return out;
  });
  m.def("benchmark_netlist", [](const std::string& name) {
    const auto* b = find_benchmark(name);
    if (!b) throw py::key_error(name);
    return b->netlist();
  });
  m.def(
      "benchmark_vectors",
      [](const std::string& name, std::size_t sample, std::uint64_t seed) {
        const auto* b = find_benchmark(name);
        if (!b) throw py::key_error(name);
        return format_vectors(bench_vectors(*b, sample, seed));
      },
      py::arg("name"), py::arg("sample") = 0, py::arg("seed") = 1);
  m.def("random_netlist", [](std::uint64_t seed, int cells, bool feedback) {
    RandomNetlistOptions o;
    o.cells = cells;
    o.feedback = feedback;
    return random_netlist(seed, o);
  }, py::arg("seed"), py::arg("cells") = 20, py::arg("feedback") = false);
}
