"""Structural netlist compiler: parse, schedule, emit IR/C and simulate."""

from ._nlc import (
    CompiledSimulator,
    Design,
    EventSimulator,
    NetlistError,
    Simulator,
    benchmark_netlist,
    benchmark_vectors,
    benchmarks,
    compile,
    random_netlist,
)

__all__ = [
    "CompiledSimulator",
    "Design",
    "EventSimulator",
    "NetlistError",
    "Simulator",
    "benchmark_netlist",
    "benchmark_vectors",
    "benchmarks",
    "compile",
    "random_netlist",
]
