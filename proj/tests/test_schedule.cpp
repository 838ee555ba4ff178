#include <doctest.h>

#include <random>

#include "nlc/bench.hpp"
#include "nlc/pipeline.hpp"
#include "nlc/schedule.hpp"
#include "support.hpp"

using namespace nlc;

namespace {

std::vector<std::string> order_names(const Compilation& c) {
  std::vector<std::string> out;
  for (const auto& s : c.schedule.slots) out.push_back(c.dfg.vertex(s.vertex).name);
  return out;
}

int position_of(const FinalSchedule& s, int v, SlotMode mode) {
  for (int i = 0; i < static_cast<int>(s.slots.size()); ++i)
    if (s.slots[i].vertex == v && s.slots[i].mode == mode) return i;
  return -1;
}

Dfg random_dag(std::mt19937_64& rng, int n, double p) {
  Dfg g;
  for (int v = 0; v < n; ++v) g.add_vertex("v" + std::to_string(v), VertexKind::Combinational);
  std::uniform_real_distribution<double> u(0, 1);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (u(rng) < p) g.add_edge({a, b});
  return g;
}

}  // namespace

TEST_CASE("xor-inv-and-or schedule order") {
  const auto c = test::compile_fixture("xor_inv_and_or.v");
  CHECK(order_names(c) == std::vector<std::string>{"g_xor", "g_inv", "g_and", "g_or"});
  for (const auto& s : c.schedule.slots) CHECK(s.mode == SlotMode::Normal);
}

TEST_CASE("single gate") {
  const auto c = compile_source("module m(a, y); input a; output y; INV g (.I(a), .O(y)); endmodule");
  CHECK(order_names(c) == std::vector<std::string>{"g"});
  CHECK(c.schedule.slots[0].start == 1);
}

TEST_CASE("diamond start times") {
  const auto c = compile_source(R"(
module d (input a, output y);
  wire l, r;
  AND2 w (.I0(l), .I1(r), .O(y));
  BUF v (.I(a), .O(r));
  BUF u (.I(a), .O(l));
endmodule)");
  // Declaration order breaks the tie between u and v.
  CHECK(order_names(c) == std::vector<std::string>{"v", "u", "w"});
  CHECK(c.schedule.slots[0].start == 1);
  CHECK(c.schedule.slots[1].start == 1);
  CHECK(c.schedule.slots[2].start == 2);
}

TEST_CASE("asap equals the difference-constraint solution") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_dag(rng, 1 + static_cast<int>(rng() % 30), 0.15);
    const auto s = asap_schedule(g);
    const auto bf = test::solve_difference_constraints(g);
    REQUIRE(bf.has_value());
    CHECK(s.start == *bf);
    for (const auto& e : g.edges()) CHECK(s.start[e.from] < s.start[e.to]);
    for (std::size_t k = 1; k < s.slots.size(); ++k) {
      const int a = s.slots[k - 1], b = s.slots[k];
      CHECK((s.start[a] < s.start[b] || (s.start[a] == s.start[b] && a < b)));
    }
  }
}

TEST_CASE("asap rejects a cycle") {
  Dfg g;
  g.add_vertex("x", VertexKind::Combinational);
  g.add_edge({0, 0});
  CHECK_THROWS_AS(asap_schedule(g), Error);
}

TEST_CASE("fixup without cuts is the asap order") {
  const auto c = test::compile_fixture("xor_inv_and_or.v");
  const auto f = schedule_fixup(c.asap, {}, c.dfg);
  REQUIRE(f.slots.size() == c.asap.slots.size());
  for (std::size_t i = 0; i < f.slots.size(); ++i) {
    CHECK(f.slots[i].vertex == c.asap.slots[i]);
    CHECK(f.slots[i].mode == SlotMode::Normal);
  }
}

TEST_CASE("subtractor loop places the original after the subtractor") {
  // 2-bit register r <= r - x, the subtractor reading the register.
  const auto c = compile_source(R"(
module sub (input clk, input [1:0] x, output [1:0] r);
  wire [1:0] d;
  wire b0n, t;
  XOR2 s0 (.I0(r[0]), .I1(x[0]), .O(d[0]));
  INV n0 (.I(r[0]), .O(b0n));
  AND2 b0 (.I0(b0n), .I1(x[0]), .O(t));
  LUT3 #(.INIT(8'h96)) s1 (.I0(r[1]), .I1(x[1]), .I2(t), .O(d[1]));
  FD f0 (.C(clk), .D(d[0]), .Q(r[0]));
  FD f1 (.C(clk), .D(d[1]), .Q(r[1]));
endmodule)");
  auto v = [&](const std::string& n) {
    for (int i = 0; i < c.dfg.size(); ++i)
      if (c.dfg.vertex(i).name == n) return i;
    return -1;
  };
  const auto& fs = c.schedule;
  CHECK(position_of(fs, v("f0"), SlotMode::ClockDisabledCopy) == 0);
  CHECK(position_of(fs, v("f1"), SlotMode::ClockDisabledCopy) == 1);
  const int o0 = position_of(fs, v("f0"), SlotMode::ReinsertedOriginal);
  const int o1 = position_of(fs, v("f1"), SlotMode::ReinsertedOriginal);
  CHECK(o0 == position_of(fs, v("n0"), SlotMode::Normal) + 1);
  CHECK(o0 < position_of(fs, v("b0"), SlotMode::Normal));
  CHECK(o1 == position_of(fs, v("s1"), SlotMode::Normal) + 1);
  CHECK(o1 == static_cast<int>(fs.slots.size()) - 1);
  CHECK(fs.slots[o0].start == 2);
  CHECK(fs.slots[o1].start == 4);
}

TEST_CASE("cut driver at 5, kept driver at 7") {
  Dfg g;
  const int u = g.add_vertex("u", VertexKind::Combinational);
  const int k = g.add_vertex("k", VertexKind::Combinational);
  const int f = g.add_vertex("f", VertexKind::FlipFlop);
  const int w = g.add_vertex("w", VertexKind::Combinational);
  g.add_edge({u, f, 0, 1});
  g.add_edge({k, f, 0, 0});
  AsapSchedule s;
  s.start = {5, 7, 8, 9};
  s.slots = {u, k, f, w};
  CutMap cuts;
  cuts[f] = {g.edges()[0]};
  const auto fs = schedule_fixup(s, cuts, g);
  REQUIRE(fs.slots.size() == 5);
  const int copy = position_of(fs, f, SlotMode::ClockDisabledCopy);
  const int orig = position_of(fs, f, SlotMode::ReinsertedOriginal);
  CHECK(copy == 2);
  CHECK(orig > position_of(fs, k, SlotMode::Normal));
  CHECK(orig > copy);
  CHECK(orig < position_of(fs, w, SlotMode::Normal));
}

TEST_CASE("fixup errors") {
  Dfg g;
  const int f = g.add_vertex("f", VertexKind::FlipFlop);
  AsapSchedule s;
  s.start = {1};
  CutMap cuts;
  cuts[f] = {};
  CHECK_THROWS_AS(schedule_fixup(s, cuts, g), Error);
}

TEST_CASE("counter schedule") {
  const auto c = test::compile_fixture("counter.v");
  CHECK(check_schedule(c.schedule, c.dfg, c.removal).empty());
  int copies = 0, originals = 0;
  for (const auto& s : c.schedule.slots) {
    copies += s.mode == SlotMode::ClockDisabledCopy;
    originals += s.mode == SlotMode::ReinsertedOriginal;
  }
  CHECK(copies == 2);
  CHECK(originals == 2);
  const auto text = dump_schedule(c.schedule, c.dfg);
  CHECK(text.find("index\tinstance\tmode\tstart\n") == 0);
  CHECK(text.find("\tr0\t") != std::string::npos);
}

TEST_CASE("schedule invariants on random feedback designs") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RandomNetlistOptions o;
    o.feedback = true;
    o.cells = 10 + static_cast<int>(seed % 40);
    const auto c = compile_source(random_netlist(seed, o));
    const auto bad = check_schedule(c.schedule, c.dfg, c.removal);
    CHECK_MESSAGE(bad.empty(), "seed " << seed << ": " << (bad.empty() ? "" : bad[0]));
  }
}

TEST_CASE("check_schedule catches a violation") {
  auto c = test::compile_fixture("counter.v");
  auto broken = c.schedule;
  // Move the first reinserted original to the front.
  for (std::size_t i = 0; i < broken.slots.size(); ++i) {
    if (broken.slots[i].mode == SlotMode::ReinsertedOriginal) {
      auto s = broken.slots[i];
      broken.slots.erase(broken.slots.begin() + i);
      broken.slots.insert(broken.slots.begin(), s);
      break;
    }
  }
  CHECK_FALSE(check_schedule(broken, c.dfg, c.removal).empty());
  broken = c.schedule;
  std::swap(broken.slots.front(), broken.slots.back());
  CHECK_FALSE(check_schedule(broken, c.dfg, c.removal).empty());
}

TEST_CASE("lowering of a clock-disabled copy") {
  const auto c = test::compile_fixture("counter.v");
  int seen = 0;
  for (const auto& st : c.program.steps) {
    if (st.mode != SlotMode::ClockDisabledCopy) continue;
    ++seen;
    const int d = find_pin(st.kind, "D");
    CHECK(st.inputs[d].is_const());
    CHECK(st.inputs[d].value == false);
  }
  CHECK(seen == 2);
  CHECK(c.program.ff_cells.size() == 2);
}
