#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "nlc/graph.hpp"
#include "nlc/netlist.hpp"
#include "support.hpp"

using namespace nlc;

namespace {

Dfg dfg_of(const std::string& src, Diagnostics* d = nullptr) {
  return build_dfg(elaborate(parse_netlist(src)), d);
}

int vertex_named(const Dfg& g, const std::string& n) {
  for (int v = 0; v < g.size(); ++v)
    if (g.vertex(v).name == n) return v;
  FAIL("no vertex " << n);
  return -1;
}

std::set<std::pair<std::string, std::string>> edge_names(const Dfg& g) {
  std::set<std::pair<std::string, std::string>> s;
  for (const auto& e : g.edges()) s.emplace(g.vertex(e.from).name, g.vertex(e.to).name);
  return s;
}

std::vector<std::vector<int>> sorted_components(const SccPartition& p) {
  auto c = p.components;
  std::sort(c.begin(), c.end());
  return c;
}

}  // namespace

TEST_CASE("dfg of the xor-inv-and-or circuit") {
  const auto g = dfg_of(test::fixture_text("xor_inv_and_or.v"));
  // Three inputs, one output port, four gates.
  CHECK(g.size() == 8);
  CHECK(g.edges().size() == 8);
  const std::set<std::pair<std::string, std::string>> want{
      {"a", "g_xor"}, {"b", "g_xor"}, {"g_xor", "g_inv"}, {"g_inv", "g_and"},
      {"a", "g_and"}, {"g_and", "g_or"}, {"c", "g_or"}, {"g_or", "y"}};
  CHECK(edge_names(g) == want);
}

TEST_CASE("dfg of reg_and") {
  const auto g = dfg_of(test::fixture_text("reg_and.v"));
  std::set<std::string> names;
  for (const auto& v : g.vertices()) names.insert(v.name);
  CHECK(names == std::set<std::string>{"a", "b", "clk", "out", "fdr", "inv"});
  CHECK(edge_names(g) == std::set<std::pair<std::string, std::string>>{
                             {"a", "inv"}, {"inv", "fdr"}, {"b", "fdr"}, {"clk", "fdr"},
                             {"fdr", "out"}});
  int clocks = 0;
  for (const auto& e : g.edges()) clocks += e.clock;
  CHECK(clocks == 1);
  CHECK(g.vertex(vertex_named(g, "fdr")).kind == VertexKind::FlipFlop);
}

TEST_CASE("dfg of an empty module") {
  const auto g = dfg_of(test::fixture_text("empty.v"));
  CHECK(g.size() == 0);
  const auto p = dfg_of(test::fixture_text("passthru.v"));
  CHECK(p.size() == 2);
  CHECK(p.edges().size() == 4);
}

TEST_CASE("floating and multiply driven bits") {
  Diagnostics d;
  const auto g = dfg_of("module m(y); output y; wire w; BUF b (.I(w), .O(y)); endmodule", &d);
  CHECK_FALSE(d.empty());
  CHECK(g.edges().size() == 1);
  try {
    dfg_of("module m(a, y); input a; output y; BUF b0 (.I(a), .O(y)); INV b1 (.I(a), .O(y)); "
           "endmodule");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MultipleDrivers);
  }
}

TEST_CASE("tarjan examples") {
  const auto g = dfg_of(test::fixture_text("xor_inv_and_or.v"));
  const auto p = tarjan_scc(g);
  CHECK(p.components.size() == static_cast<std::size_t>(g.size()));

  Dfg two;
  two.add_vertex("u", VertexKind::Combinational);
  two.add_vertex("v", VertexKind::Combinational);
  two.add_edge({0, 1});
  two.add_edge({1, 0});
  const auto q = tarjan_scc(two);
  REQUIRE(q.components.size() == 1);
  CHECK(q.components[0] == std::vector<int>{0, 1});
}

TEST_CASE("tarjan matches mutual reachability") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const auto g = test::random_digraph(rng, n, 0.05 + 0.3 * (i % 4) / 3.0, 0.3);
    const auto p = tarjan_scc(g);
    REQUIRE(sorted_components(p) == test::brute_force_scc(g));
    // Reverse topological order of the condensation: no edge leads to a
    // later component.
    for (const auto& e : g.edges()) CHECK(p.component_of[e.from] >= p.component_of[e.to]);
  }
}

TEST_CASE("cycle through one flip-flop") {
  const auto g = dfg_of(R"(
module loop (input clk, input x, output q);
  wire d;
  AND2 g (.I0(q), .I1(x), .O(d));
  FD ff (.C(clk), .D(d), .Q(q));
endmodule)");
  const auto r = cycle_removal(g);
  const int ff = vertex_named(g, "ff"), gate = vertex_named(g, "g");
  REQUIRE(r.cuts.size() == 1);
  REQUIRE(r.cuts.count(ff));
  REQUIRE(r.cuts.at(ff).size() == 1);
  CHECK(r.cuts.at(ff)[0].from == gate);
  CHECK(r.graph.edges().size() == g.edges().size() - 1);
  CHECK(topological_order(r.graph).has_value());
}

TEST_CASE("flip-flop self loop is cut") {
  const auto g = dfg_of(R"(
module t (input clk, output q);
  FD ff (.C(clk), .D(q), .Q(q));
endmodule)");
  const auto r = cycle_removal(g);
  CHECK(r.cuts.size() == 1);
  CHECK(topological_order(r.graph).has_value());
}

TEST_CASE("combinational loops abort with a witness") {
  for (auto [file, cycle] :
       {std::pair<std::string, std::vector<std::string>>{"ring_osc.v", {"i0", "i1", "i2"}},
        {"self_loop.v", {"g"}}}) {
    try {
      cycle_removal(dfg_of(test::fixture_text(file)));
      FAIL("no error for " << file);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::CombinationalLoop);
      CHECK(e.witness() == cycle);
      CHECK(std::string(e.what()).find(cycle[0] + " -> ") != std::string::npos);
    }
  }
}

TEST_CASE("acyclic graph passes through") {
  const auto g = dfg_of(test::fixture_text("reg_and.v"));
  const auto r = cycle_removal(g);
  CHECK(r.cuts.empty());
  CHECK(r.graph.edges() == g.edges());
}

TEST_CASE("cycle removal properties on random digraphs") {
  std::mt19937_64 rng(17);
  int aborted = 0, kept = 0;
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + static_cast<int>(rng() % 30);
    const auto g = test::random_digraph(rng, n, 2.0 / n, 0.4);
    const bool expect_abort = test::has_ff_free_cycle(g);
    try {
      const auto r = cycle_removal(g);
      REQUIRE_FALSE(expect_abort);
      ++kept;
      REQUIRE(topological_order(r.graph).has_value());
      const auto scc = tarjan_scc(g);
      // Cut edges plus kept edges give back the original edge multiset.
      std::vector<Edge> all = r.graph.edges();
      for (const auto& [v, cut] : r.cuts) {
        CHECK(g.vertex(v).kind == VertexKind::FlipFlop);
        for (const auto& e : cut) {
          CHECK(e.to == v);
          CHECK_FALSE(e.clock);
          CHECK(scc.component_of[e.from] == scc.component_of[e.to]);
          all.push_back(e);
        }
      }
      auto key = [](const Edge& e) { return std::tuple(e.from, e.to, e.pin, e.bit, e.clock); };
      auto less = [&](const Edge& a, const Edge& b) { return key(a) < key(b); };
      auto orig = g.edges();
      std::sort(all.begin(), all.end(), less);
      std::sort(orig.begin(), orig.end(), less);
      CHECK(all == orig);
    } catch (const Error& e) {
      REQUIRE(e.code() == ErrorCode::CombinationalLoop);
      REQUIRE(expect_abort);
      ++aborted;
      // The witness is a real cycle.
      const auto& w = e.witness();
      REQUIRE_FALSE(w.empty());
      const auto names = edge_names(g);
      for (std::size_t k = 0; k < w.size(); ++k) {
        CHECK(names.count({w[k], w[(k + 1) % w.size()]}));
      }
    }
  }
  CHECK(aborted > 0);
  CHECK(kept > 0);
}

TEST_CASE("cycle removal is deterministic") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 50; ++i) {
    const auto g = test::random_digraph(rng, 12, 0.15, 0.6);
    if (test::has_ff_free_cycle(g)) continue;
    const auto a = cycle_removal(g), b = cycle_removal(g);
    CHECK(a.graph.edges() == b.graph.edges());
    CHECK(a.cuts == b.cuts);
  }
}

TEST_CASE("dot and scc text") {
  const auto g = dfg_of(test::fixture_text("reg_and.v"));
  const auto p = tarjan_scc(g);
  const auto dot = to_dot(g, &p);
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("fdr") != std::string::npos);
  CHECK(scc_text(g, p).find("inv") != std::string::npos);
}
