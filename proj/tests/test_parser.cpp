#include <doctest.h>

#include <random>

#include "nlc/bench.hpp"
#include "nlc/netlist.hpp"
#include "support.hpp"

using namespace nlc;

namespace {

ErrorCode error_of(const std::string& src, SourceLoc* loc = nullptr, std::string* msg = nullptr) {
  try {
    parse_netlist(src);
  } catch (const Error& e) {
    if (loc) *loc = e.loc();
    if (msg) *msg = e.what();
    return e.code();
  }
  FAIL("parsed without error: " << src);
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("reg_and module shape") {
  const auto n = parse_netlist(test::fixture_text("reg_and.v"));
  REQUIRE(n.modules.size() == 1);
  const auto& m = n.modules[0];
  CHECK(m.name == "reg_and");
  CHECK(n.top == "reg_and");
  REQUIRE(m.ports.size() == 4);
  CHECK(m.ports[0].name == "clk");
  CHECK(m.ports[3].name == "out");
  CHECK(m.ports[3].dir == Direction::Output);
  REQUIRE(m.nets.size() == 1);
  CHECK(m.nets[0].name == "a_inv");
  REQUIRE(m.cells.size() == 2);
  CHECK(m.cells[0].kind == "FDR");
  CHECK(m.cells[1].kind == "INV");
  CHECK(m.cells[0].loc.line == 5);
}

TEST_CASE("minimal module") {
  const auto n = parse_netlist("module m(a); input a; endmodule");
  REQUIRE(n.modules.size() == 1);
  CHECK(n.modules[0].ports.size() == 1);
  CHECK(n.modules[0].cells.empty());
}

TEST_CASE("ANSI ports, buses and parameters") {
  const auto n = parse_netlist(R"(
module t (input [3:0] a, input b, output [0:1] y);
  wire \odd.name ;
  LUT2 #(.INIT(4'h8)) l0 (.I0(a[0]), .I1(b), .O(y[0]));
  LUT1 l1 (.I0(\odd.name ), .O(y[1]));
  defparam l1.INIT = 2'b01;
  BUF b0 (.I(a[3]), .O(\odd.name ));
endmodule)");
  const auto& m = n.modules[0];
  CHECK(m.ports[0].width() == 4);
  CHECK(m.ports[2].range == BitRange{0, 1});
  CHECK(m.cells[0].params.at("INIT") == 8);
  CHECK(m.cells[1].params.at("INIT") == 1);
  CHECK(m.find_net("odd.name") != nullptr);
}

TEST_CASE("parse errors carry positions") {
  SourceLoc loc;
  std::string msg;
  CHECK(error_of("module m(a);\n  input a;\n  BUF b (.I(w), .O(a));\nendmodule", &loc, &msg) ==
        ErrorCode::Undeclared);
  CHECK(loc.line == 3);
  CHECK(msg.find("'w'") != std::string::npos);

  CHECK(error_of("module m(a) input a; endmodule", &loc) == ErrorCode::Syntax);
  CHECK(loc.valid());
  CHECK(error_of("module m(a); inout a; endmodule") == ErrorCode::Inout);
  CHECK(error_of("module m(a); input a; wire w; wire w; endmodule") == ErrorCode::Duplicate);
  // Redeclaring a port as a wire is legal.
  CHECK_NOTHROW(parse_netlist("module m(a); input a; wire a; endmodule"));
  CHECK(error_of("module m(a, y); input [3:0] a; output y; BUF b (.I(a[4]), .O(y)); endmodule") ==
        ErrorCode::OutOfRange);
  CHECK(error_of("module m(a); input a; always @(a) begin end endmodule") == ErrorCode::Unsupported);
  CHECK(error_of("module m(a, y); input a; output y; DSP48E1 d (.A(a), .P(y)); endmodule") ==
        ErrorCode::Unsupported);
  CHECK(error_of("module m(a, y); input a; output y; BUF b (.X(a), .O(y)); endmodule", &loc, &msg) ==
        ErrorCode::Undeclared);
  CHECK(msg.find("'X'") != std::string::npos);
}

TEST_CASE("delays are ignored with a warning") {
  Diagnostics d;
  const auto n = parse_netlist("module m(a, y); input a; output y; BUF #5 b (.I(a), .O(y)); endmodule",
                               {}, &d);
  CHECK(n.modules[0].cells.size() == 1);
  CHECK_FALSE(d.empty());
}

TEST_CASE("bit selects are range checked") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const int msb = static_cast<int>(rng() % 8), lsb = static_cast<int>(rng() % 8);
    const int idx = static_cast<int>(rng() % 12) - 2;
    const std::string src = "module m(a, y); input [" + std::to_string(msb) + ":" +
                            std::to_string(lsb) + "] a; output y; BUF b (.I(a[" +
                            std::to_string(idx) + "]), .O(y)); endmodule";
    const BitRange r{msb, lsb};
    if (idx >= 0 && r.contains(idx)) {
      const auto n = parse_netlist(src);
      const auto& ref = n.modules[0].cells[0].conns[0].parts[0];
      REQUIRE(ref.select.has_value());
      CHECK(r.contains(ref.select->msb));
      CHECK(r.contains(ref.select->lsb));
    } else {
      CHECK(error_of(src) != ErrorCode::Io);
    }
  }
}

TEST_CASE("print and reparse round trip") {
  std::vector<std::string> sources;
  for (const auto* f : {"reg_and.v", "counter.v", "xor_inv_and_or.v", "passthru.v", "empty.v"}) {
    sources.push_back(test::fixture_text(f));
  }
  for (const auto& b : benchmarks()) sources.push_back(b.netlist());
  for (std::uint64_t s = 0; s < 20; ++s) {
    RandomNetlistOptions o;
    o.feedback = s % 2;
    sources.push_back(random_netlist(s, o));
  }
  for (const auto& src : sources) {
    const auto a = parse_netlist(src);
    const auto text = print_netlist(a);
    const auto b = parse_netlist(text);
    CHECK(same_structure(a, b));
    CHECK(print_netlist(b) == text);
  }
}

TEST_CASE("top inference") {
  const auto n = parse_netlist(test::fixture_text("counter.v"));
  CHECK(n.top == "counter");
  ParseOptions o;
  o.top = "half_add";
  CHECK(parse_netlist(test::fixture_text("counter.v"), o).top == "half_add");
  o.top = "nope";
  CHECK_THROWS_AS(parse_netlist(test::fixture_text("counter.v"), o), Error);
}

TEST_CASE("elaborate flat design is the identity") {
  const auto n = parse_netlist(test::fixture_text("reg_and.v"));
  const auto d = elaborate(n);
  CHECK(d.name == "reg_and");
  REQUIRE(d.cells.size() == 2);
  CHECK(d.cells[0].name == "fdr");
  CHECK(d.cells[0].kind == PrimitiveKind::FDR);
  CHECK(d.cells[1].name == "inv");
  CHECK(d.ports.size() == 4);
  CHECK(d.inputs().size() == 3);
  CHECK(d.outputs().size() == 1);
}

TEST_CASE("elaborate two instances of one module") {
  const auto n = parse_netlist(R"(
module B (input i, output o);
  INV g (.I(i), .O(o));
endmodule
module A (input x, output y);
  wire m;
  B u0 (.i(x), .o(m));
  B u1 (.i(m), .o(y));
endmodule)");
  const auto d = elaborate(n, "A");
  REQUIRE(d.cells.size() == 2);
  CHECK(d.cells[0].name == "u0.g");
  CHECK(d.cells[1].name == "u1.g");
}

TEST_CASE("elaboration preserves the primitive count") {
  const auto d = elaborate(parse_netlist(test::fixture_text("counter.v")));
  CHECK(d.cells.size() == 5);
}

TEST_CASE("recursive and unresolved instantiation") {
  try {
    elaborate(parse_netlist("module r(a); input a; r self (.a(a)); endmodule"));
    FAIL("accepted recursion");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Recursion);
  }
  try {
    elaborate(parse_netlist("module r(a); input a; nothere u (.a(a)); endmodule"));
    FAIL("accepted unknown module");
  } catch (const Error& e) {
    CHECK((e.code() == ErrorCode::Unresolved || e.code() == ErrorCode::UnknownPrimitive));
  }
}
