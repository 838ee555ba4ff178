#include <doctest.h>

#include <regex>

#include "nlc/bench.hpp"
#include "nlc/codegen.hpp"
#include "nlc/pipeline.hpp"
#include "support.hpp"

using namespace nlc;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> called(const std::string& ir) {
  std::vector<std::string> out;
  const std::regex call(R"(call i1 @nlc\.([A-Za-z0-9.]+)\()");
  for (auto it = std::sregex_iterator(ir.begin(), ir.end(), call); it != std::sregex_iterator();
       ++it)
    out.push_back((*it)[1]);
  return out;
}

std::string top_define(const std::string& ir) {
  const std::regex def(R"(define void @[^\n]*)");
  std::smatch m;
  REQUIRE(std::regex_search(ir, m, def));
  return m.str();
}

void check_golden(const std::string& name, const std::string& text) {
  const auto path = test::golden(name);
  if (std::getenv("NLC_UPDATE_GOLDEN")) test::write_text(path, text);
  CHECK_MESSAGE(test::read_text(path) == text, "golden mismatch: " << name);
}

}  // namespace

TEST_CASE("mangling") {
  CHECK(mangle("u0.g") == "u0__g");
  CHECK(mangle("a$b") == "a_x24b");
  CHECK(mangle("0abc") == "n0abc");
  CHECK(mangle("plain_name") == "plain_name");
  CHECK(mangle("odd[3]") == "odd_x5B3_x5D");
}

TEST_CASE("symbol collisions are resolved deterministically") {
  const auto c = compile_source(R"(
module m (input \a.b , input a__b , input int, output nlc_x);
  AND3 g (.I0(\a.b ), .I1(a__b), .I2(int), .O(nlc_x));
endmodule)");
  const auto s = make_symbols(c.program, c.design);
  REQUIRE(s.ports.size() == 4);
  CHECK(s.ports[0] == "a__b");
  CHECK(s.ports[1] == "a__b_2");
  CHECK(s.ports[2] == "int_");
  CHECK(s.ports[3] == "nlc_x_");
}

TEST_CASE("C types") {
  CHECK(c_type(1) == "uint8_t");
  CHECK(c_type(8) == "uint8_t");
  CHECK(c_type(9) == "uint16_t");
  CHECK(c_type(32) == "uint32_t");
  CHECK(c_type(43) == "uint64_t");
  CHECK(c_type(64) == "uint64_t");
  try {
    c_type(65, "wide");
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Width);
    CHECK(std::string(e.what()).find("wide") != std::string::npos);
  }
}

TEST_CASE("golden outputs") {
  const auto r = test::compile_fixture("reg_and.v");
  check_golden("reg_and.ll", emit_ir(r.program, r.design));
  check_golden("reg_and.h", emit_header(r.program, r.design));
  check_golden("reg_and.c", emit_c_source(r.program, r.design));
  const auto x = test::compile_fixture("xor_inv_and_or.v");
  check_golden("xor_inv_and_or.ll", emit_ir(x.program, x.design));
}

TEST_CASE("output is deterministic and newline terminated") {
  for (const auto& b : benchmarks()) {
    const auto c1 = compile_source(b.netlist());
    const auto c2 = compile_source(b.netlist());
    const auto ir = emit_ir(c1.program, c1.design);
    CHECK(ir == emit_ir(c2.program, c2.design));
    CHECK(emit_header(c1.program, c1.design) == emit_header(c2.program, c2.design));
    CHECK(emit_c_source(c1.program, c1.design) == emit_c_source(c2.program, c2.design));
    CHECK(ir.back() == '\n');
  }
}

TEST_CASE("call order follows the schedule") {
  const auto r = test::compile_fixture("reg_and.v");
  CHECK(called(emit_ir(r.program, r.design)) == std::vector<std::string>{"INV", "FDR"});
  const auto x = test::compile_fixture("xor_inv_and_or.v");
  CHECK(called(emit_ir(x.program, x.design)) ==
        std::vector<std::string>{"XOR2", "INV", "AND2", "OR2"});
  const auto p = test::compile_fixture("passthru.v");
  CHECK(called(emit_ir(p.program, p.design)).empty());
}

TEST_CASE("parameter order equals port order") {
  const auto r = test::compile_fixture("reg_and.v");
  CHECK(top_define(emit_ir(r.program, r.design)) ==
        "define void @reg_and(i1 %clk, i1 %a, i1 %b, i8* %out) {");
  CHECK(emit_header(r.program, r.design).find(
            "void reg_and(uint8_t clk, uint8_t a, uint8_t b, uint8_t* out);") !=
        std::string::npos);
  const auto c = compile_source(R"(
module ex (input [31:0] a, output [31:0] c, input [31:0] b);
  assign c = a;
endmodule)");
  CHECK(emit_header(c.program, c.design).find("void ex(uint32_t a, uint32_t* c, uint32_t b);") !=
        std::string::npos);
  CHECK(top_define(emit_ir(c.program, c.design)) ==
        "define void @ex(i32 %a, i32* %c, i32 %b) {");
}

TEST_CASE("primitive functions") {
  const auto lut = compile_source(R"(
module l (input a, input b, output y, output z);
  LUT2 #(.INIT(4'h8)) g (.I0(a), .I1(b), .O(y));
  CONST0 k (.O(z));
endmodule)");
  const auto fns = emit_primitive_fns(lut.program);
  CHECK(fns.find("@nlc.CONST0") != std::string::npos);
  CHECK(fns.find("ret i1 false") != std::string::npos);
  const auto pos = fns.find("@nlc.LUT2.8");
  REQUIRE(pos != std::string::npos);
  const auto body = fns.substr(pos, fns.find("}", pos) - pos);
  // One product term: a single AND of the two inputs, no OR.
  CHECK(body.find(" and i1 ") != std::string::npos);
  CHECK(body.find(" or i1 ") == std::string::npos);

  const auto r = test::compile_fixture("reg_and.v");
  CHECK(emit_primitive_fns(r.program).find("store i1 %C, i1* %gvclk") != std::string::npos);
}

TEST_CASE("header widths") {
  const auto w43 = test::compile_fixture("wide43.v");
  CHECK(emit_header(w43.program, w43.design).find("uint64_t a, uint64_t* y") != std::string::npos);
  const auto w65 = test::compile_fixture("wide65.v");
  try {
    emit_header(w65.program, w65.design);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Width);
    CHECK(std::string(e.what()).find("'a'") != std::string::npos);
  }
  CHECK(emit_ir(w65.program, w65.design).find("i65 %a") != std::string::npos);
}

TEST_CASE("generated C runs like the simulator") {
  if (test::c_compiler().empty()) {
    MESSAGE("no C compiler, skipped");
    return;
  }
  SUBCASE("reg_and") {
    const auto c = test::compile_fixture("reg_and.v");
    const auto dir = test::scratch_dir("reg_and");
    std::string log;
    const auto exe = test::build_c_model(c, dir, &log);
    REQUIRE_MESSAGE(!exe.empty(), log);
    const auto vs = parse_vectors("a,b,clk\n1,1,0\n1,1,1\n1,1,0\n");
    CHECK(test::run_c_model(exe, c.program, vs) ==
          std::vector<std::vector<std::uint64_t>>{{0}, {0}, {1}});
  }
  SUBCASE("xor-inv-and-or") {
    const auto c = test::compile_fixture("xor_inv_and_or.v");
    const auto exe = test::build_c_model(c, test::scratch_dir("xor_inv_and_or"));
    REQUIRE(!exe.empty());
    VectorSet vs;
    vs.inputs = {"a", "b", "c"};
    for (std::uint64_t v = 0; v < 8; ++v) vs.rows.push_back({{v & 1, (v >> 1) & 1, v >> 2}, {}});
    const auto rows = test::run_c_model(exe, c.program, vs);
    REQUIRE(rows.size() == 8);
    for (std::uint64_t v = 0; v < 8; ++v) CHECK(rows[v][0] == ((v & (v >> 1) & 1) | (v >> 2)));
  }
  SUBCASE("empty module") {
    const auto c = test::compile_fixture("empty.v");
    std::string log;
    CHECK_MESSAGE(!test::build_c_model(c, test::scratch_dir("empty"), &log).empty(), log);
  }
  SUBCASE("LUT products") {
    const auto* b = find_benchmark("mod3");
    const auto c = compile_source(b->netlist());
    std::string log;
    const auto exe = test::build_c_model(c, test::scratch_dir("mod3"), &log);
    REQUIRE_MESSAGE(!exe.empty(), log);
    CompiledSimulator s(c.program);
    const auto vs = bench_vectors(*b, 0, 1);
    CHECK(test::run_c_model(exe, c.program, vs) == run_vectors(s, vs).rows);
  }
  SUBCASE("counter") {
    const auto c = test::compile_fixture("counter.v");
    const auto exe = test::build_c_model(c, test::scratch_dir("counter"));
    REQUIRE(!exe.empty());
    CompiledSimulator s(c.program);
    const auto vs = random_vectors(s.inputs(), 200, 3);
    CHECK(test::run_c_model(exe, c.program, vs) == run_vectors(s, vs).rows);
  }
}

TEST_CASE("IR assembles with clang when available") {
  if (test::run_command("command -v clang >/dev/null 2>&1") != 0) {
    MESSAGE("clang not found, skipped");
    return;
  }
  const auto dir = test::scratch_dir("ir");
  for (const auto* f : {"reg_and.v", "counter.v", "xor_inv_and_or.v", "wide65.v"}) {
    const auto c = test::compile_fixture(f);
    const auto ll = dir / (std::string(f) + ".ll");
    test::write_text(ll, emit_ir(c.program, c.design));
    std::string log;
    CHECK_MESSAGE(test::run_command("clang -c -Wno-override-module -o " +
                                        (dir / "x.o").string() + " " + ll.string() + " 2>&1",
                                    &log) == 0,
                  f << ": " << log);
  }
}
