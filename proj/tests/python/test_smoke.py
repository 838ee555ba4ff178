import pytest

nlc = pytest.importorskip("nlc")

REG_AND = """
module reg_and (clk, a, b, out);
  input a, b, clk;
  output out;
  wire a_inv;
  FDR fdr (.C(clk), .D(b), .R(a_inv), .Q(out));
  INV inv (.I(a), .O(a_inv));
endmodule
"""

EQ1 = """
module eq1 (input a, input b, input c, output y);
  wire x, nx, t;
  OR2 g_or (.I0(t), .I1(c), .O(y));
  AND2 g_and (.I0(a), .I1(nx), .O(t));
  INV g_inv (.I(x), .O(nx));
  XOR2 g_xor (.I0(a), .I1(b), .O(x));
endmodule
"""


def test_reg_and_passes():
    d = nlc.compile(REG_AND)
    assert d.name == "reg_and"
    sim = d.compiled()
    assert sim.inputs == [("clk", 1), ("a", 1), ("b", 1)]
    assert sim.eval_pass([0, 1, 1]) == [0]
    assert sim.eval_pass([1, 1, 1]) == [0]
    assert sim.eval_pass([0, 1, 1]) == [1]


def test_schedule_order():
    assert nlc.compile(EQ1).schedule() == ["g_xor", "g_inv", "g_and", "g_or"]


def test_emitters():
    d = nlc.compile(REG_AND)
    assert "define void @reg_and(i1 %clk, i1 %a, i1 %b, i8* %out)" in d.ir()
    assert "void reg_and(uint8_t clk, uint8_t a, uint8_t b, uint8_t* out);" in d.header()
    assert "nlc_FDR" in d.c_source()


def test_benchmark_differential():
    assert "gcd" in nlc.benchmarks()
    d = nlc.compile(nlc.benchmark_netlist("gcd"))
    csv = nlc.benchmark_vectors("gcd", sample=50, seed=3)
    a = d.compiled().run(csv)
    b = d.event().run(csv)
    assert a["failed"] == 0 and a["passed"] == 50
    assert a["rows"] == b["rows"]


def test_errors():
    with pytest.raises(nlc.NetlistError, match="combinational loop"):
        nlc.compile("module r (output q); wire n1, n2;"
                    " INV i0 (.I(q), .O(n1)); INV i1 (.I(n1), .O(n2)); INV i2 (.I(n2), .O(q));"
                    " endmodule")
    with pytest.raises(nlc.NetlistError):
        nlc.compile("module m(a); inout a; endmodule")
