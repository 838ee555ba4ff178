#include "nlc/bench.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <deque>
#include <random>
#include <set>
#include <sstream>

#include "nlc/diagnostics.hpp"

namespace nlc {

// ---------------------------------------------------------------------------
// Builder

NetlistBuilder::NetlistBuilder(std::string module, std::string prefix)
    : module_(std::move(module)), prefix_(std::move(prefix)) {}

void NetlistBuilder::input(const std::string& name, int width) {
  ports_.emplace_back(name, width);
  decls_.push_back("  input " + (width > 1 ? "[" + std::to_string(width - 1) + ":0] " : "") +
                   name + ";");
}

void NetlistBuilder::output(const std::string& name, int width) {
  ports_.emplace_back(name, width);
  decls_.push_back("  output " + (width > 1 ? "[" + std::to_string(width - 1) + ":0] " : "") +
                   name + ";");
}

std::vector<std::string> NetlistBuilder::bus(const std::string& name, int width) {
  if (width == 1) return {name};
  std::vector<std::string> out;
  for (int i = 0; i < width; ++i) out.push_back(name + "[" + std::to_string(i) + "]");
  return out;
}

std::string NetlistBuilder::wire() {
  std::string name = "n" + std::to_string(wires_++);
  decls_.push_back("  wire " + name + ";");
  return name;
}

std::string NetlistBuilder::cell(PrimitiveKind kind, const std::map<std::string, std::string>& pins,
                                 std::optional<std::string> out,
                                 std::optional<std::uint64_t> init) {
  const std::string o = out ? *out : wire();
  const auto& ki = info(kind);
  std::ostringstream os;
  os << "  " << ki.name;
  if (init) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%llX", static_cast<unsigned long long>(*init));
    os << " #(.INIT(" << (1u << ki.lut_inputs) << "'h" << buf << "))";
  }
  os << " " << prefix_ << cells_++ << " (";
  bool first = true;
  for (const auto& pin : ki.pins) {
    std::string sig;
    if (pin.dir == PinDir::Out) {
      sig = o;
    } else {
      auto it = pins.find(std::string(pin.name));
      if (it == pins.end()) continue;
      sig = it->second;
    }
    os << (first ? "" : ", ") << "." << pin.name << "(" << sig << ")";
    first = false;
  }
  for (const auto& [name, sig] : pins) {
    if (find_pin(kind, name) < 0) {
      throw Error(ErrorCode::MissingPin, std::string(ki.name) + " has no pin " + name);
    }
  }
  os << ");";
  body_.push_back(os.str());
  return o;
}

std::uint64_t lut_mask(int k, const std::function<bool(unsigned)>& f) {
  std::uint64_t mask = 0;
  for (unsigned m = 0; m < (1u << k); ++m) {
    if (f(m)) mask |= std::uint64_t{1} << m;
  }
  return mask;
}

std::string NetlistBuilder::lut(const std::vector<std::string>& ins,
                                const std::function<bool(unsigned)>& f,
                                std::optional<std::string> out) {
  const int k = static_cast<int>(ins.size());
  const auto kind = find_kind("LUT" + std::to_string(k));
  if (!kind) throw Error(ErrorCode::Arity, "LUT with " + std::to_string(k) + " inputs");
  std::map<std::string, std::string> pins;
  for (int i = 0; i < k; ++i) pins["I" + std::to_string(i)] = ins[i];
  return cell(*kind, pins, std::move(out), lut_mask(k, f));
}

void NetlistBuilder::assign(const std::string& lhs, const std::string& rhs) {
  body_.push_back("  assign " + lhs + " = " + rhs + ";");
}

std::string NetlistBuilder::str() const {
  std::ostringstream os;
  os << "module " << module_ << " (";
  for (std::size_t i = 0; i < ports_.size(); ++i) os << (i ? ", " : "") << ports_[i].first;
  os << ");\n";
  for (const auto& d : decls_) os << d << "\n";
  for (const auto& b : body_) os << b << "\n";
  os << "endmodule\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Arithmetic building blocks

namespace {

using Bits = std::vector<std::string>;
const std::string kZero = "1'b0";
const std::string kOne = "1'b1";

bool bit(unsigned m, int i) { return (m >> i) & 1; }

struct Sum {
  Bits bits;
  std::string carry;
};

/// a + b + cin; `dest` names the sum bits when given.
Sum add(NetlistBuilder& nb, const Bits& a, const Bits& b, std::string cin, const Bits& dest = {}) {
  Sum s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Bits in{a[i], b[i], cin};
    s.bits.push_back(nb.lut(in, [](unsigned m) { return bit(m, 0) ^ bit(m, 1) ^ bit(m, 2); },
                            dest.empty() ? std::nullopt : std::optional(dest[i])));
    cin = nb.lut(in, [](unsigned m) { return std::popcount(m) >= 2; });
  }
  s.carry = cin;
  return s;
}

/// a - b; carry is 1 when a >= b.
Sum sub(NetlistBuilder& nb, const Bits& a, const Bits& b) {
  Sum s;
  std::string c = kOne;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Bits in{a[i], b[i], c};
    s.bits.push_back(nb.lut(in, [](unsigned m) { return bit(m, 0) ^ !bit(m, 1) ^ bit(m, 2); }));
    c = nb.lut(in, [](unsigned m) { return bit(m, 0) + !bit(m, 1) + bit(m, 2) >= 2; });
  }
  s.carry = c;
  return s;
}

std::string all_zero(NetlistBuilder& nb, Bits bits) {
  auto none = [](unsigned m) { return m == 0; };
  auto all = [](int k) { return [k](unsigned m) { return m == (1u << k) - 1; }; };
  Bits level;
  for (std::size_t i = 0; i < bits.size(); i += 6) {
    Bits chunk(bits.begin() + i, bits.begin() + std::min(bits.size(), i + 6));
    level.push_back(nb.lut(chunk, none));
  }
  while (level.size() > 1) {
    Bits next;
    for (std::size_t i = 0; i < level.size(); i += 6) {
      Bits chunk(level.begin() + i, level.begin() + std::min(level.size(), i + 6));
      next.push_back(nb.lut(chunk, all(static_cast<int>(chunk.size()))));
    }
    level = std::move(next);
  }
  return level[0];
}

// ---------------------------------------------------------------------------
// Netlists

const char* kAndReg =
    "module reg_and (clk, a, b, out);\n"
    "  input a, b, clk;\n"
    "  output out;\n"
    "  wire a_inv;\n"
    "  FDR fdr (.C(clk), .D(b), .R(a_inv), .Q(out));\n"
    "  INV inv (.I(a), .O(a_inv));\n"
    "endmodule\n";

std::string adder_netlist() {
  NetlistBuilder nb("adder");
  nb.input("a", 16);
  nb.input("b", 16);
  nb.input("cin");
  nb.output("sum", 16);
  nb.output("cout");
  const auto s = add(nb, nb.bus("a", 16), nb.bus("b", 16), "cin", nb.bus("sum", 16));
  nb.assign("cout", s.carry);
  return nb.str();
}

std::string bcdadder_netlist() {
  NetlistBuilder nb("bcdadder");
  nb.input("a", 4);
  nb.input("b", 4);
  nb.input("cin");
  nb.output("sum", 4);
  nb.output("cout");
  const auto s = add(nb, nb.bus("a", 4), nb.bus("b", 4), "cin");
  // s > 9 with s = {carry, s3..s0}
  const auto z = nb.lut({s.carry, s.bits[3], s.bits[2], s.bits[1]}, [](unsigned m) {
    return bit(m, 0) || (bit(m, 1) && (bit(m, 2) || bit(m, 3)));
  });
  nb.cell(PrimitiveKind::BUF, {{"I", z}}, "cout");
  add(nb, s.bits, {kZero, z, z, kZero}, kZero, nb.bus("sum", 4));
  return nb.str();
}

std::string divide_netlist() {
  NetlistBuilder nb("divide");
  nb.input("a", 8);
  nb.input("b", 8);
  nb.output("q", 8);
  nb.output("r", 8);
  const auto a = nb.bus("a", 8);
  Bits b = nb.bus("b", 8);
  b.push_back(kZero);
  Bits rem(8, kZero);
  for (int i = 7; i >= 0; --i) {
    Bits trial{a[i]};
    trial.insert(trial.end(), rem.begin(), rem.end());
    const auto d = sub(nb, trial, b);
    const std::string q = "q[" + std::to_string(i) + "]";
    nb.cell(PrimitiveKind::BUF, {{"I", d.carry}}, q);
    Bits next;
    for (int k = 0; k < 8; ++k) {
      std::optional<std::string> dest;
      if (i == 0) dest = "r[" + std::to_string(k) + "]";
      // sel ? diff : trial
      next.push_back(nb.lut({trial[k], d.bits[k], d.carry},
                            [](unsigned m) { return bit(m, 2) ? bit(m, 1) : bit(m, 0); }, dest));
    }
    rem = std::move(next);
  }
  return nb.str();
}

std::string mod3_netlist() {
  NetlistBuilder nb("mod3");
  nb.input("x", 8);
  nb.output("r", 3);
  std::string s0 = kZero, s1 = kZero;
  auto next = [](unsigned m) {
    const unsigned s = (bit(m, 0) + 2 * bit(m, 1)) % 3;
    return (2 * s + bit(m, 2)) % 3;
  };
  for (int i = 7; i >= 0; --i) {
    const Bits in{s0, s1, "x[" + std::to_string(i) + "]"};
    const bool last = i == 0;
    const auto n0 = nb.lut(in, [&](unsigned m) { return next(m) & 1; },
                           last ? std::optional<std::string>("r[0]") : std::nullopt);
    const auto n1 = nb.lut(in, [&](unsigned m) { return (next(m) >> 1) & 1; },
                           last ? std::optional<std::string>("r[1]") : std::nullopt);
    s0 = n0;
    s1 = n1;
  }
  nb.assign("r[2]", kZero);
  return nb.str();
}

constexpr int kPopWidth = 20;

std::string popcount_netlist() {
  NetlistBuilder nb("popcount");
  nb.input("x", kPopWidth);
  nb.output("c", 5);
  std::vector<std::deque<std::string>> cols(8);
  for (const auto& b : nb.bus("x", kPopWidth)) cols[0].push_back(b);
  auto parity = [](unsigned m) { return std::popcount(m) & 1; };
  for (int k = 0; k < 5; ++k) {
    while (cols[k].size() > 1) {
      Bits in;
      const std::size_t take = cols[k].size() >= 3 ? 3 : 2;
      for (std::size_t i = 0; i < take; ++i) {
        in.push_back(cols[k].front());
        cols[k].pop_front();
      }
      cols[k].push_back(nb.lut(in, parity));
      cols[k + 1].push_back(nb.lut(in, [](unsigned m) { return std::popcount(m) >= 2; }));
    }
    nb.assign("c[" + std::to_string(k) + "]", cols[k].empty() ? kZero : cols[k].front());
  }
  return nb.str();
}

std::string addertree_netlist() {
  NetlistBuilder nb("addertree");
  nb.input("clk");
  nb.input("en");
  nb.input("rst");
  for (const char* p : {"a", "b", "c", "d", "e"}) nb.input(p, 16);
  nb.output("out", 16);
  auto reg = [&](const Bits& d, const Bits& dest = {}) {
    Bits q;
    for (std::size_t i = 0; i < d.size(); ++i) {
      q.push_back(nb.cell(PrimitiveKind::FDCE,
                          {{"C", "clk"}, {"CE", "en"}, {"CLR", "rst"}, {"D", d[i]}},
                          dest.empty() ? std::nullopt : std::optional(dest[i])));
    }
    return q;
  };
  const auto ab = reg(add(nb, nb.bus("a", 16), nb.bus("b", 16), kZero).bits);
  const auto cd = reg(add(nb, nb.bus("c", 16), nb.bus("d", 16), kZero).bits);
  const auto e1 = reg(nb.bus("e", 16));
  const auto abcd = reg(add(nb, ab, cd, kZero).bits);
  const auto e2 = reg(e1);
  reg(add(nb, abcd, e2, kZero).bits, nb.bus("out", 16));
  return nb.str();
}

constexpr int kGcdWidth = 9;

std::string gcd_netlist() {
  NetlistBuilder nb("gcd");
  nb.input("clk");
  nb.input("start");
  nb.input("a", kGcdWidth);
  nb.input("b", kGcdWidth);
  nb.output("result", kGcdWidth);
  nb.output("done");
  Bits x, y, dx, dy;
  for (int i = 0; i < kGcdWidth; ++i) {
    x.push_back(nb.wire());
    y.push_back(nb.wire());
    dx.push_back(nb.wire());
    dy.push_back(nb.wire());
  }
  const auto xy = sub(nb, x, y);
  const auto yx = sub(nb, y, x);
  const auto zx = all_zero(nb, x);
  const auto zy = all_zero(nb, y);
  // done = x == y | x == 0 | y == 0
  nb.lut({xy.carry, yx.carry, zx, zy},
         [](unsigned m) { return (bit(m, 0) && bit(m, 1)) || bit(m, 2) || bit(m, 3); }, "done");
  const auto ce = nb.lut({"start", "done"}, [](unsigned m) { return bit(m, 0) || !bit(m, 1); });
  const auto a = nb.bus("a", kGcdWidth), b = nb.bus("b", kGcdWidth);
  for (int i = 0; i < kGcdWidth; ++i) {
    // I0 load, I1 keep, I2 difference, I3 x > y, I4 start
    nb.lut({a[i], x[i], xy.bits[i], yx.carry, "start"},
           [](unsigned m) { return bit(m, 4) ? bit(m, 0) : !bit(m, 3) ? bit(m, 2) : bit(m, 1); },
           dx[i]);
    nb.lut({b[i], y[i], yx.bits[i], yx.carry, "start"},
           [](unsigned m) { return bit(m, 4) ? bit(m, 0) : !bit(m, 3) ? bit(m, 1) : bit(m, 2); },
           dy[i]);
    nb.cell(PrimitiveKind::FDRE, {{"C", "clk"}, {"CE", ce}, {"D", dx[i]}}, x[i]);
    nb.cell(PrimitiveKind::FDRE, {{"C", "clk"}, {"CE", ce}, {"D", dy[i]}}, y[i]);
    nb.lut({x[i], y[i], zx}, [](unsigned m) { return bit(m, 2) ? bit(m, 1) : bit(m, 0); },
           "result[" + std::to_string(i) + "]");
  }
  return nb.str();
}

// ---------------------------------------------------------------------------
// Case generators

using Row = VectorSet::Row;

Row row(std::vector<std::uint64_t> in, std::vector<std::optional<std::uint64_t>> expect) {
  return {std::move(in), std::move(expect)};
}

bool parity(std::uint64_t v) { return std::popcount(v) & 1; }

std::uint64_t spread16(std::uint64_t i, std::uint64_t mul) { return (i * mul) & 0xFFFF; }

void adder_rows(std::uint64_t id, bool, std::vector<Row>& out) {
  const auto a = spread16(id / 1536, 0x9E37), b = spread16(id % 1536, 0x7F4B);
  const bool cin = parity(a + b);
  const auto r = ref_adder(a, b, cin);
  out.push_back(row({a, b, cin}, {r & 0xFFFF, r >> 16}));
}

void bcdadder_rows(std::uint64_t id, bool, std::vector<Row>& out) {
  const unsigned a = (id >> 4) & 15, b = id & 15;
  // the 256-case grid ties cin to the parity of a + b; the full space frees it
  const bool c = parity(a + b) != (id >= 256);
  unsigned sum;
  bool cout;
  ref_bcdadd(a, b, c, sum, cout);
  out.push_back(row({a, b, c}, {sum, cout}));
}

void divide_rows(std::uint64_t id, bool, std::vector<Row>& out) {
  const unsigned a = id >> 8, b = id & 255;
  unsigned q, r;
  ref_divide(a, b, q, r);
  out.push_back(row({a, b}, {q, r}));
}

void mod3_rows(std::uint64_t id, bool, std::vector<Row>& out) {
  out.push_back(row({id}, {ref_mod3(static_cast<unsigned>(id))}));
}

void popcount_rows(std::uint64_t id, bool, std::vector<Row>& out) {
  out.push_back(row({id}, {ref_popcount(id)}));
}

void andreg_rows(std::uint64_t id, bool, std::vector<Row>& out) {
  const bool c = (id >> 2) & 1, a = (id >> 1) & 1, b = id & 1;
  const std::optional<std::uint64_t> none;
  // clk, a, b ; clear with a = 0, then one optional edge
  out.push_back(row({0, 0, 0}, {none}));
  out.push_back(row({1, 0, 0}, {none}));
  out.push_back(row({0, a, b}, {none}));
  out.push_back(row({c, a, b}, {none}));
  out.push_back(row({0, a, b}, {std::uint64_t(c && a && b)}));
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

void addertree_rows(std::uint64_t id, bool, std::vector<Row>& out) {
  std::uint64_t v[5];
  std::uint64_t h = splitmix(id);
  for (auto& x : v) {
    x = h & 0xFFFF;
    h = splitmix(h);
  }
  const std::uint64_t expect = (v[0] + v[1] + v[2] + v[3] + v[4]) & 0xFFFF;
  const std::optional<std::uint64_t> none;
  // clk, en, rst, a..e
  auto r = [&](std::uint64_t clk, std::uint64_t en, std::uint64_t rst) {
    return std::vector<std::uint64_t>{clk, en, rst, v[0], v[1], v[2], v[3], v[4]};
  };
  if (id % 2 == 0) out.push_back(row(r(0, 1, 1), {none}));
  for (int edge = 0; edge < 3; ++edge) {
    out.push_back(row(r(0, 1, 0), {none}));
    out.push_back(row(r(1, 1, 0), {none}));
    if (id % 3 == 0 && edge == 1) {
      out.push_back(row(r(0, 0, 0), {none}));
      out.push_back(row(r(1, 0, 0), {none}));
    }
  }
  out.push_back(row(r(0, 1, 0), {expect}));
}

void gcd_rows(std::uint64_t id, bool, std::vector<Row>& out) {
  const unsigned a = static_cast<unsigned>(id >> kGcdWidth);
  const unsigned b = static_cast<unsigned>(id & ((1u << kGcdWidth) - 1));
  unsigned g, cycles;
  ref_gcd(a, b, g, cycles);
  const std::optional<std::uint64_t> none;
  // clk, start, a, b
  out.push_back(row({0, 1, a, b}, {none, none}));
  out.push_back(row({1, 1, a, b}, {none, none}));
  for (unsigned i = 0; i < cycles; ++i) {
    out.push_back(row({0, 0, a, b}, {none, none}));
    out.push_back(row({1, 0, a, b}, {none, none}));
  }
  out.push_back(row({0, 0, a, b}, {g, 1}));
}

}  // namespace

// ---------------------------------------------------------------------------
// Reference models

std::uint64_t ref_adder(std::uint64_t a, std::uint64_t b, bool cin) {
  return (a + b + cin) & 0x1FFFF;
}

void ref_bcdadd(unsigned a, unsigned b, bool cin, unsigned& sum, bool& cout) {
  const unsigned s = a + b + cin;
  cout = s > 9;
  sum = cout ? (s + 6) & 0xF : s;
}

void ref_divide(unsigned a, unsigned b, unsigned& q, unsigned& r) {
  unsigned rem = 0;
  q = 0;
  for (int i = 7; i >= 0; --i) {
    const unsigned trial = (rem << 1) | ((a >> i) & 1);
    if (trial >= b) {
      q |= 1u << i;
      rem = (trial - b) & 0xFF;
    } else {
      rem = trial & 0xFF;
    }
  }
  r = rem;
}

unsigned ref_mod3(unsigned x) { return x % 3; }

unsigned ref_popcount(std::uint64_t x) { return static_cast<unsigned>(std::popcount(x)); }

void ref_gcd(unsigned a, unsigned b, unsigned& result, unsigned& cycles) {
  cycles = 0;
  while (!(a == b || a == 0 || b == 0)) {
    if (a > b) {
      a -= b;
    } else {
      b -= a;
    }
    ++cycles;
  }
  result = a == 0 ? b : a;
}

// ---------------------------------------------------------------------------
// Registry

const std::vector<Benchmark>& benchmarks() {
  static const std::vector<Benchmark> list = [] {
    std::vector<Benchmark> v;
    v.push_back({"adder", false, "adder", {"a", "b", "cin"}, {"sum", "cout"}, 1536 * 1536,
                 1536 * 1536, 10000, adder_netlist, adder_rows});
    v.push_back({"bcdadder", false, "bcdadder", {"a", "b", "cin"}, {"sum", "cout"}, 256, 512, 0,
                 bcdadder_netlist, bcdadder_rows});
    v.push_back({"divide", false, "divide", {"a", "b"}, {"q", "r"}, 65536, 0, 0, divide_netlist,
                 divide_rows});
    v.push_back({"mod3", false, "mod3", {"x"}, {"r"}, 256, 0, 0, mod3_netlist, mod3_rows});
    v.push_back({"popcount", false, "popcount", {"x"}, {"c"}, 1u << kPopWidth, 1u << kPopWidth,
                 10000, popcount_netlist, popcount_rows});
    v.push_back({"addertree", true, "addertree", {"clk", "en", "rst", "a", "b", "c", "d", "e"},
                 {"out"}, std::uint64_t{1} << 40, 0, 10000, addertree_netlist, addertree_rows});
    v.push_back({"andreg", true, "reg_and", {"clk", "a", "b"}, {"out"}, 8, 0, 0,
                 [] { return std::string(kAndReg); }, andreg_rows});
    v.push_back({"gcd", true, "gcd", {"clk", "start", "a", "b"}, {"result", "done"},
                 1u << (2 * kGcdWidth), 1u << (2 * kGcdWidth), 10000, gcd_netlist, gcd_rows});
    return v;
  }();
  return list;
}

const Benchmark* find_benchmark(const std::string& name) {
  for (const auto& b : benchmarks()) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

std::vector<std::uint64_t> choose_cases(std::uint64_t space, std::uint64_t count,
                                        std::uint64_t seed) {
  std::vector<std::uint64_t> out;
  if (count >= space) {
    out.resize(space);
    for (std::uint64_t i = 0; i < space; ++i) out[i] = i;
    return out;
  }
  // Floyd's sampling
  std::mt19937_64 rng(seed);
  std::set<std::uint64_t> picked;
  for (std::uint64_t j = space - count; j < space; ++j) {
    const auto t = std::uniform_int_distribution<std::uint64_t>(0, j)(rng);
    if (!picked.insert(t).second) picked.insert(j);
  }
  return {picked.begin(), picked.end()};
}

VectorSet bench_vectors(const Benchmark& b, std::size_t sample, std::uint64_t seed, bool full) {
  const bool use_full = full && b.full_cases > 0;
  const std::uint64_t space = use_full ? b.full_cases : b.cases;
  std::uint64_t count = sample ? sample : (b.sample && !use_full ? b.sample : space);
  VectorSet vs;
  vs.inputs = b.inputs;
  vs.expected = b.outputs;
  for (auto id : choose_cases(space, count, seed)) b.rows(id, use_full, vs.rows);
  return vs;
}

// ---------------------------------------------------------------------------
// Random designs

std::string random_netlist(std::uint64_t seed, const RandomNetlistOptions& opts) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto chance = [&](int percent) { return static_cast<int>(pick(100)) < percent; };

  NetlistBuilder nb("rnd" + std::to_string(seed), "c");
  nb.input("clk");
  nb.input("rst");
  Bits pool;
  for (int i = 0; i < opts.data_inputs; ++i) {
    const int w = 1 + static_cast<int>(pick(4));
    const std::string name = "d" + std::to_string(i);
    nb.input(name, w);
    for (const auto& b : nb.bus(name, w)) pool.push_back(b);
  }
  std::vector<int> out_width;
  for (int i = 0; i < opts.outputs; ++i) {
    out_width.push_back(1 + static_cast<int>(pick(3)));
    nb.output("q" + std::to_string(i), out_width.back());
  }
  const Bits clocks = {"clk", "clk", "clk", "clk", "clk", "clk", pool[0]};
  Bits outs;
  for (int i = 0; i < opts.cells; ++i) outs.push_back(nb.wire());

  static const PrimitiveKind comb[] = {
      PrimitiveKind::AND2, PrimitiveKind::AND3, PrimitiveKind::AND4, PrimitiveKind::OR2,
      PrimitiveKind::OR3,  PrimitiveKind::OR4,  PrimitiveKind::XOR2, PrimitiveKind::XNOR2,
      PrimitiveKind::NAND2, PrimitiveKind::NOR2, PrimitiveKind::INV, PrimitiveKind::BUF,
      PrimitiveKind::CONST0, PrimitiveKind::CONST1, PrimitiveKind::LUT1, PrimitiveKind::LUT2,
      PrimitiveKind::LUT3, PrimitiveKind::LUT4, PrimitiveKind::LUT5, PrimitiveKind::LUT6,
      PrimitiveKind::LUT3, PrimitiveKind::LUT4, PrimitiveKind::XOR2, PrimitiveKind::AND2};
  static const PrimitiveKind clocked[] = {PrimitiveKind::FD, PrimitiveKind::FDR,
                                          PrimitiveKind::FDRE, PrimitiveKind::FDC,
                                          PrimitiveKind::FDCE};

  for (int i = 0; i < opts.cells; ++i) {
    auto earlier = [&]() -> std::string {
      if (chance(3)) return chance(50) ? kZero : kOne;
      const std::size_t n = pool.size() + static_cast<std::size_t>(i);
      const std::size_t k = pick(n);
      return k < pool.size() ? pool[k] : outs[k - pool.size()];
    };
    auto any = [&]() -> std::string {
      if (opts.feedback && chance(40)) return outs[pick(outs.size())];
      return earlier();
    };
    std::map<std::string, std::string> pins;
    if (chance(opts.ff_percent)) {
      const auto kind = clocked[pick(std::size(clocked))];
      for (int p = 0; p < input_count(kind); ++p) {
        const auto& pin = info(kind).pins[p];
        switch (pin.role) {
          case PinRole::Clock: pins[std::string(pin.name)] = clocks[pick(clocks.size())]; break;
          case PinRole::Clear: pins[std::string(pin.name)] = "rst"; break;
          default: pins[std::string(pin.name)] = any(); break;
        }
      }
      nb.cell(kind, pins, outs[i]);
    } else {
      const auto kind = comb[pick(std::size(comb))];
      for (int p = 0; p < input_count(kind); ++p) {
        pins[std::string(info(kind).pins[p].name)] = earlier();
      }
      std::optional<std::uint64_t> init;
      if (is_lut(kind)) {
        const int k = lut_inputs(kind);
        init = rng();
        if (k < 6) *init &= (std::uint64_t{1} << (1u << k)) - 1;
      }
      nb.cell(kind, pins, outs[i], init);
    }
  }
  for (int o = 0; o < opts.outputs; ++o) {
    const auto bits = nb.bus("q" + std::to_string(o), out_width[o]);
    for (const auto& b : bits) nb.assign(b, outs[pick(outs.size())]);
  }
  return nb.str();
}

VectorSet random_vectors(const std::vector<PortInfo>& inputs, std::size_t rows,
                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  VectorSet vs;
  for (const auto& p : inputs) vs.inputs.push_back(p.name);
  for (std::size_t r = 0; r < rows; ++r) {
    VectorSet::Row row;
    for (const auto& p : inputs) {
      std::uint64_t v = rng();
      if (p.name == "clk" && p.width == 1) {
        v = (v % 10 == 0) ? (v >> 8) & 1 : r & 1;
      } else if (p.name == "rst" && p.width == 1) {
        v = (v % 20 == 0) ? 1 : 0;
      } else if (p.width < 64) {
        v &= (std::uint64_t{1} << p.width) - 1;
      }
      row.in.push_back(v);
    }
    vs.rows.push_back(std::move(row));
  }
  return vs;
}

}  // namespace nlc
