#include "nlc/sim.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <numeric>
#include <random>
#include <sstream>

#include "nlc/diagnostics.hpp"

namespace nlc {

namespace {

std::uint64_t width_mask(int width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

struct FfPins {
  int clk = -1, d = -1, r = -1, ce = -1, clr = -1;
};

const FfPins& ff_pins(PrimitiveKind kind) {
  static const auto table = [] {
    std::array<FfPins, 32> t{};
    for (const auto& k : catalog()) {
      if (k.cls != CellClass::Clocked) continue;
      auto& p = t[static_cast<int>(k.kind)];
      p.clk = pin_with_role(k.kind, PinRole::Clock);
      p.d = pin_with_role(k.kind, PinRole::Data);
      p.r = pin_with_role(k.kind, PinRole::Reset);
      p.ce = pin_with_role(k.kind, PinRole::Enable);
      p.clr = pin_with_role(k.kind, PinRole::Clear);
    }
    return t;
  }();
  return table[static_cast<int>(kind)];
}

bool eval_comb(PrimitiveKind kind, std::uint64_t init, std::span<const std::uint8_t> in) {
  if (is_lut(kind)) return eval_lut({lut_inputs(kind), init}, in);
  return eval_gate(kind, in);
}

bool eval_clocked(PrimitiveKind kind, FlipFlopState& s, std::span<const std::uint8_t> in,
                  bool use_prev_clk) {
  const auto& p = ff_pins(kind);
  const bool clk = use_prev_clk ? s.prev_clk != 0 : in[p.clk] != 0;
  return step_ff(s, clk, in[p.d] != 0, p.r >= 0 && in[p.r], p.ce < 0 || in[p.ce],
                 p.clr >= 0 && in[p.clr]);
}

void check_input_count(std::size_t got, std::size_t want) {
  if (got != want) {
    throw Error(ErrorCode::Vector, "expected " + std::to_string(want) + " input values, got " +
                                       std::to_string(got));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Compiled-schedule interpreter

SimState initial_state(const Program& p) {
  SimState s;
  s.values.assign(p.signal_count, 0);
  s.ffs.assign(p.ff_cells.size(), {});
  return s;
}

std::vector<std::uint64_t> eval_pass(const Program& p, SimState& state,
                                     std::span<const std::uint64_t> inputs) {
  check_input_count(inputs.size(), p.inputs.size());
  for (std::size_t i = 0; i < p.inputs.size(); ++i) {
    const auto& port = p.inputs[i];
    for (int b = 0; b < port.width; ++b) {
      state.values[port.bits[b].signal] = b < 64 ? (inputs[i] >> b) & 1 : 0;
    }
  }
  auto read = [&](const Operand& o) -> std::uint8_t {
    return o.is_const() ? o.value : state.values[o.signal];
  };
  std::vector<std::uint8_t> buf;
  for (const auto& step : p.steps) {
    buf.clear();
    for (const auto& o : step.inputs) buf.push_back(read(o));
    bool out;
    if (step.ff_index >= 0) {
      out = eval_clocked(step.kind, state.ffs[step.ff_index], buf,
                         step.mode == SlotMode::ClockDisabledCopy);
    } else {
      out = eval_comb(step.kind, step.init, buf);
    }
    state.values[step.output] = out;
  }
  ++state.passes;
  std::vector<std::uint64_t> out;
  for (const auto& port : p.outputs) {
    std::uint64_t v = 0;
    for (int b = 0; b < port.width && b < 64; ++b) {
      v |= std::uint64_t{read(port.bits[b])} << b;
    }
    out.push_back(v);
  }
  return out;
}

CompiledSimulator::CompiledSimulator(Program program) : program_(std::move(program)) {
  for (const auto& port : program_.inputs) inputs_.push_back({port.name, port.width});
  for (const auto& port : program_.outputs) outputs_.push_back({port.name, port.width});
  for (const auto* ports : {&inputs_, &outputs_}) {
    for (const auto& port : *ports) {
      if (port.width > 64) {
        throw Error(ErrorCode::Width, "port '" + port.name + "' is " +
                                          std::to_string(port.width) +
                                          " bits wide; at most 64 bits can be simulated");
      }
    }
  }
  state_ = initial_state(program_);

  const int zero = program_.signal_count, one = zero + 1;
  auto slot = [&](const Operand& o) { return o.is_const() ? (o.value ? one : zero) : o.signal; };
  for (const auto& step : program_.steps) {
    Op op{0, static_cast<int>(operands_.size()), 0, step.output, step.ff_index,
          step.mode == SlotMode::ClockDisabledCopy};
    if (step.ff_index >= 0) {
      const auto& p = ff_pins(step.kind);
      auto pin = [&](int idx, int absent) { return idx < 0 ? absent : slot(step.inputs[idx]); };
      for (int s : {pin(p.clk, zero), pin(p.d, zero), pin(p.r, zero), pin(p.ce, one),
                    pin(p.clr, zero)}) {
        operands_.push_back(s);
      }
      op.count = 5;
    } else {
      const int k = static_cast<int>(step.inputs.size());
      std::array<std::uint8_t, 6> bits{};
      for (unsigned m = 0; m < (1u << k); ++m) {
        for (int i = 0; i < k; ++i) bits[i] = (m >> i) & 1;
        if (eval_comb(step.kind, step.init, std::span(bits.data(), k))) {
          op.table |= std::uint64_t{1} << m;
        }
      }
      for (const auto& o : step.inputs) operands_.push_back(slot(o));
      op.count = k;
    }
    ops_.push_back(op);
  }
  values_.assign(program_.signal_count + 2, 0);
  values_[one] = 1;
}

std::vector<std::uint64_t> CompiledSimulator::eval_pass(std::span<const std::uint64_t> in) {
  check_input_count(in.size(), program_.inputs.size());
  std::uint8_t* v = values_.data();
  for (std::size_t i = 0; i < program_.inputs.size(); ++i) {
    const auto& port = program_.inputs[i];
    for (int b = 0; b < port.width; ++b) v[port.bits[b].signal] = (in[i] >> b) & 1;
  }
  const int* operands = operands_.data();
  for (const Op& op : ops_) {
    const int* a = operands + op.first;
    if (op.ff < 0) {
      unsigned addr = 0;
      for (int i = 0; i < op.count; ++i) addr |= unsigned{v[a[i]]} << i;
      v[op.output] = (op.table >> addr) & 1;
    } else {
      auto& s = state_.ffs[op.ff];
      const bool clk = op.copy ? s.prev_clk != 0 : v[a[0]] != 0;
      v[op.output] = step_ff(s, clk, v[a[1]], v[a[2]], v[a[3]], v[a[4]]);
    }
  }
  ++state_.passes;
  std::vector<std::uint64_t> out;
  out.reserve(program_.outputs.size());
  for (const auto& port : program_.outputs) {
    std::uint64_t x = 0;
    for (int b = 0; b < port.width; ++b) {
      const auto& o = port.bits[b];
      x |= std::uint64_t{o.is_const() ? o.value : v[o.signal]} << b;
    }
    out.push_back(x);
  }
  return out;
}

void CompiledSimulator::reset() {
  state_ = initial_state(program_);
  std::fill(values_.begin(), values_.end() - 2, 0);
}

// ---------------------------------------------------------------------------
// Event-driven reference

namespace {

/// Union-find over (net, offset) bits plus the two constants.
class BitClasses {
 public:
  explicit BitClasses(const FlatDesign& d) {
    int next = 2;
    for (const auto& n : d.nets) {
      base_.push_back(next);
      next += n.width;
    }
    parent_.resize(next);
    std::iota(parent_.begin(), parent_.end(), 0);
    for (const auto& [a, b] : d.aliases) unite(node(a), node(b));
  }

  int node(const FlatBit& b) const { return b.is_const() ? int(b.value) : base_[b.net] + b.offset; }

  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;  // constants stay roots
  }

  int size() const { return static_cast<int>(parent_.size()); }

 private:
  std::vector<int> base_;
  std::vector<int> parent_;
};

}  // namespace

EventSimulator::EventSimulator(const FlatDesign& d) {
  BitClasses classes(d);
  int nodes = classes.size();
  for (int net : d.ports) {
    const auto& n = d.nets[net];
    if (n.width > 64) {
      throw Error(ErrorCode::Width, "port '" + n.name + "' is " + std::to_string(n.width) +
                                        " bits wide; at most 64 bits can be simulated");
    }
    std::vector<int> bits;
    for (int b = 0; b < n.width; ++b) bits.push_back(classes.find(classes.node({net, b, false})));
    if (n.dir == Direction::Input) {
      inputs_.push_back({n.name, n.width});
      input_nodes_.push_back(std::move(bits));
    } else {
      outputs_.push_back({n.name, n.width});
      output_nodes_.push_back(std::move(bits));
    }
  }
  for (const auto& fc : d.cells) {
    Cell c{fc.kind, fc.init, {}, -1, -1};
    const int n_in = input_count(fc.kind);
    for (int pin = 0; pin < n_in; ++pin) {
      c.in.push_back(fc.pins[pin] ? classes.find(classes.node(*fc.pins[pin])) : 0);
    }
    const auto& out = fc.pins[output_pin(fc.kind)];
    c.out = out ? classes.find(classes.node(*out)) : nodes++;
    if (is_clocked(fc.kind)) {
      c.ff = static_cast<int>(flops_.size());
      flops_.emplace_back();
    }
    cells_.push_back(std::move(c));
  }
  readers_.resize(nodes);
  for (int i = 0; i < static_cast<int>(cells_.size()); ++i) {
    auto pins = cells_[i].in;
    std::sort(pins.begin(), pins.end());
    pins.erase(std::unique(pins.begin(), pins.end()), pins.end());
    for (int n : pins) readers_[n].push_back(i);
  }
  values_.assign(nodes, 0);
  reset();
}

void EventSimulator::reset() {
  std::fill(values_.begin(), values_.end(), 0);
  values_[1] = 1;
  std::fill(flops_.begin(), flops_.end(), Flop{});
  pending_.clear();
  first_pass_ = true;
}

bool EventSimulator::eval_cell(const Cell& c) const {
  if (c.ff >= 0) {
    const int clr = pin_with_role(c.kind, PinRole::Clear);
    if (clr >= 0 && values_[c.in[clr]]) return false;
    return flops_[c.ff].q;
  }
  std::array<std::uint8_t, 6> in{};
  for (std::size_t i = 0; i < c.in.size(); ++i) in[i] = values_[c.in[i]];
  return eval_comb(c.kind, c.init, std::span(in.data(), c.in.size()));
}

std::vector<std::uint64_t> EventSimulator::eval_pass(std::span<const std::uint64_t> in) {
  check_input_count(in.size(), inputs_.size());
  const int n_cells = static_cast<int>(cells_.size());
  std::vector<std::uint8_t> queued(n_cells, 0);
  std::vector<int> active;
  auto wake = [&](int cell) {
    if (!queued[cell]) {
      queued[cell] = 1;
      active.push_back(cell);
    }
  };
  auto wake_readers = [&](int node) {
    for (int c : readers_[node]) wake(c);
  };

  if (first_pass_) {
    for (int c = 0; c < n_cells; ++c) wake(c);
    first_pass_ = false;
  }
  for (int c : pending_) wake(c);
  pending_.clear();
  for (std::size_t i = 0; i < inputs_.size(); ++i) {
    for (int b = 0; b < inputs_[i].width; ++b) {
      const int node = input_nodes_[i][b];
      if (node < 2) continue;
      const std::uint8_t v = (in[i] >> b) & 1;
      if (values_[node] != v) {
        values_[node] = v;
        wake_readers(node);
      }
    }
  }

  int rounds = 0;
  while (!active.empty()) {
    if (++rounds > n_cells + 1) {
      throw Error(ErrorCode::CombinationalLoop,
                  "event simulation did not settle within " + std::to_string(n_cells + 1) +
                      " rounds");
    }
    std::vector<int> round;
    round.swap(active);
    std::sort(round.begin(), round.end());
    for (int c : round) queued[c] = 0;
    for (int c : round) {
      const Cell& cell = cells_[c];
      const std::uint8_t v = eval_cell(cell);
      if (cell.out >= 2 && values_[cell.out] != v) {
        values_[cell.out] = v;
        wake_readers(cell.out);
      }
    }
  }

  std::vector<std::uint64_t> out;
  for (const auto& bits : output_nodes_) {
    std::uint64_t v = 0;
    for (std::size_t b = 0; b < bits.size(); ++b) v |= std::uint64_t{values_[bits[b]]} << b;
    out.push_back(v);
  }

  // Edge sampling with every pin settled; results show up next pass.
  for (int c = 0; c < n_cells; ++c) {
    const Cell& cell = cells_[c];
    if (cell.ff < 0) continue;
    const auto& p = ff_pins(cell.kind);
    auto pin = [&](int idx, bool absent) { return idx < 0 ? absent : values_[cell.in[idx]] != 0; };
    Flop& f = flops_[cell.ff];
    const bool clk = pin(p.clk, false);
    const bool before = f.q;
    if (pin(p.clr, false)) {
      f.q = false;
    } else if (clk && !f.prev_clk && pin(p.ce, true)) {
      f.q = pin(p.r, false) ? false : pin(p.d, false);
    }
    f.prev_clk = clk;
    if (f.q != before) pending_.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stimulus and transcripts

std::vector<std::pair<std::size_t, std::size_t>> VectorSet::cases() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t first = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& e = rows[i].expect;
    if (std::any_of(e.begin(), e.end(), [](const auto& x) { return x.has_value(); })) {
      out.emplace_back(first, i + 1);
      first = i + 1;
    }
  }
  if (first < rows.size()) out.emplace_back(first, rows.size());
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::uint64_t parse_value(std::string_view s, std::size_t line) {
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    base = 16;
    s.remove_prefix(2);
  }
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::Vector, "bad value '" + std::string(s) + "'", {int(line), 0});
  }
  return v;
}

}  // namespace

VectorSet parse_vectors(std::string_view csv) {
  VectorSet vs;
  std::vector<bool> is_expect;
  std::size_t line_no = 0;
  bool header = true;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    auto end = csv.find('\n', pos);
    if (end == std::string_view::npos) end = csv.size();
    const auto line = trim(csv.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto cols = split(line);
    if (header) {
      for (auto c : cols) {
        if (c.empty()) throw Error(ErrorCode::Vector, "empty column name", {int(line_no), 0});
        if (c.starts_with("expect_")) {
          vs.expected.emplace_back(c.substr(7));
          is_expect.push_back(true);
        } else {
          if (!vs.expected.empty()) {
            throw Error(ErrorCode::Vector, "input column '" + std::string(c) +
                                               "' after expectation columns",
                        {int(line_no), 0});
          }
          vs.inputs.emplace_back(c);
          is_expect.push_back(false);
        }
      }
      header = false;
      continue;
    }
    if (cols.size() != is_expect.size()) {
      throw Error(ErrorCode::Vector, "expected " + std::to_string(is_expect.size()) +
                                         " columns, got " + std::to_string(cols.size()),
                  {int(line_no), 0});
    }
    VectorSet::Row row;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (is_expect[i]) {
        row.expect.push_back(cols[i].empty() ? std::nullopt
                                             : std::optional(parse_value(cols[i], line_no)));
      } else {
        if (cols[i].empty()) {
          throw Error(ErrorCode::Vector, "missing value for input '" + vs.inputs[i] + "'",
                      {int(line_no), 0});
        }
        row.in.push_back(parse_value(cols[i], line_no));
      }
    }
    vs.rows.push_back(std::move(row));
  }
  if (header) throw Error(ErrorCode::Vector, "vector file has no header");
  return vs;
}

std::string format_vectors(const VectorSet& vs) {
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << ',';
    first = false;
  };
  for (const auto& n : vs.inputs) sep(), os << n;
  for (const auto& n : vs.expected) sep(), os << "expect_" << n;
  os << '\n';
  for (const auto& row : vs.rows) {
    first = true;
    for (auto v : row.in) sep(), os << v;
    for (const auto& e : row.expect) {
      sep();
      if (e) os << *e;
    }
    os << '\n';
  }
  return os.str();
}

VectorSet sample_cases(const VectorSet& vs, std::size_t count, std::uint64_t seed) {
  const auto cases = vs.cases();
  if (cases.size() <= count) return vs;
  std::vector<std::size_t> idx(cases.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> picked;
  std::sample(idx.begin(), idx.end(), std::back_inserter(picked), count, rng);
  VectorSet out;
  out.inputs = vs.inputs;
  out.expected = vs.expected;
  for (auto i : picked) {
    for (auto r = cases[i].first; r < cases[i].second; ++r) out.rows.push_back(vs.rows[r]);
  }
  return out;
}

std::string Transcript::to_csv() const {
  const bool verdict = std::any_of(verdicts.begin(), verdicts.end(),
                                   [](const auto& v) { return v.has_value(); });
  std::ostringstream os;
  os << "pass";
  for (const auto& n : outputs) os << ',' << n;
  if (verdict) os << ",verdict";
  os << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    os << i;
    for (auto v : rows[i]) os << ',' << v;
    if (verdict) {
      os << ',';
      if (verdicts[i]) os << (*verdicts[i] ? "pass" : "fail");
    }
    os << '\n';
  }
  return os.str();
}

std::string Transcript::summary() const {
  return "RESULT pass=" + std::to_string(passed) + " fail=" + std::to_string(failed);
}

Transcript run_vectors(Simulator& sim, const VectorSet& vs) {
  if (vs.rows.empty()) throw Error(ErrorCode::Vector, "at least one row required");
  const auto& ins = sim.inputs();
  const auto& outs = sim.outputs();

  std::vector<int> in_col(ins.size(), -1);
  for (std::size_t c = 0; c < vs.inputs.size(); ++c) {
    auto it = std::find_if(ins.begin(), ins.end(),
                           [&](const PortInfo& p) { return p.name == vs.inputs[c]; });
    if (it == ins.end()) {
      throw Error(ErrorCode::Vector, "vector column '" + vs.inputs[c] + "' is not a top input");
    }
    const auto i = static_cast<std::size_t>(it - ins.begin());
    if (in_col[i] >= 0) throw Error(ErrorCode::Vector, "duplicate column '" + vs.inputs[c] + "'");
    in_col[i] = static_cast<int>(c);
  }
  for (std::size_t i = 0; i < ins.size(); ++i) {
    if (in_col[i] < 0) throw Error(ErrorCode::Vector, "no column for top input '" + ins[i].name + "'");
  }
  std::vector<int> out_col(vs.expected.size());
  for (std::size_t c = 0; c < vs.expected.size(); ++c) {
    auto it = std::find_if(outs.begin(), outs.end(),
                           [&](const PortInfo& p) { return p.name == vs.expected[c]; });
    if (it == outs.end()) {
      throw Error(ErrorCode::Vector,
                  "column 'expect_" + vs.expected[c] + "' is not a top output");
    }
    out_col[c] = static_cast<int>(it - outs.begin());
  }

  Transcript t;
  for (const auto& p : outs) t.outputs.push_back(p.name);
  std::vector<std::uint64_t> in(ins.size());
  for (std::size_t r = 0; r < vs.rows.size(); ++r) {
    const auto& row = vs.rows[r];
    for (std::size_t i = 0; i < ins.size(); ++i) {
      const auto v = row.in[in_col[i]];
      if (v & ~width_mask(ins[i].width)) {
        throw Error(ErrorCode::Vector, "row " + std::to_string(r) + ": value " +
                                           std::to_string(v) + " does not fit " +
                                           std::to_string(ins[i].width) + "-bit input '" +
                                           ins[i].name + "'");
      }
      in[i] = v;
    }
    auto out = sim.eval_pass(in);
    std::optional<bool> verdict;
    for (std::size_t c = 0; c < row.expect.size(); ++c) {
      if (!row.expect[c]) continue;
      const bool ok = out[out_col[c]] == *row.expect[c];
      verdict = verdict.value_or(true) && ok;
    }
    if (verdict) ++(*verdict ? t.passed : t.failed);
    t.rows.push_back(std::move(out));
    t.verdicts.push_back(verdict);
  }
  return t;
}

std::optional<std::pair<std::size_t, std::string>> first_divergence(const Transcript& a,
                                                                    const Transcript& b) {
  const auto n = std::min(a.rows.size(), b.rows.size());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < a.rows[r].size() && c < b.rows[r].size(); ++c) {
      if (a.rows[r][c] != b.rows[r][c]) {
        return std::pair{r, c < a.outputs.size() ? a.outputs[c] : std::to_string(c)};
      }
    }
  }
  if (a.rows.size() != b.rows.size()) return std::pair{n, std::string("<length>")};
  return std::nullopt;
}

}  // namespace nlc
