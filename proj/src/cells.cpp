#include "nlc/cells.hpp"

#include <array>
#include <nlohmann/json.hpp>

#include "nlc/diagnostics.hpp"

namespace nlc {
namespace {

using enum PinDir;
using enum PinRole;

constexpr PinInfo kOut{"O", Out, Output};

constexpr std::array<PinInfo, 3> kGate2{{{"I0", In, Data}, {"I1", In, Data}, kOut}};
constexpr std::array<PinInfo, 4> kGate3{
    {{"I0", In, Data}, {"I1", In, Data}, {"I2", In, Data}, kOut}};
constexpr std::array<PinInfo, 5> kGate4{
    {{"I0", In, Data}, {"I1", In, Data}, {"I2", In, Data}, {"I3", In, Data}, kOut}};
constexpr std::array<PinInfo, 2> kUnary{{{"I", In, Data}, kOut}};
constexpr std::array<PinInfo, 1> kConst{{kOut}};

constexpr std::array<PinInfo, 2> kLut1{{{"I0", In, Data}, kOut}};
constexpr std::array<PinInfo, 3> kLut2 = kGate2;
constexpr std::array<PinInfo, 4> kLut3 = kGate3;
constexpr std::array<PinInfo, 5> kLut4 = kGate4;
constexpr std::array<PinInfo, 6> kLut5{{{"I0", In, Data},
                                       {"I1", In, Data},
                                       {"I2", In, Data},
                                       {"I3", In, Data},
                                       {"I4", In, Data},
                                       kOut}};
constexpr std::array<PinInfo, 7> kLut6{{{"I0", In, Data},
                                       {"I1", In, Data},
                                       {"I2", In, Data},
                                       {"I3", In, Data},
                                       {"I4", In, Data},
                                       {"I5", In, Data},
                                       kOut}};

constexpr PinInfo kQ{"Q", Out, Output};
constexpr std::array<PinInfo, 3> kFd{{{"C", In, Clock}, {"D", In, Data}, kQ}};
constexpr std::array<PinInfo, 4> kFdr{
    {{"C", In, Clock}, {"D", In, Data}, {"R", In, Reset}, kQ}};
constexpr std::array<PinInfo, 5> kFdre{{{"C", In, Clock},
                                       {"CE", In, Enable},
                                       {"D", In, Data},
                                       {"R", In, Reset},
                                       kQ}};
constexpr std::array<PinInfo, 4> kFdc{
    {{"C", In, Clock}, {"CLR", In, Clear}, {"D", In, Data}, kQ}};
constexpr std::array<PinInfo, 5> kFdce{{{"C", In, Clock},
                                       {"CE", In, Enable},
                                       {"CLR", In, Clear},
                                       {"D", In, Data},
                                       kQ}};

using K = PrimitiveKind;
using enum CellClass;

const std::array<KindInfo, 25> kCatalog{{
    {K::AND2, "AND2", Combinational, kGate2, 0},
    {K::AND3, "AND3", Combinational, kGate3, 0},
    {K::AND4, "AND4", Combinational, kGate4, 0},
    {K::OR2, "OR2", Combinational, kGate2, 0},
    {K::OR3, "OR3", Combinational, kGate3, 0},
    {K::OR4, "OR4", Combinational, kGate4, 0},
    {K::XOR2, "XOR2", Combinational, kGate2, 0},
    {K::XNOR2, "XNOR2", Combinational, kGate2, 0},
    {K::NAND2, "NAND2", Combinational, kGate2, 0},
    {K::NOR2, "NOR2", Combinational, kGate2, 0},
    {K::INV, "INV", Combinational, kUnary, 0},
    {K::BUF, "BUF", Combinational, kUnary, 0},
    {K::CONST0, "CONST0", Combinational, kConst, 0},
    {K::CONST1, "CONST1", Combinational, kConst, 0},
    {K::LUT1, "LUT1", Combinational, kLut1, 1},
    {K::LUT2, "LUT2", Combinational, kLut2, 2},
    {K::LUT3, "LUT3", Combinational, kLut3, 3},
    {K::LUT4, "LUT4", Combinational, kLut4, 4},
    {K::LUT5, "LUT5", Combinational, kLut5, 5},
    {K::LUT6, "LUT6", Combinational, kLut6, 6},
    {K::FD, "FD", Clocked, kFd, 0},
    {K::FDR, "FDR", Clocked, kFdr, 0},
    {K::FDRE, "FDRE", Clocked, kFdre, 0},
    {K::FDC, "FDC", Clocked, kFdc, 0},
    {K::FDCE, "FDCE", Clocked, kFdce, 0},
}};

void check_arity(PrimitiveKind kind, std::size_t got) {
  const auto want = static_cast<std::size_t>(input_count(kind));
  if (got != want) {
    throw Error(ErrorCode::Arity, std::string(name_of(kind)) + " expects " +
                                      std::to_string(want) + " inputs, got " +
                                      std::to_string(got));
  }
}

}  // namespace

std::span<const KindInfo> catalog() { return kCatalog; }

const KindInfo& info(PrimitiveKind kind) {
  return kCatalog[static_cast<std::size_t>(kind)];
}

std::optional<PrimitiveKind> find_kind(std::string_view name) {
  for (const auto& k : kCatalog) {
    if (k.name == name) return k.kind;
  }
  return std::nullopt;
}

bool is_clocked(PrimitiveKind kind) { return info(kind).cls == Clocked; }
bool is_lut(PrimitiveKind kind) { return info(kind).lut_inputs > 0; }
int lut_inputs(PrimitiveKind kind) { return info(kind).lut_inputs; }
int input_count(PrimitiveKind kind) {
  return static_cast<int>(info(kind).pins.size()) - 1;
}
int output_pin(PrimitiveKind kind) { return input_count(kind); }

int find_pin(PrimitiveKind kind, std::string_view pin) {
  const auto pins = info(kind).pins;
  for (std::size_t i = 0; i < pins.size(); ++i) {
    if (pins[i].name == pin) return static_cast<int>(i);
  }
  return -1;
}

int pin_with_role(PrimitiveKind kind, PinRole role) {
  const auto pins = info(kind).pins;
  for (std::size_t i = 0; i < pins.size(); ++i) {
    if (pins[i].role == role) return static_cast<int>(i);
  }
  return -1;
}

bool is_unsupported_macro(std::string_view name) {
  return name.starts_with("DSP") || name.starts_with("RAM") ||
         name.starts_with("ROM") || name.starts_with("SRL") ||
         name.starts_with("FIFO");
}

std::string catalog_json() {
  nlohmann::ordered_json kinds = nlohmann::ordered_json::array();
  for (const auto& k : kCatalog) {
    nlohmann::ordered_json rec;
    rec["name"] = k.name;
    rec["class"] = k.cls == Clocked ? "clocked" : "combinational";
    auto& ports = rec["ports"] = nlohmann::ordered_json::array();
    for (const auto& p : k.pins) {
      ports.push_back({{"name", p.name},
                       {"direction", p.dir == In ? "input" : "output"},
                       {"width", 1}});
    }
    auto& params = rec["params"] = nlohmann::ordered_json::array();
    if (k.lut_inputs > 0) {
      params.push_back({{"name", "INIT"}, {"bits", 1 << k.lut_inputs}});
    }
    kinds.push_back(std::move(rec));
  }
  return nlohmann::ordered_json{{"primitives", kinds}}.dump(2) + "\n";
}

bool eval_gate(PrimitiveKind kind, std::span<const std::uint8_t> in) {
  if (is_lut(kind) || is_clocked(kind)) {
    throw Error(ErrorCode::Arity,
                std::string(name_of(kind)) + " is not a fixed gate");
  }
  check_arity(kind, in.size());
  switch (kind) {
    case K::AND2: return in[0] & in[1];
    case K::AND3: return in[0] & in[1] & in[2];
    case K::AND4: return in[0] & in[1] & in[2] & in[3];
    case K::OR2: return in[0] | in[1];
    case K::OR3: return in[0] | in[1] | in[2];
    case K::OR4: return in[0] | in[1] | in[2] | in[3];
    case K::XOR2: return in[0] ^ in[1];
    case K::XNOR2: return !(in[0] ^ in[1]);
    case K::NAND2: return !(in[0] & in[1]);
    case K::NOR2: return !(in[0] | in[1]);
    case K::INV: return !in[0];
    case K::BUF: return in[0];
    case K::CONST0: return false;
    case K::CONST1: return true;
    default: break;
  }
  return false;
}

void LutSpec::validate() const {
  if (k < 1 || k > 6) {
    throw Error(ErrorCode::OutOfRange,
                "LUT size " + std::to_string(k) + " outside 1..6");
  }
  if (k < 6 && (init_mask >> (1u << k)) != 0) {
    throw Error(ErrorCode::OutOfRange,
                "INIT mask exceeds " + std::to_string(1u << k) + " bits for LUT" +
                    std::to_string(k));
  }
}

bool eval_lut(const LutSpec& spec, std::span<const std::uint8_t> inputs) {
  if (inputs.size() != static_cast<std::size_t>(spec.k)) {
    throw Error(ErrorCode::Arity, "LUT" + std::to_string(spec.k) + " expects " +
                                      std::to_string(spec.k) + " inputs, got " +
                                      std::to_string(inputs.size()));
  }
  unsigned addr = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    addr |= static_cast<unsigned>(inputs[i] & 1u) << i;
  }
  return (spec.init_mask >> addr) & 1u;
}

std::vector<std::uint32_t> sop_terms(const LutSpec& spec) {
  std::vector<std::uint32_t> terms;
  const unsigned rows = 1u << spec.k;
  for (unsigned m = 0; m < rows; ++m) {
    if ((spec.init_mask >> m) & 1u) terms.push_back(m);
  }
  return terms;
}

bool eval_sop(std::span<const std::uint32_t> terms, int k,
              std::span<const std::uint8_t> inputs) {
  bool sum = false;
  for (const auto term : terms) {
    bool product = true;
    for (int i = 0; i < k; ++i) {
      const bool literal = (term >> i) & 1u ? inputs[i] != 0 : inputs[i] == 0;
      product = product && literal;
    }
    sum = sum || product;
  }
  return sum;
}

FlipFlopResult eval_ff(PrimitiveKind kind, FlipFlopState state, bool clk,
                       bool d, const FlipFlopControls& ctrl) {
  if (!is_clocked(kind)) {
    throw Error(ErrorCode::Arity,
                std::string(name_of(kind)) + " is not a flip-flop");
  }
  auto check = [&](PinRole role, const std::optional<bool>& pin,
                   std::string_view pin_name) {
    const bool has = pin_with_role(kind, role) >= 0;
    if (has && !pin) {
      throw Error(ErrorCode::MissingPin, std::string(name_of(kind)) +
                                             " requires control pin " +
                                             std::string(pin_name));
    }
    if (!has && pin) {
      throw Error(ErrorCode::MissingPin, std::string(name_of(kind)) +
                                             " has no control pin " +
                                             std::string(pin_name));
    }
  };
  check(PinRole::Reset, ctrl.r, "R");
  check(PinRole::Enable, ctrl.ce, "CE");
  check(PinRole::Clear, ctrl.clr, "CLR");

  const bool q = step_ff(state, clk, d, ctrl.r.value_or(false),
                         ctrl.ce.value_or(true), ctrl.clr.value_or(false));
  return {q, state};
}

}  // namespace nlc
