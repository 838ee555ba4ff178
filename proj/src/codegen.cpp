#include "nlc/codegen.hpp"

#include <cctype>
#include <cstdio>
#include <set>
#include <sstream>

#include "nlc/diagnostics.hpp"

namespace nlc {

namespace {

struct PrimFn {
  PrimitiveKind kind;
  std::uint64_t init;  // LUTs only

  auto key() const { return std::pair{static_cast<int>(kind), is_lut(kind) ? init : 0}; }
  friend bool operator<(const PrimFn& a, const PrimFn& b) { return a.key() < b.key(); }
};

std::string hex(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string ir_fn_name(const PrimFn& f) {
  std::string n = "@nlc." + std::string(name_of(f.kind));
  if (is_lut(f.kind)) n += "." + hex(f.init);
  return n;
}

std::string c_fn_name(const PrimFn& f) {
  std::string n = "nlc_" + std::string(name_of(f.kind));
  if (is_lut(f.kind)) n += "_" + hex(f.init);
  return n;
}

std::set<PrimFn> used_fns(const Program& p) {
  std::set<PrimFn> out;
  for (const auto& s : p.steps) out.insert({s.kind, is_lut(s.kind) ? s.init : 0});
  return out;
}

std::vector<std::string> input_pins(PrimitiveKind kind) {
  std::vector<std::string> out;
  const auto pins = info(kind).pins;
  for (int i = 0; i < input_count(kind); ++i) out.emplace_back(pins[i].name);
  return out;
}

int round_width(int width) {
  if (width <= 8) return 8;
  if (width <= 16) return 16;
  if (width <= 32) return 32;
  return 64;
}

bool is_c_reserved(const std::string& s) {
  static const std::set<std::string> words = {
      "auto", "break", "case", "char", "const", "continue", "default", "do", "double",
      "else", "enum", "extern", "float", "for", "goto", "if", "inline", "int", "long",
      "register", "restrict", "return", "short", "signed", "sizeof", "static", "struct",
      "switch", "typedef", "union", "unsigned", "void", "volatile", "while", "_Bool",
      "_Complex", "_Imaginary", "main", "uint8_t", "uint16_t", "uint32_t", "uint64_t"};
  return words.count(s) || s.rfind("nlc_", 0) == 0 || s.rfind("NLC_", 0) == 0;
}

class Uniquifier {
 public:
  std::string take(std::string base) {
    if (is_c_reserved(base)) base += "_";
    std::string name = base;
    for (int n = 2; used_.count(name); ++n) name = base + "_" + std::to_string(n);
    used_.insert(name);
    return name;
  }

 private:
  std::set<std::string> used_;
};

// Literals of each SOP product term.
struct SopText {
  std::vector<std::vector<std::pair<int, bool>>> terms;  // (input, positive)
};

SopText sop(const PrimFn& f) {
  SopText out;
  const int k = lut_inputs(f.kind);
  for (auto m : sop_terms({k, f.init})) {
    std::vector<std::pair<int, bool>> t;
    for (int i = 0; i < k; ++i) t.emplace_back(i, ((m >> i) & 1) != 0);
    out.terms.push_back(std::move(t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// IR

void ir_primitive(std::ostream& os, const PrimFn& f) {
  const auto pins = input_pins(f.kind);
  const bool ff = is_clocked(f.kind);
  os << "define internal i1 " << ir_fn_name(f) << "(";
  bool first = true;
  if (ff) {
    os << "i1* %gv1, i1* %gv2, i1* %gvclk";
    first = false;
  }
  for (const auto& pin : pins) {
    if (!first) os << ", ";
    first = false;
    os << "i1 %" << pin;
  }
  os << ") {\nentry:\n";

  if (ff) {
    const auto role = [&](PinRole r) {
      const int i = pin_with_role(f.kind, r);
      return i < 0 ? std::string() : "%" + pins[i];
    };
    const auto clk = role(PinRole::Clock), d = role(PinRole::Data), r = role(PinRole::Reset),
               ce = role(PinRole::Enable), clr = role(PinRole::Clear);
    os << "  %prev = load i1, i1* %gvclk\n"
       << "  %change = xor i1 %prev, " << clk << "\n"
       << "  %posedge = and i1 %change, " << clk << "\n";
    std::string en = "%posedge", g1 = "%g1", g2 = "%g2";
    os << "  %g1 = load i1, i1* %gv1\n"
       << "  %g2 = load i1, i1* %gv2\n";
    if (!ce.empty()) {
      os << "  %en.ce = and i1 " << en << ", " << ce << "\n";
      en = "%en.ce";
    }
    if (!clr.empty()) {
      os << "  %nclr = xor i1 " << clr << ", true\n"
         << "  %g1.c = and i1 %g1, %nclr\n"
         << "  %g2.c = and i1 %g2, %nclr\n"
         << "  %en.clr = and i1 " << en << ", %nclr\n";
      g1 = "%g1.c";
      g2 = "%g2.c";
      en = "%en.clr";
    }
    std::string dv = d;
    if (!r.empty()) {
      os << "  %nr = xor i1 " << r << ", true\n"
         << "  %d.r = and i1 " << d << ", %nr\n";
      dv = "%d.r";
    }
    os << "  ; on a rising edge, capture d\n"
       << "  %next = select i1 " << en << ", i1 " << dv << ", i1 " << g1 << "\n"
       << "  store i1 %next, i1* %gv1\n"
       << "  store i1 %next, i1* %gv2\n"
       << "  ; Remember the state of the clock\n"
       << "  store i1 " << clk << ", i1* %gvclk\n"
       << "  ret i1 " << g2 << "\n}\n";
    return;
  }

  if (is_lut(f.kind)) {
    const auto s = sop(f);
    if (s.terms.empty()) {
      os << "  ret i1 false\n}\n";
      return;
    }
    std::set<int> negated;
    for (const auto& t : s.terms)
      for (auto [i, pos] : t)
        if (!pos) negated.insert(i);
    for (int i : negated) os << "  %n" << pins[i] << " = xor i1 %" << pins[i] << ", true\n";
    auto lit = [&](std::pair<int, bool> l) { return (l.second ? "%" : "%n") + pins[l.first]; };
    std::vector<std::string> products;
    for (std::size_t t = 0; t < s.terms.size(); ++t) {
      std::string acc = lit(s.terms[t][0]);
      for (std::size_t j = 1; j < s.terms[t].size(); ++j) {
        const std::string name = "%p" + std::to_string(t) + "." + std::to_string(j);
        os << "  " << name << " = and i1 " << acc << ", " << lit(s.terms[t][j]) << "\n";
        acc = name;
      }
      products.push_back(acc);
    }
    std::string acc = products[0];
    for (std::size_t t = 1; t < products.size(); ++t) {
      const std::string name = "%s" + std::to_string(t);
      os << "  " << name << " = or i1 " << acc << ", " << products[t] << "\n";
      acc = name;
    }
    os << "  ret i1 " << acc << "\n}\n";
    return;
  }

  auto chain = [&](const char* op) {
    std::string acc = "%" + pins[0];
    for (std::size_t i = 1; i < pins.size(); ++i) {
      const std::string name = "%r" + std::to_string(i);
      os << "  " << name << " = " << op << " i1 " << acc << ", %" << pins[i] << "\n";
      acc = name;
    }
    return acc;
  };
  using K = PrimitiveKind;
  std::string result;
  switch (f.kind) {
    case K::AND2: case K::AND3: case K::AND4: result = chain("and"); break;
    case K::OR2: case K::OR3: case K::OR4: result = chain("or"); break;
    case K::XOR2: result = chain("xor"); break;
    case K::XNOR2: case K::NAND2: case K::NOR2: {
      const char* op = f.kind == K::XNOR2 ? "xor" : f.kind == K::NAND2 ? "and" : "or";
      os << "  %v = " << op << " i1 %" << pins[0] << ", %" << pins[1] << "\n"
         << "  %nv = xor i1 %v, true\n";
      result = "%nv";
      break;
    }
    case K::INV:
      os << "  %nv = xor i1 %" << pins[0] << ", true\n";
      result = "%nv";
      break;
    case K::BUF: result = "%" + pins[0]; break;
    case K::CONST0: result = "false"; break;
    case K::CONST1: result = "true"; break;
    default: throw Error(ErrorCode::Unsupported, "no IR lowering for " + std::string(name_of(f.kind)));
  }
  os << "  ret i1 " << result << "\n}\n";
}

std::string ir_port_type(int width, bool pointer) {
  if (!pointer) return "i" + std::to_string(width);
  return "i" + std::to_string(width > 64 ? width : round_width(width)) + "*";
}

}  // namespace

std::string mangle(std::string_view name) {
  std::string out;
  for (char ch : name) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c == '_') {
      out += ch;
    } else if (c == '.') {
      out += "__";
    } else {
      char buf[8];
      std::snprintf(buf, sizeof buf, "_x%02X", c);
      out += buf;
    }
  }
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) out = "n" + out;
  return out;
}

Symbols make_symbols(const Program& p, const FlatDesign& d) {
  Symbols s;
  Uniquifier top_scope;
  s.top = top_scope.take(mangle(p.name));
  Uniquifier params;
  for (int net : d.ports) s.ports.push_back(params.take(mangle(d.nets[net].name)));
  Uniquifier ffs;
  for (int c : p.ff_cells) s.ffs.push_back(ffs.take(mangle(d.cells[c].name)));
  return s;
}

std::string c_type(int width, const std::string& port) {
  if (width > 64) {
    throw Error(ErrorCode::Width, "port '" + port + "' is " + std::to_string(width) +
                                      " bits wide; C headers support at most 64 bits");
  }
  return "uint" + std::to_string(round_width(width)) + "_t";
}

std::string emit_primitive_fns(const Program& p) {
  std::ostringstream os;
  bool first = true;
  for (const auto& f : used_fns(p)) {
    if (!first) os << "\n";
    first = false;
    ir_primitive(os, f);
  }
  return os.str();
}

std::string emit_ir(const Program& p, const FlatDesign& d) {
  const auto sym = make_symbols(p, d);
  std::ostringstream os;
  os << "; ModuleID = '" << sym.top << "'\n"
     << "source_filename = \"" << sym.top << "\"\n\n";
  for (const auto& ff : sym.ffs) {
    os << "@ff." << ff << ".gv1 = internal global i1 false\n"
       << "@ff." << ff << ".gv2 = internal global i1 false\n"
       << "@ff." << ff << ".clk = internal global i1 false\n";
  }
  if (!sym.ffs.empty()) os << "\n";
  const auto fns = emit_primitive_fns(p);
  if (!fns.empty()) os << fns << "\n";

  // Signature in declaration order.
  std::vector<std::string> in_param(p.inputs.size()), out_param(p.outputs.size());
  os << "define void @" << sym.top << "(";
  std::size_t ii = 0, oi = 0;
  for (std::size_t k = 0; k < p.port_order.size(); ++k) {
    if (k) os << ", ";
    if (p.port_order[k] == Direction::Input) {
      const auto& port = p.inputs[ii];
      in_param[ii++] = "%" + sym.ports[k];
      os << ir_port_type(port.width, false) << " %" << sym.ports[k];
    } else {
      const auto& port = p.outputs[oi];
      out_param[oi++] = "%" + sym.ports[k];
      os << ir_port_type(port.width, true) << " %" << sym.ports[k];
    }
  }
  os << ") {\nentry:\n";

  int tmp = 0;
  auto fresh = [&] { return "%.t" + std::to_string(tmp++); };
  std::vector<std::string> value(p.signal_count, "false");
  auto read = [&](const Operand& o) -> std::string {
    if (o.is_const()) return o.value ? "true" : "false";
    return value[o.signal];
  };

  for (std::size_t i = 0; i < p.inputs.size(); ++i) {
    const auto& port = p.inputs[i];
    const std::string ty = "i" + std::to_string(port.width);
    for (int b = 0; b < port.width; ++b) {
      const int sig = port.bits[b].signal;
      if (port.width == 1) {
        value[sig] = in_param[i];
        continue;
      }
      std::string src = in_param[i];
      if (b > 0) {
        const auto sh = fresh();
        os << "  " << sh << " = lshr " << ty << " " << src << ", " << b << "\n";
        src = sh;
      }
      const auto bit = fresh();
      os << "  " << bit << " = trunc " << ty << " " << src << " to i1\n";
      value[sig] = bit;
    }
  }

  for (const auto& step : p.steps) {
    const PrimFn f{step.kind, is_lut(step.kind) ? step.init : 0};
    std::vector<std::string> args;
    std::string clk_override;
    if (step.ff_index >= 0) {
      const auto& ff = sym.ffs[step.ff_index];
      args = {"i1* @ff." + ff + ".gv1", "i1* @ff." + ff + ".gv2", "i1* @ff." + ff + ".clk"};
      if (step.mode == SlotMode::ClockDisabledCopy) {
        clk_override = fresh();
        os << "  " << clk_override << " = load i1, i1* @ff." << ff << ".clk\n";
      }
    }
    const int clk_pin = pin_with_role(step.kind, PinRole::Clock);
    for (std::size_t i = 0; i < step.inputs.size(); ++i) {
      const bool is_clk = !clk_override.empty() && static_cast<int>(i) == clk_pin;
      args.push_back("i1 " + (is_clk ? clk_override : read(step.inputs[i])));
    }
    const auto out = fresh();
    os << "  " << out << " = call i1 " << ir_fn_name(f) << "(";
    for (std::size_t i = 0; i < args.size(); ++i) os << (i ? ", " : "") << args[i];
    os << ")";
    if (step.mode == SlotMode::ClockDisabledCopy) os << " ; clock-disabled copy";
    os << "\n";
    value[step.output] = out;
  }

  for (std::size_t i = 0; i < p.outputs.size(); ++i) {
    const auto& port = p.outputs[i];
    const int w = port.width > 64 ? port.width : round_width(port.width);
    const std::string ty = "i" + std::to_string(w);
    std::string acc;
    for (int b = 0; b < port.width; ++b) {
      const auto z = fresh();
      os << "  " << z << " = zext i1 " << read(port.bits[b]) << " to " << ty << "\n";
      std::string term = z;
      if (b > 0) {
        term = fresh();
        os << "  " << term << " = shl " << ty << " " << z << ", " << b << "\n";
      }
      if (acc.empty()) {
        acc = term;
      } else {
        const auto o = fresh();
        os << "  " << o << " = or " << ty << " " << acc << ", " << term << "\n";
        acc = o;
      }
    }
    os << "  store " << ty << " " << acc << ", " << ty << "* " << out_param[i] << "\n";
  }
  os << "  ret void\n}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// C

namespace {

std::string c_prototype(const Program& p, const Symbols& sym) {
  std::ostringstream os;
  os << "void " << sym.top << "(";
  if (p.port_order.empty()) os << "void";
  std::size_t ii = 0, oi = 0;
  for (std::size_t k = 0; k < p.port_order.size(); ++k) {
    if (k) os << ", ";
    if (p.port_order[k] == Direction::Input) {
      const auto& port = p.inputs[ii++];
      os << c_type(port.width, port.name) << " " << sym.ports[k];
    } else {
      const auto& port = p.outputs[oi++];
      os << c_type(port.width, port.name) << "* " << sym.ports[k];
    }
  }
  os << ")";
  return os.str();
}

std::string guard_of(const std::string& top) {
  std::string g = "NLC_GEN_";
  for (char c : top) g += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return g + "_H";
}

void c_primitive(std::ostream& os, const PrimFn& f) {
  const auto pins = input_pins(f.kind);
  const bool ff = is_clocked(f.kind);
  os << "static unsigned char " << c_fn_name(f) << "(";
  bool first = true;
  if (ff) {
    os << "struct nlc_ff *s";
    first = false;
  }
  for (const auto& pin : pins) {
    if (!first) os << ", ";
    first = false;
    os << "unsigned char " << pin;
  }
  if (first) os << "void";
  os << ")\n{\n";

  if (ff) {
    const auto role = [&](PinRole r) {
      const int i = pin_with_role(f.kind, r);
      return i < 0 ? std::string() : pins[i];
    };
    const auto clk = role(PinRole::Clock), d = role(PinRole::Data), r = role(PinRole::Reset),
               ce = role(PinRole::Enable), clr = role(PinRole::Clear);
    os << "  unsigned char q;\n";
    if (!clr.empty()) os << "  if (" << clr << ") {\n    s->gv1 = 0;\n    s->gv2 = 0;\n  }\n";
    os << "  if ((s->clk ^ " << clk << ") & " << clk;
    if (!ce.empty()) os << " & " << ce;
    if (!clr.empty()) os << " & !" << clr;
    os << ")\n    s->gv1 = ";
    if (!r.empty()) {
      os << "(unsigned char)(" << d << " & !" << r << ");\n";
    } else {
      os << d << ";\n";
    }
    os << "  q = s->gv2;\n  s->gv2 = s->gv1;\n  s->clk = " << clk << ";\n  return q;\n}\n";
    return;
  }

  std::string expr;
  if (is_lut(f.kind)) {
    const auto s = sop(f);
    if (s.terms.empty()) expr = "0";
    for (std::size_t t = 0; t < s.terms.size(); ++t) {
      if (t) expr += " | ";
      expr += "(";
      for (std::size_t j = 0; j < s.terms[t].size(); ++j) {
        const auto [i, pos] = s.terms[t][j];
        if (j) expr += " & ";
        expr += pos ? pins[i] : "(!" + pins[i] + ")";
      }
      expr += ")";
    }
  } else {
    using K = PrimitiveKind;
    auto join = [&](const char* op) {
      std::string e = pins[0];
      for (std::size_t i = 1; i < pins.size(); ++i) e += std::string(" ") + op + " " + pins[i];
      return e;
    };
    switch (f.kind) {
      case K::AND2: case K::AND3: case K::AND4: expr = join("&"); break;
      case K::OR2: case K::OR3: case K::OR4: expr = join("|"); break;
      case K::XOR2: expr = join("^"); break;
      case K::XNOR2: expr = "!(" + join("^") + ")"; break;
      case K::NAND2: expr = "!(" + join("&") + ")"; break;
      case K::NOR2: expr = "!(" + join("|") + ")"; break;
      case K::INV: expr = "!" + pins[0]; break;
      case K::BUF: expr = pins[0]; break;
      case K::CONST0: expr = "0"; break;
      case K::CONST1: expr = "1"; break;
      default: throw Error(ErrorCode::Unsupported, "no C lowering for " + std::string(name_of(f.kind)));
    }
  }
  os << "  return (unsigned char)(" << expr << ");\n}\n";
}

}  // namespace

std::string emit_header(const Program& p, const FlatDesign& d) {
  const auto sym = make_symbols(p, d);
  const auto guard = guard_of(sym.top);
  std::ostringstream os;
  os << "#ifndef " << guard << "\n#define " << guard << "\n\n#include <stdint.h>\n\n"
     << "#ifdef __cplusplus\nextern \"C\" {\n#endif\n\n"
     << "/* One call is one evaluation pass. Inputs by value, outputs through\n"
     << " * pointers, in port declaration order. A port narrower than its C type\n"
     << " * occupies the low bits: unused input bits are ignored, unused output\n"
     << " * bits are written as zero. Flip-flop state is global to the process. */\n";
  std::size_t ii = 0, oi = 0;
  for (std::size_t k = 0; k < p.port_order.size(); ++k) {
    const bool in = p.port_order[k] == Direction::Input;
    const auto& port = in ? p.inputs[ii++] : p.outputs[oi++];
    os << "/* " << (in ? "input " : "output ") << sym.ports[k] << ": " << port.width
       << (port.width == 1 ? " bit" : " bits") << " */\n";
  }
  os << c_prototype(p, sym) << ";\n\n"
     << "#ifdef __cplusplus\n}\n#endif\n\n#endif\n";
  return os.str();
}

std::string emit_c_source(const Program& p, const FlatDesign& d) {
  const auto sym = make_symbols(p, d);
  const auto proto = c_prototype(p, sym);
  std::ostringstream os;
  os << "#include <stdint.h>\n\n";
  if (!sym.ffs.empty()) {
    os << "struct nlc_ff {\n  unsigned char gv1;\n  unsigned char gv2;\n  unsigned char clk;\n};\n\n";
    for (const auto& ff : sym.ffs) os << "static struct nlc_ff nlc_ff_" << ff << ";\n";
    os << "\n";
  }
  for (const auto& f : used_fns(p)) {
    c_primitive(os, f);
    os << "\n";
  }

  os << proto << ";\n\n" << proto << "\n{\n";
  if (p.signal_count > 0) os << "  unsigned char nlc_s[" << p.signal_count << "];\n";
  auto read = [&](const Operand& o) -> std::string {
    if (o.is_const()) return o.value ? "1" : "0";
    return "nlc_s[" + std::to_string(o.signal) + "]";
  };
  std::vector<std::string> in_name, out_name;
  for (std::size_t k = 0; k < p.port_order.size(); ++k) {
    (p.port_order[k] == Direction::Input ? in_name : out_name).push_back(sym.ports[k]);
  }
  for (std::size_t i = 0; i < p.inputs.size(); ++i) {
    const auto& port = p.inputs[i];
    for (int b = 0; b < port.width; ++b) {
      os << "  nlc_s[" << port.bits[b].signal << "] = (unsigned char)(";
      if (b == 0) {
        os << in_name[i] << " & 1u);\n";
      } else {
        os << "(" << in_name[i] << " >> " << b << ") & 1u);\n";
      }
    }
  }
  for (const auto& step : p.steps) {
    const PrimFn f{step.kind, is_lut(step.kind) ? step.init : 0};
    os << "  nlc_s[" << step.output << "] = " << c_fn_name(f) << "(";
    bool first = true;
    std::string ff_state;
    if (step.ff_index >= 0) {
      ff_state = "nlc_ff_" + sym.ffs[step.ff_index];
      os << "&" << ff_state;
      first = false;
    }
    const int clk_pin = pin_with_role(step.kind, PinRole::Clock);
    for (std::size_t i = 0; i < step.inputs.size(); ++i) {
      if (!first) os << ", ";
      first = false;
      if (step.mode == SlotMode::ClockDisabledCopy && static_cast<int>(i) == clk_pin) {
        os << ff_state << ".clk";
      } else {
        os << read(step.inputs[i]);
      }
    }
    os << ");";
    if (step.mode == SlotMode::ClockDisabledCopy) os << " /* clock-disabled copy */";
    os << "\n";
  }
  for (std::size_t i = 0; i < p.outputs.size(); ++i) {
    const auto& port = p.outputs[i];
    const auto ty = c_type(port.width, port.name);
    os << "  *" << out_name[i] << " = (" << ty << ")(";
    for (int b = 0; b < port.width; ++b) {
      if (b) os << " | ";
      os << "((" << ty << ")" << read(port.bits[b]) << " << " << b << ")";
    }
    if (port.width == 0) os << "0";
    os << ");\n";
  }
  os << "}\n";
  return os.str();
}

std::string emit_c_testbench(const Program& p, const FlatDesign& d,
                             const std::string& header_name) {
  const auto sym = make_symbols(p, d);
  const std::size_t n_in = p.inputs.size();
  std::ostringstream os;
  os << "#include <stdio.h>\n#include <stdlib.h>\n\n#include \"" << header_name << "\"\n\n"
     << "int main(void)\n{\n  char line[4096];\n  while (fgets(line, sizeof line, stdin)) {\n";
  if (n_in > 0) {
    os << "    char *p = line;\n    unsigned long long v[" << n_in << "];\n    int i;\n";
  }
  for (std::size_t i = 0; i < p.outputs.size(); ++i) {
    os << "    " << c_type(p.outputs[i].width, p.outputs[i].name) << " o" << i << " = 0;\n";
  }
  if (n_in > 0) {
    os << "    for (i = 0; i < " << n_in << "; ++i) {\n"
       << "      char *end;\n      v[i] = strtoull(p, &end, 0);\n      p = end;\n    }\n";
  }
  os << "    " << sym.top << "(";
  std::size_t ii = 0, oi = 0;
  for (std::size_t k = 0; k < p.port_order.size(); ++k) {
    if (k) os << ", ";
    if (p.port_order[k] == Direction::Input) {
      os << "(" << c_type(p.inputs[ii].width, p.inputs[ii].name) << ")v[" << ii << "]";
      ++ii;
    } else {
      os << "&o" << oi++;
    }
  }
  os << ");\n    printf(\"";
  for (std::size_t i = 0; i < p.outputs.size(); ++i) os << (i ? ",%llu" : "%llu");
  os << "\\n\"";
  for (std::size_t i = 0; i < p.outputs.size(); ++i) os << ", (unsigned long long)o" << i;
  os << ");\n  }\n  return 0;\n}\n";
  return os.str();
}

}  // namespace nlc
