#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "nlc/netlist.hpp"

namespace nlc {
namespace {

bool is_simple_identifier(const std::string& s) {
  static const char* const kKeywords[] = {"module", "endmodule", "input", "output", "inout",
                                          "wire",   "assign",    "defparam", "reg"};
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (const char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$')) return false;
  }
  return std::none_of(std::begin(kKeywords), std::end(kKeywords),
                      [&](const char* k) { return s == k; });
}

std::string ident(const std::string& s) {
  return is_simple_identifier(s) ? s : "\\" + s + " ";
}

std::string range_text(const std::optional<BitRange>& r) {
  if (!r) return "";
  return "[" + std::to_string(r->msb) + ":" + std::to_string(r->lsb) + "] ";
}

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::uppercase << v;
  return os.str();
}

std::string part_text(const BitRef& r) {
  if (r.kind == BitRef::Kind::Const) {
    return std::to_string(r.const_width) + "'h" + hex(r.value);
  }
  std::string s = ident(r.name);
  if (r.select) {
    s += "[" + std::to_string(r.select->msb);
    if (r.select->lsb != r.select->msb) s += ":" + std::to_string(r.select->lsb);
    s += "]";
  }
  return s;
}

std::string expr_text(const std::vector<BitRef>& parts) {
  if (parts.size() == 1) return part_text(parts.front());
  std::string s = "{";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ", ";
    s += part_text(parts[i]);
  }
  return s + "}";
}

bool same_parts(const std::vector<BitRef>& a, const std::vector<BitRef>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](const BitRef& x, const BitRef& y) {
    if (x.kind != y.kind) return false;
    if (x.kind == BitRef::Kind::Const) {
      return x.value == y.value && x.const_width == y.const_width;
    }
    return x.name == y.name && x.select == y.select;
  });
}

}  // namespace

std::string print_netlist(const Netlist& n) {
  std::ostringstream os;
  bool first = true;
  for (const auto& m : n.modules) {
    if (!first) os << '\n';
    first = false;
    os << "module " << ident(m.name) << " (";
    for (std::size_t i = 0; i < m.ports.size(); ++i) {
      os << (i ? ", " : "") << ident(m.ports[i].name);
    }
    os << ");\n";
    for (const auto& p : m.ports) {
      os << "  " << (p.dir == Direction::Input ? "input " : "output ") << range_text(p.range)
         << ident(p.name) << ";\n";
    }
    for (const auto& w : m.nets) {
      os << "  wire " << range_text(w.range) << ident(w.name) << ";\n";
    }
    for (const auto& c : m.cells) {
      os << "  " << ident(c.kind) << ' ';
      if (!c.params.empty()) {
        os << "#(";
        bool sep = false;
        const auto kind = find_kind(c.kind);
        for (const auto& [k, v] : c.params) {
          os << (sep ? ", " : "") << '.' << k << '(';
          if (kind && is_lut(*kind) && k == "INIT") {
            os << (1 << lut_inputs(*kind)) << "'h" << hex(v);
          } else {
            os << v;
          }
          os << ')';
          sep = true;
        }
        os << ") ";
      }
      os << ident(c.name) << " (";
      for (std::size_t i = 0; i < c.conns.size(); ++i) {
        const auto& conn = c.conns[i];
        os << (i ? ", " : "") << '.' << conn.formal << '(' << (conn.parts.empty() ? "" : expr_text(conn.parts))
           << ')';
      }
      os << ");\n";
    }
    for (const auto& a : m.aliases) {
      os << "  assign " << expr_text(a.lhs) << " = " << expr_text(a.rhs) << ";\n";
    }
    os << "endmodule\n";
  }
  return os.str();
}

bool same_structure(const Netlist& a, const Netlist& b) {
  if (a.top != b.top || a.modules.size() != b.modules.size()) return false;
  for (std::size_t i = 0; i < a.modules.size(); ++i) {
    const auto& x = a.modules[i];
    const auto& y = b.modules[i];
    if (x.name != y.name) return false;
    if (!std::equal(x.ports.begin(), x.ports.end(), y.ports.begin(), y.ports.end(),
                    [](auto& p, auto& q) {
                      return p.name == q.name && p.dir == q.dir && p.range == q.range;
                    })) {
      return false;
    }
    if (!std::equal(x.nets.begin(), x.nets.end(), y.nets.begin(), y.nets.end(),
                    [](auto& p, auto& q) { return p.name == q.name && p.range == q.range; })) {
      return false;
    }
    if (!std::equal(x.cells.begin(), x.cells.end(), y.cells.begin(), y.cells.end(),
                    [](const CellInst& p, const CellInst& q) {
                      return p.name == q.name && p.kind == q.kind && p.params == q.params &&
                             std::equal(p.conns.begin(), p.conns.end(), q.conns.begin(),
                                        q.conns.end(), [](auto& c, auto& d) {
                                          return c.formal == d.formal && same_parts(c.parts, d.parts);
                                        });
                    })) {
      return false;
    }
    if (!std::equal(x.aliases.begin(), x.aliases.end(), y.aliases.begin(), y.aliases.end(),
                    [](auto& p, auto& q) {
                      return same_parts(p.lhs, q.lhs) && same_parts(p.rhs, q.rhs);
                    })) {
      return false;
    }
  }
  return true;
}

std::vector<int> FlatDesign::inputs() const {
  std::vector<int> out;
  for (int p : ports) {
    if (nets[p].dir == Direction::Input) out.push_back(p);
  }
  return out;
}

std::vector<int> FlatDesign::outputs() const {
  std::vector<int> out;
  for (int p : ports) {
    if (nets[p].dir == Direction::Output) out.push_back(p);
  }
  return out;
}

namespace {

class Elaborator {
 public:
  explicit Elaborator(const Netlist& n) : n_(n) {}

  FlatDesign run(const std::string& top) {
    const ModuleDef* m = n_.find(top);
    if (!m) throw Error(ErrorCode::Unresolved, "top module '" + top + "' not found");
    d_.name = m->name;
    Scope scope;
    for (const auto& p : m->ports) {
      const int id = add_net(p.name, p.bits(), true, p.dir);
      d_.ports.push_back(id);
      scope.bits[p.name] = whole_net(id);
      scope.ranges[p.name] = p.bits();
    }
    stack_.push_back(m->name);
    expand(*m, "", scope);
    return std::move(d_);
  }

 private:
  /// Name → bits (lsb first) of every port and net visible in one module body.
  struct Scope {
    std::unordered_map<std::string, std::vector<FlatBit>> bits;
    std::unordered_map<std::string, BitRange> ranges;
  };

  int add_net(const std::string& name, BitRange range, bool is_port, Direction dir) {
    FlatNet net;
    net.name = name;
    net.range = range;
    net.width = range.width();
    net.is_port = is_port;
    net.dir = dir;
    d_.nets.push_back(std::move(net));
    return static_cast<int>(d_.nets.size()) - 1;
  }

  std::vector<FlatBit> whole_net(int id) const {
    std::vector<FlatBit> bits;
    for (int i = 0; i < d_.nets[id].width; ++i) bits.push_back({id, i, false});
    return bits;
  }

  static std::vector<FlatBit> resolve(const Scope& s, const std::vector<BitRef>& parts) {
    std::vector<FlatBit> out;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
      const BitRef& r = *it;
      if (r.kind == BitRef::Kind::Const) {
        for (int i = 0; i < r.const_width; ++i) {
          out.push_back({-1, 0, i < 64 && ((r.value >> i) & 1u) != 0});
        }
        continue;
      }
      const auto& bits = s.bits.at(r.name);
      if (!r.select) {
        out.insert(out.end(), bits.begin(), bits.end());
        continue;
      }
      const BitRange& decl = s.ranges.at(r.name);
      const int step = r.select->msb >= r.select->lsb ? -1 : 1;
      // Walk from the selected lsb toward the msb.
      for (int i = r.select->lsb;; i -= step) {
        out.push_back(bits[decl.offset(i)]);
        if (i == r.select->msb) break;
      }
    }
    return out;
  }

  void expand(const ModuleDef& m, const std::string& prefix, Scope& scope) {
    for (const auto& w : m.nets) {
      const int id = add_net(prefix + w.name, w.bits(), false, Direction::Input);
      scope.bits[w.name] = whole_net(id);
      scope.ranges[w.name] = w.bits();
    }
    for (const auto& c : m.cells) {
      if (auto kind = find_kind(c.kind)) {
        FlatCell fc;
        fc.name = prefix + c.name;
        fc.kind = *kind;
        fc.loc = c.loc;
        if (auto it = c.params.find("INIT"); it != c.params.end() && is_lut(*kind)) {
          fc.init = it->second;
        }
        fc.pins.resize(info(*kind).pins.size());
        for (const auto& conn : c.conns) {
          if (conn.parts.empty()) continue;
          const auto bits = resolve(scope, conn.parts);
          fc.pins[find_pin(*kind, conn.formal)] = bits.front();
        }
        d_.cells.push_back(std::move(fc));
        continue;
      }
      const ModuleDef* sub = n_.find(c.kind);
      if (!sub) {
        throw Error(ErrorCode::Unresolved, "unresolved module '" + c.kind + "'", c.loc);
      }
      if (std::find(stack_.begin(), stack_.end(), sub->name) != stack_.end()) {
        std::string chain;
        for (const auto& s : stack_) chain += s + " -> ";
        throw Error(ErrorCode::Recursion,
                    "recursive instantiation of '" + sub->name + "' (" + chain + sub->name + ")",
                    c.loc);
      }
      const std::string inner = prefix + c.name + ".";
      Scope sub_scope;
      for (const auto& p : sub->ports) {
        const Connection* conn = nullptr;
        for (const auto& cc : c.conns) {
          if (cc.formal == p.name && !cc.parts.empty()) conn = &cc;
        }
        std::vector<FlatBit> bits;
        if (conn) {
          bits = resolve(scope, conn->parts);
        } else if (p.dir == Direction::Input) {
          bits.assign(p.width(), FlatBit{});
        } else {
          bits = whole_net(add_net(inner + p.name, p.bits(), false, Direction::Input));
        }
        sub_scope.bits[p.name] = std::move(bits);
        sub_scope.ranges[p.name] = p.bits();
      }
      stack_.push_back(sub->name);
      expand(*sub, inner, sub_scope);
      stack_.pop_back();
    }
    for (const auto& a : m.aliases) {
      const auto lhs = resolve(scope, a.lhs);
      const auto rhs = resolve(scope, a.rhs);
      for (std::size_t i = 0; i < lhs.size(); ++i) d_.aliases.emplace_back(lhs[i], rhs[i]);
    }
  }

  const Netlist& n_;
  FlatDesign d_;
  std::vector<std::string> stack_;
};

}  // namespace

FlatDesign elaborate(const Netlist& n, const std::string& top) {
  return Elaborator(n).run(top);
}

}  // namespace nlc
