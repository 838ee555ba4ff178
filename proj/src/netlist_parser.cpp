#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "nlc/netlist.hpp"

namespace nlc {
namespace {

enum class Tok { Ident, Number, Based, Punct, Op, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceLoc loc;
  bool escaped = false;
};

const std::unordered_set<std::string>& behavioral_keywords() {
  static const std::unordered_set<std::string> kw{
      "always", "initial",  "generate", "genvar",   "reg",      "integer",
      "function", "task",   "if",       "case",     "for",      "while",
      "begin",  "end",      "parameter", "localparam", "tri",   "supply0",
      "supply1", "specify", "primitive", "always_ff", "always_comb", "logic"};
  return kw;
}

class Lexer {
 public:
  Lexer(const std::string& src, Diagnostics* diags) : src_(src), diags_(diags) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token t;
      t.loc = {line_, col_};
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (c == '`') {
        warn(t.loc, "compiler directive ignored");
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      if (c == '\\') {
        advance();
        std::string name;
        while (pos_ < src_.size() && !std::isspace(static_cast<unsigned char>(src_[pos_]))) {
          name += src_[pos_];
          advance();
        }
        if (name.empty()) throw Error(ErrorCode::Syntax, "empty escaped identifier", t.loc);
        t.kind = Tok::Ident;
        t.text = std::move(name);
        t.escaped = true;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Ident;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                      src_[pos_] == '_' || src_[pos_] == '$')) {
          t.text += src_[pos_];
          advance();
        }
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Tok::Number;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          if (src_[pos_] != '_') t.text += src_[pos_];
          advance();
        }
      } else if (c == '\'') {
        advance();
        t.kind = Tok::Based;
        if (pos_ < src_.size() && (src_[pos_] == 's' || src_[pos_] == 'S')) advance();
        if (pos_ >= src_.size()) throw Error(ErrorCode::Syntax, "truncated based literal", t.loc);
        t.text += static_cast<char>(std::tolower(static_cast<unsigned char>(src_[pos_])));
        advance();
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) advance();
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                      src_[pos_] == '_' || src_[pos_] == '?')) {
          if (src_[pos_] != '_') t.text += src_[pos_];
          advance();
        }
      } else if (std::string_view("()[]{},;:.#=").find(c) != std::string_view::npos) {
        t.kind = Tok::Punct;
        t.text = std::string(1, c);
        advance();
      } else {
        t.kind = Tok::Op;
        t.text = std::string(1, c);
        advance();
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void warn(SourceLoc loc, std::string msg) {
    if (diags_) diags_->warn(loc, std::move(msg));
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (src_.compare(pos_, 2, "//") == 0) {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (src_.compare(pos_, 2, "/*") == 0 || src_.compare(pos_, 2, "(*") == 0) {
        const SourceLoc start{line_, col_};
        const char* close = src_[pos_] == '/' ? "*/" : "*)";
        advance();
        advance();
        while (pos_ < src_.size() && src_.compare(pos_, 2, close) != 0) advance();
        if (pos_ >= src_.size()) throw Error(ErrorCode::Syntax, "unterminated comment", start);
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  const std::string& src_;
  Diagnostics* diags_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

std::uint64_t parse_digits(const std::string& digits, int base, SourceLoc loc) {
  if (digits.empty()) throw Error(ErrorCode::Syntax, "missing digits in literal", loc);
  unsigned __int128 value = 0;
  for (const char ch : digits) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (c == 'x' || c == 'z' || c == '?') {
      throw Error(ErrorCode::Unsupported, "x/z literal digits are not supported (2-state logic)",
                  loc);
    }
    int d = -1;
    if (c >= '0' && c <= '9') d = c - '0';
    if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    if (d < 0 || d >= base) {
      throw Error(ErrorCode::Syntax, std::string("invalid digit '") + ch + "' in literal", loc);
    }
    value = value * static_cast<unsigned>(base) + static_cast<unsigned>(d);
    if (value > UINT64_MAX) throw Error(ErrorCode::OutOfRange, "literal exceeds 64 bits", loc);
  }
  return static_cast<std::uint64_t>(value);
}

struct Literal {
  std::uint64_t value = 0;
  int width = 32;
  bool sized = false;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, Diagnostics* diags) : toks_(std::move(toks)), diags_(diags) {}

  Netlist run() {
    Netlist n;
    while (!at_end()) {
      if (is_ident("module")) {
        n.modules.push_back(parse_module());
      } else {
        syntax_error("'module'");
      }
    }
    return n;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Tok::End; }
  bool is_punct(char c, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Punct && peek(ahead).text[0] == c;
  }
  bool is_ident(const char* word) const {
    return peek().kind == Tok::Ident && !peek().escaped && peek().text == word;
  }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  [[noreturn]] void syntax_error(const std::string& expected) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    if (t.kind == Tok::Based) got = "based literal";
    throw Error(ErrorCode::Syntax, "expected " + expected + ", found " + got, t.loc);
  }

  void expect(char c) {
    if (!is_punct(c)) syntax_error(std::string("'") + c + "'");
    ++pos_;
  }

  Token expect_ident(const char* what) {
    if (peek().kind != Tok::Ident) syntax_error(what);
    return next();
  }

  int parse_int() {
    if (peek().kind != Tok::Number) syntax_error("integer");
    const Token t = next();
    const auto v = parse_digits(t.text, 10, t.loc);
    if (v > 1u << 30) throw Error(ErrorCode::OutOfRange, "index too large", t.loc);
    return static_cast<int>(v);
  }

  Literal parse_literal() {
    Literal lit;
    const SourceLoc loc = peek().loc;
    if (peek().kind == Tok::Number) {
      const Token t = next();
      if (peek().kind == Tok::Based) {
        const auto w = parse_digits(t.text, 10, t.loc);
        if (w == 0 || w > 64) {
          throw Error(ErrorCode::OutOfRange, "literal width must be 1..64", t.loc);
        }
        lit.width = static_cast<int>(w);
        lit.sized = true;
      } else {
        lit.value = parse_digits(t.text, 10, t.loc);
        return lit;
      }
    }
    if (peek().kind != Tok::Based) syntax_error("number");
    const Token b = next();
    const char base_ch = b.text[0];
    const int base = base_ch == 'h' ? 16 : base_ch == 'b' ? 2 : base_ch == 'o' ? 8 : base_ch == 'd' ? 10 : 0;
    if (base == 0) throw Error(ErrorCode::Syntax, "invalid literal base", b.loc);
    lit.value = parse_digits(b.text.substr(1), base, b.loc);
    if (lit.sized && lit.width < 64 && (lit.value >> lit.width) != 0) {
      throw Error(ErrorCode::OutOfRange,
                  "literal value does not fit in " + std::to_string(lit.width) + " bits", loc);
    }
    return lit;
  }

  std::optional<BitRange> parse_opt_range() {
    if (!is_punct('[')) return std::nullopt;
    ++pos_;
    BitRange r;
    r.msb = parse_int();
    expect(':');
    r.lsb = parse_int();
    expect(']');
    return r;
  }

  void reject_behavioral() const {
    const Token& t = peek();
    if (t.kind == Tok::Ident && !t.escaped && behavioral_keywords().count(t.text)) {
      throw Error(ErrorCode::Unsupported,
                  "'" + t.text + "' is not supported; only structural netlists are accepted", t.loc);
    }
  }

  ModuleDef parse_module() {
    ModuleDef m;
    m.loc = next().loc;  // 'module'
    m.name = expect_ident("module name").text;
    if (is_punct('#')) {
      throw Error(ErrorCode::Unsupported, "module parameters are not supported", peek().loc);
    }
    std::vector<std::pair<std::string, SourceLoc>> header;
    if (is_punct('(')) {
      ++pos_;
      if (!is_punct(')')) {
        if (is_ident("input") || is_ident("output") || is_ident("inout")) {
          parse_ansi_ports(m);
        } else {
          for (;;) {
            const Token t = expect_ident("port name");
            header.emplace_back(t.text, t.loc);
            if (!is_punct(',')) break;
            ++pos_;
          }
        }
      }
      expect(')');
    }
    expect(';');

    std::unordered_map<std::string, SourceLoc> pending;
    for (const auto& [name, loc] : header) {
      if (!pending.emplace(name, loc).second) {
        throw Error(ErrorCode::Duplicate, "duplicate port '" + name + "' in module header", loc);
      }
    }

    while (!is_ident("endmodule")) {
      if (at_end()) syntax_error("'endmodule'");
      reject_behavioral();
      if (is_ident("input") || is_ident("output") || is_ident("inout")) {
        parse_port_decl(m, pending);
      } else if (is_ident("wire")) {
        parse_wire_decl(m);
      } else if (is_ident("assign")) {
        parse_assign(m);
      } else if (is_ident("defparam")) {
        parse_defparam(m);
      } else if (peek().kind == Tok::Ident) {
        parse_instances(m);
      } else {
        syntax_error("declaration, instantiation, or 'endmodule'");
      }
    }
    ++pos_;

    if (!pending.empty()) {
      const auto it = std::min_element(pending.begin(), pending.end(), [](auto& a, auto& b) {
        return a.second.line < b.second.line ||
               (a.second.line == b.second.line && a.second.col < b.second.col);
      });
      throw Error(ErrorCode::Undeclared,
                  "port '" + it->first + "' has no input/output declaration", it->second);
    }
    // Header order defines port order.
    if (!header.empty()) {
      std::vector<PortDecl> ordered;
      for (const auto& [name, loc] : header) {
        ordered.push_back(*m.find_port(name));
      }
      m.ports = std::move(ordered);
    }
    for (auto& cell : m.cells) {
      if (auto it = defparams_.find(cell.name); it != defparams_.end()) {
        for (auto& [k, v] : it->second) cell.params[k] = v;
        defparams_.erase(it);
      }
    }
    if (!defparams_.empty()) {
      const auto& [inst, _] = *defparams_.begin();
      throw Error(ErrorCode::Undeclared, "defparam targets undeclared instance '" + inst + "'",
                  defparam_locs_[inst]);
    }
    defparam_locs_.clear();
    return m;
  }

  Direction parse_direction() {
    const Token t = next();
    if (t.text == "inout") {
      throw Error(ErrorCode::Inout, "inout ports are not supported", t.loc);
    }
    return t.text == "input" ? Direction::Input : Direction::Output;
  }

  void skip_wire_keyword() {
    if (is_ident("wire")) ++pos_;
    if (is_ident("reg")) {
      throw Error(ErrorCode::Unsupported, "'reg' is not supported; only structural netlists are accepted",
                  peek().loc);
    }
  }

  void parse_ansi_ports(ModuleDef& m) {
    Direction dir = Direction::Input;
    std::optional<BitRange> range;
    for (;;) {
      if (is_ident("input") || is_ident("output") || is_ident("inout")) {
        dir = parse_direction();
        skip_wire_keyword();
        range = parse_opt_range();
      }
      const Token t = expect_ident("port name");
      add_port(m, PortDecl{t.text, dir, range, t.loc});
      if (!is_punct(',')) break;
      ++pos_;
    }
  }

  void add_port(ModuleDef& m, PortDecl p) {
    if (m.find_port(p.name) || m.find_net(p.name)) {
      throw Error(ErrorCode::Duplicate, "duplicate declaration of '" + p.name + "'", p.loc);
    }
    m.ports.push_back(std::move(p));
  }

  void parse_port_decl(ModuleDef& m, std::unordered_map<std::string, SourceLoc>& pending) {
    const Direction dir = parse_direction();
    skip_wire_keyword();
    const auto range = parse_opt_range();
    for (;;) {
      const Token t = expect_ident("port name");
      if (!pending.erase(t.text)) {
        if (m.find_port(t.text)) {
          throw Error(ErrorCode::Duplicate, "duplicate declaration of '" + t.text + "'", t.loc);
        }
        throw Error(ErrorCode::Undeclared,
                    "'" + t.text + "' is declared " +
                        (dir == Direction::Input ? "input" : "output") +
                        " but is not in the module port list",
                    t.loc);
      }
      add_port(m, PortDecl{t.text, dir, range, t.loc});
      if (!is_punct(',')) break;
      ++pos_;
    }
    expect(';');
  }

  void parse_wire_decl(ModuleDef& m) {
    ++pos_;  // wire
    const auto range = parse_opt_range();
    for (;;) {
      const Token t = expect_ident("wire name");
      if (const PortDecl* p = m.find_port(t.text)) {
        // Redeclaring a port as a wire of the same shape is legal and common.
        if (p->range != range) {
          throw Error(ErrorCode::Duplicate,
                      "wire '" + t.text + "' redeclares a port with a different range", t.loc);
        }
      } else if (m.find_net(t.text)) {
        throw Error(ErrorCode::Duplicate, "duplicate declaration of '" + t.text + "'", t.loc);
      } else {
        m.nets.push_back(NetDecl{t.text, range, t.loc});
      }
      if (!is_punct(',')) break;
      ++pos_;
    }
    expect(';');
  }

  BitRef parse_primary() {
    BitRef r;
    r.loc = peek().loc;
    if (peek().kind == Tok::Ident) {
      r.kind = BitRef::Kind::Ref;
      r.name = next().text;
      if (is_punct('[')) {
        ++pos_;
        BitRange sel;
        sel.msb = parse_int();
        sel.lsb = sel.msb;
        if (is_punct(':')) {
          ++pos_;
          sel.lsb = parse_int();
        }
        expect(']');
        r.select = sel;
      }
      return r;
    }
    if (peek().kind == Tok::Number || peek().kind == Tok::Based) {
      const Literal lit = parse_literal();
      r.kind = BitRef::Kind::Const;
      r.value = lit.value;
      r.const_width = lit.sized ? lit.width : 32;
      return r;
    }
    syntax_error("identifier, constant, or '{'");
  }

  std::vector<BitRef> parse_expr() {
    std::vector<BitRef> parts;
    if (is_punct('{')) {
      ++pos_;
      for (;;) {
        auto sub = parse_expr();
        parts.insert(parts.end(), sub.begin(), sub.end());
        if (!is_punct(',')) break;
        ++pos_;
      }
      expect('}');
    } else {
      parts.push_back(parse_primary());
    }
    if (peek().kind == Tok::Op) {
      throw Error(ErrorCode::Unsupported,
                  "operator '" + peek().text + "' is not supported; connections must be plain nets",
                  peek().loc);
    }
    return parts;
  }

  void parse_assign(ModuleDef& m) {
    Alias a;
    a.loc = next().loc;
    a.lhs = parse_expr();
    expect('=');
    a.rhs = parse_expr();
    expect(';');
    m.aliases.push_back(std::move(a));
  }

  void parse_defparam(ModuleDef& m) {
    (void)m;
    ++pos_;
    for (;;) {
      const Token inst = expect_ident("instance name");
      expect('.');
      const Token param = expect_ident("parameter name");
      expect('=');
      defparams_[inst.text][param.text] = parse_literal().value;
      defparam_locs_.emplace(inst.text, inst.loc);
      if (!is_punct(',')) break;
      ++pos_;
    }
    expect(';');
  }

  void parse_instances(ModuleDef& m) {
    const Token kind = next();
    std::map<std::string, std::uint64_t> params;
    if (is_punct('#')) {
      const SourceLoc hash = next().loc;
      if (is_punct('(')) {
        ++pos_;
        if (!is_punct(')')) {
          for (;;) {
            if (!is_punct('.')) {
              throw Error(ErrorCode::Unsupported, "positional parameter overrides are not supported",
                          peek().loc);
            }
            ++pos_;
            const Token p = expect_ident("parameter name");
            expect('(');
            const auto lit = parse_literal();
            expect(')');
            if (!params.emplace(p.text, lit.value).second) {
              throw Error(ErrorCode::Duplicate, "duplicate parameter '" + p.text + "'", p.loc);
            }
            if (!is_punct(',')) break;
            ++pos_;
          }
        }
        expect(')');
      } else if (peek().kind == Tok::Number || peek().kind == Tok::Based) {
        parse_literal();
        if (diags_) diags_->warn(hash, "delay annotation ignored");
      } else {
        syntax_error("'(' or delay value");
      }
    }
    for (;;) {
      CellInst c;
      c.kind = kind.text;
      c.params = params;
      const Token name = expect_ident("instance name");
      c.name = name.text;
      c.loc = name.loc;
      if (is_punct('[')) {
        throw Error(ErrorCode::Unsupported, "instance arrays are not supported", peek().loc);
      }
      expect('(');
      if (!is_punct(')')) {
        for (;;) {
          if (!is_punct('.')) {
            throw Error(ErrorCode::Unsupported,
                        "positional port connections are not supported; use .PORT(net)",
                        peek().loc);
          }
          Connection conn;
          conn.loc = next().loc;
          conn.formal = expect_ident("port name").text;
          expect('(');
          if (!is_punct(')')) conn.parts = parse_expr();
          expect(')');
          c.conns.push_back(std::move(conn));
          if (!is_punct(',')) break;
          ++pos_;
        }
      }
      expect(')');
      m.cells.push_back(std::move(c));
      if (!is_punct(',')) break;
      ++pos_;
    }
    expect(';');
  }

  std::vector<Token> toks_;
  Diagnostics* diags_;
  std::size_t pos_ = 0;
  std::map<std::string, std::map<std::string, std::uint64_t>> defparams_;
  std::map<std::string, SourceLoc> defparam_locs_;
};

// ---------------------------------------------------------------------------
// Validation

class Validator {
 public:
  Validator(Netlist& n, Diagnostics* diags) : n_(n), diags_(diags) {}

  void run() {
    std::set<std::string> names;
    for (const auto& m : n_.modules) {
      if (!names.insert(m.name).second) {
        throw Error(ErrorCode::Duplicate, "duplicate module '" + m.name + "'", m.loc);
      }
      if (find_kind(m.name)) {
        throw Error(ErrorCode::Duplicate, "module '" + m.name + "' shadows a primitive", m.loc);
      }
    }
    for (auto& m : n_.modules) check_module(m);
  }

 private:
  int width_of(const ModuleDef& m, const BitRef& r) const {
    if (r.kind == BitRef::Kind::Const) return r.const_width;
    const auto range = m.signal_range(r.name);
    if (!range) {
      throw Error(ErrorCode::Undeclared, "undeclared identifier '" + r.name + "'", r.loc);
    }
    if (!r.select) return range->width();
    for (const int idx : {r.select->msb, r.select->lsb}) {
      if (!range->contains(idx)) {
        throw Error(ErrorCode::OutOfRange,
                    "index " + std::to_string(idx) + " out of range for '" + r.name + "' [" +
                        std::to_string(range->msb) + ":" + std::to_string(range->lsb) + "]",
                    r.loc);
      }
    }
    return r.select->width();
  }

  int width_of(const ModuleDef& m, const std::vector<BitRef>& parts) const {
    int w = 0;
    for (const auto& p : parts) w += width_of(m, p);
    return w;
  }

  static bool has_const(const std::vector<BitRef>& parts) {
    return std::any_of(parts.begin(), parts.end(),
                       [](const BitRef& r) { return r.kind == BitRef::Kind::Const; });
  }

  void check_module(ModuleDef& m) {
    std::set<std::string> inst_names;
    for (auto& c : m.cells) {
      if (!inst_names.insert(c.name).second) {
        throw Error(ErrorCode::Duplicate, "duplicate instance name '" + c.name + "'", c.loc);
      }
      if (auto kind = find_kind(c.kind)) {
        check_primitive(m, c, *kind);
      } else if (const ModuleDef* sub = n_.find(c.kind)) {
        check_submodule(m, c, *sub);
      } else if (is_unsupported_macro(c.kind)) {
        throw Error(ErrorCode::Unsupported,
                    "'" + c.kind + "': DSP and RAM blocks are not supported; map them to LUTs and "
                    "flip-flops before compiling",
                    c.loc);
      } else {
        throw Error(ErrorCode::UnknownPrimitive, "unknown primitive kind '" + c.kind + "'", c.loc);
      }
    }
    for (const auto& a : m.aliases) {
      const int lw = width_of(m, a.lhs);
      const int rw = width_of(m, a.rhs);
      if (has_const(a.lhs)) {
        throw Error(ErrorCode::Syntax, "assign target must be a net", a.loc);
      }
      if (lw != rw) {
        throw Error(ErrorCode::Width,
                    "assign width mismatch: " + std::to_string(lw) + " vs " + std::to_string(rw),
                    a.loc);
      }
    }
  }

  void check_primitive(const ModuleDef& m, CellInst& c, PrimitiveKind kind) {
    std::set<std::string> seen;
    for (const auto& conn : c.conns) {
      const int pin = find_pin(kind, conn.formal);
      if (pin < 0) {
        throw Error(ErrorCode::Undeclared,
                    std::string(name_of(kind)) + " has no port '" + conn.formal + "'", conn.loc);
      }
      if (!seen.insert(conn.formal).second) {
        throw Error(ErrorCode::Duplicate, "port '" + conn.formal + "' connected twice", conn.loc);
      }
      if (conn.parts.empty()) continue;
      const int w = width_of(m, conn.parts);
      if (w != 1) {
        throw Error(ErrorCode::Width,
                    std::string(name_of(kind)) + "." + conn.formal + " is 1 bit wide, connection is " +
                        std::to_string(w),
                    conn.loc);
      }
      if (info(kind).pins[pin].dir == PinDir::Out && has_const(conn.parts)) {
        throw Error(ErrorCode::Syntax, "output pin " + conn.formal + " cannot drive a constant",
                    conn.loc);
      }
    }
    const int k = lut_inputs(kind);
    for (const auto& [param, value] : c.params) {
      if (param == "INIT" && k > 0) {
        LutSpec spec{k, value};
        try {
          spec.validate();
        } catch (const Error& e) {
          throw Error(ErrorCode::OutOfRange, std::string(e.what()) + " on '" + c.name + "'", c.loc);
        }
      } else if (param == "INIT" && is_clocked(kind)) {
        if (value != 0) {
          throw Error(ErrorCode::Unsupported,
                      "non-zero flip-flop INIT on '" + c.name + "'; all state initialises to 0",
                      c.loc);
        }
      } else if (diags_) {
        diags_->warn(c.loc, "parameter '" + param + "' on '" + c.name + "' ignored");
      }
    }
    if (k > 0 && !c.params.count("INIT")) {
      throw Error(ErrorCode::MissingPin, "LUT instance '" + c.name + "' has no INIT parameter",
                  c.loc);
    }
  }

  void check_submodule(const ModuleDef& m, const CellInst& c, const ModuleDef& sub) {
    std::set<std::string> seen;
    for (const auto& conn : c.conns) {
      const PortDecl* p = sub.find_port(conn.formal);
      if (!p) {
        throw Error(ErrorCode::Undeclared, "module '" + sub.name + "' has no port '" + conn.formal + "'",
                    conn.loc);
      }
      if (!seen.insert(conn.formal).second) {
        throw Error(ErrorCode::Duplicate, "port '" + conn.formal + "' connected twice", conn.loc);
      }
      if (conn.parts.empty()) continue;
      const int w = width_of(m, conn.parts);
      if (w != p->width()) {
        throw Error(ErrorCode::Width,
                    "port '" + conn.formal + "' of '" + sub.name + "' is " +
                        std::to_string(p->width()) + " bits, connection is " + std::to_string(w),
                    conn.loc);
      }
      if (p->dir == Direction::Output && has_const(conn.parts)) {
        throw Error(ErrorCode::Syntax, "output port " + conn.formal + " cannot drive a constant",
                    conn.loc);
      }
    }
    if (!c.params.empty() && diags_) {
      diags_->warn(c.loc, "parameters on module instance '" + c.name + "' ignored");
    }
  }

  Netlist& n_;
  Diagnostics* diags_;
};

void pick_top(Netlist& n, const std::string& requested) {
  if (!requested.empty()) {
    if (!n.find(requested)) {
      throw Error(ErrorCode::Unresolved, "top module '" + requested + "' not found");
    }
    n.top = requested;
    return;
  }
  std::set<std::string> instantiated;
  for (const auto& m : n.modules) {
    for (const auto& c : m.cells) {
      if (c.kind != m.name) instantiated.insert(c.kind);
    }
  }
  std::vector<std::string> roots;
  for (const auto& m : n.modules) {
    if (!instantiated.count(m.name)) roots.push_back(m.name);
  }
  if (n.modules.empty()) throw Error(ErrorCode::Syntax, "no module found");
  if (roots.size() != 1) {
    throw Error(ErrorCode::Unresolved,
                roots.empty() ? "no top-level module (every module is instantiated)"
                              : "several top-level candidates; select one with --top");
  }
  n.top = roots.front();
}

}  // namespace

const PortDecl* ModuleDef::find_port(const std::string& n) const {
  for (const auto& p : ports) {
    if (p.name == n) return &p;
  }
  return nullptr;
}

const NetDecl* ModuleDef::find_net(const std::string& n) const {
  for (const auto& w : nets) {
    if (w.name == n) return &w;
  }
  return nullptr;
}

std::optional<BitRange> ModuleDef::signal_range(const std::string& n) const {
  if (const auto* p = find_port(n)) return p->bits();
  if (const auto* w = find_net(n)) return w->bits();
  return std::nullopt;
}

const ModuleDef* Netlist::find(const std::string& name) const {
  for (const auto& m : modules) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

Netlist parse_netlist(const std::string& source, const ParseOptions& opts, Diagnostics* diags) {
  Lexer lexer(source, diags);
  Parser parser(lexer.run(), diags);
  Netlist n = parser.run();
  Validator(n, diags).run();
  pick_top(n, opts.top);
  return n;
}

}  // namespace nlc
