#include "lca/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace lca::dsl {

ParseError::ParseError(const std::string& message, int line, int col)
    : std::runtime_error(message + " at line " + std::to_string(line) + ", col " + std::to_string(col)),
      message_(message),
      line_(line),
      col_(col) {}

const AlgebraDecl* SourceDoc::find_algebra(const std::string& name) const {
  for (const auto& a : algebras)
    if (a.name == name) return &a;
  return nullptr;
}

const ModuleDecl* SourceDoc::find_module(const std::string& name) const {
  for (const auto& m : modules)
    if (m.name == name) return &m;
  return nullptr;
}

namespace {

// ---- lexer --------------------------------------------------------------------

enum class Tok { Ident, Int, String, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n = 1) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n')
        ++line, col = 1;
      else
        ++col;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    int l0 = line, c0 = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, src.substr(i, j - i), l0, c0});
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.')
        throw ParseError("decimal notation is not accepted; write p/q", l0, c0);
      out.push_back({Tok::Int, src.substr(i, j - i), l0, c0});
      advance(j - i);
    } else if (c == '"') {
      std::string s;
      advance();
      for (;;) {
        if (i >= src.size() || src[i] == '\n') throw ParseError("unterminated string", l0, c0);
        if (src[i] == '"') break;
        if (src[i] == '\\' && i + 1 < src.size()) advance();
        s += src[i];
        advance();
      }
      advance();
      out.push_back({Tok::String, s, l0, c0});
    } else if (c == '!' && i + 1 < src.size() && src[i + 1] == '=') {
      out.push_back({Tok::Punct, "!=", l0, c0});
      advance(2);
    } else if (std::string("{}()[];,:=+-*/^").find(c) != std::string::npos) {
      out.push_back({Tok::Punct, std::string(1, c), l0, c0});
      advance();
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", l0, c0);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const std::set<std::string> kReserved = {"d", "l", "m"};

VarId gen_var(const std::string& g) { return VarId::param("@" + g); }

// ---- parser -------------------------------------------------------------------

struct Scope {
  const std::set<std::string>* params = nullptr;  // null: any name is a parameter
  const std::vector<std::string>* gens = nullptr;
};

class Parser {
public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  SourceDoc document();
  Poly lone_poly() {
    Scope any;
    Poly p = expr(any);
    if (peek().kind != Tok::End) fail_unexpected("end of input");
    return p;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool at(const char* punct) const { return peek().kind == Tok::Punct && peek().text == punct; }
  bool at_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }

  [[noreturn]] void fail(const std::string& msg, const Token& t) const {
    throw ParseError(msg, t.line, t.col);
  }
  [[noreturn]] void fail_unexpected(const std::string& expected) const {
    const Token& t = peek();
    if (t.kind == Tok::Punct && t.text == ")") fail("unbalanced parenthesis", t);
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    fail("expected " + expected + " but found " + got, t);
  }

  void expect(const char* punct) {
    if (!at(punct)) fail_unexpected(std::string("'") + punct + "'");
    ++pos_;
  }
  void expect_word(const char* w) {
    if (!at_word(w)) fail_unexpected(std::string("'") + w + "'");
    ++pos_;
  }
  std::string ident(const char* what = "identifier") {
    if (peek().kind != Tok::Ident) fail_unexpected(what);
    return next().text;
  }
  std::string string_lit() {
    if (peek().kind != Tok::String) fail_unexpected("string");
    return next().text;
  }
  long small_int() {
    if (peek().kind != Tok::Int) fail_unexpected("integer");
    const Token& t = next();
    if (t.text.size() > 6) fail("integer too large", t);
    return std::stol(t.text);
  }

  std::vector<std::string> ident_list(const char* what) {
    std::vector<std::string> out{ident(what)};
    while (at(",")) {
      ++pos_;
      out.push_back(ident(what));
    }
    return out;
  }

  std::vector<std::string> name_list(const char* what) {
    auto names = ident_list(what);
    std::set<std::string> seen;
    for (std::size_t k = 0; k < names.size(); ++k) {
      if (kReserved.count(names[k]))
        fail("'" + names[k] + "' is reserved", toks_[pos_ - 2 * (names.size() - k) + 1]);
      if (!seen.insert(names[k]).second)
        fail("duplicate declaration of '" + names[k] + "'", toks_[pos_ - 1]);
    }
    return names;
  }

  Scalar rational() {
    bool neg = false;
    if (at("-")) ++pos_, neg = true;
    if (peek().kind != Tok::Int) fail_unexpected("rational number");
    const Token& t = next();
    Integer num(t.text), den(1);
    if (at("/")) {
      ++pos_;
      if (peek().kind != Tok::Int) fail_unexpected("denominator");
      const Token& u = next();
      den = Integer(u.text);
      if (den == 0) fail("zero denominator", u);
    }
    Rational q(num, den);
    q.canonicalize();
    return Scalar(neg ? Rational(-q) : q);
  }

  ExtShape shape() {
    const Token& t = peek();
    std::string s = ident("shape");
    while (at("-")) {
      ++pos_;
      s += "-" + ident("shape");
    }
    try {
      return parse_shape(s);
    } catch (const std::invalid_argument& e) {
      fail(e.what(), t);
    }
  }

  // expr := ['+'|'-'] term { ('+'|'-') term }
  Poly expr(const Scope& sc) {
    bool neg = false;
    if (at("-") || at("+")) neg = next().text == "-";
    Poly acc = term(sc);
    if (neg) acc = -acc;
    while (at("+") || at("-")) {
      bool minus = next().text == "-";
      Poly t = term(sc);
      if (minus)
        acc -= t;
      else
        acc += t;
    }
    return acc;
  }

  bool starts_factor() const {
    return peek().kind == Tok::Int || peek().kind == Tok::Ident || at("(");
  }

  // term := factor { ['*'] factor }
  Poly term(const Scope& sc) {
    Poly acc = factor(sc);
    for (;;) {
      if (at("*")) {
        ++pos_;
        acc = acc * factor(sc);
      } else if (starts_factor()) {
        acc = acc * factor(sc);
      } else {
        return acc;
      }
    }
  }

  // factor := atom ['^' INT]
  Poly factor(const Scope& sc) {
    Poly base = atom(sc);
    if (at("^")) {
      ++pos_;
      if (peek().kind != Tok::Int) fail("exponent must be a nonnegative integer", peek());
      const Token& t = next();
      if (t.text.size() > 4) fail("exponent too large", t);
      base = base.pow(static_cast<unsigned>(std::stoul(t.text)));
    }
    return base;
  }

  Poly atom(const Scope& sc) {
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      ++pos_;
      Integer num(t.text), den(1);
      if (at("/")) {
        ++pos_;
        if (peek().kind != Tok::Int) fail("division is only allowed in p/q literals", peek());
        const Token& u = next();
        den = Integer(u.text);
        if (den == 0) fail("zero denominator", u);
      }
      Rational q(num, den);
      q.canonicalize();
      return Poly(Scalar(q));
    }
    if (t.kind == Tok::Ident) {
      ++pos_;
      if (t.text == "d") return Poly::var(kPartial);
      if (t.text == "l") return Poly::var(kLambda);
      if (t.text == "m") return Poly::var(kMu);
      if (sc.gens && std::find(sc.gens->begin(), sc.gens->end(), t.text) != sc.gens->end())
        return Poly::var(gen_var(t.text));
      if (sc.params && !sc.params->count(t.text)) fail("unknown identifier '" + t.text + "'", t);
      return Poly::param(t.text);
    }
    if (at("(")) {
      ++pos_;
      Poly inner = expr(sc);
      if (!at(")")) fail("unbalanced parenthesis", t);
      ++pos_;
      return inner;
    }
    fail_unexpected("polynomial");
  }

  // Splits a bracket value into generator coefficients.
  std::vector<std::pair<std::string, Poly>> split_linear(const Poly& p, const std::vector<std::string>& gens,
                                                         const Token& where) {
    std::vector<Poly> coef(gens.size());
    for (const auto& [mono, c] : p.terms()) {
      int hit = -1;
      Monomial rest;
      for (const auto& [v, e] : mono.factors()) {
        bool is_gen = v.is_param() && !v.name().empty() && v.name()[0] == '@';
        if (!is_gen) {
          rest = rest * Monomial::of(v, e);
          continue;
        }
        if (hit >= 0 || e != 1) fail("bracket value must be linear in the generators", where);
        auto it = std::find(gens.begin(), gens.end(), v.name().substr(1));
        hit = static_cast<int>(it - gens.begin());
      }
      if (hit < 0) fail("bracket value must be linear in the generators", where);
      coef[static_cast<std::size_t>(hit)].add_term(rest, c);
    }
    std::vector<std::pair<std::string, Poly>> out;
    for (std::size_t k = 0; k < gens.size(); ++k)
      if (!coef[k].is_zero()) out.emplace_back(gens[k], std::move(coef[k]));
    return out;
  }

  void declare(std::set<std::string>& names, const std::string& kind, const std::string& name,
               const Token& where) {
    if (!names.insert(kind + ":" + name).second)
      fail("duplicate declaration of " + kind + " '" + name + "'", where);
  }

  // A bracket line outside any algebra block: parse it for diagnostics, then reject it.
  [[noreturn]] void loose_bracket() {
    const Token& open = next();
    while (peek().kind == Tok::Ident) ++pos_;
    expect("]");
    expect("=");
    Scope any;
    expr(any);
    fail("bracket line outside an algebra block", open);
  }

  AlgebraDecl algebra_decl(const SourceDoc& doc);
  ModuleDecl module_decl(const SourceDoc& doc);
  ProblemDecl problem_decl(const SourceDoc& doc);
  EntryDecl entry_decl();

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::set<std::string> declared_;
};

std::set<std::string> merged(const std::vector<std::string>& a, const std::vector<std::string>& b,
                             const std::vector<std::string>& c = {}) {
  std::set<std::string> out(a.begin(), a.end());
  out.insert(b.begin(), b.end());
  out.insert(c.begin(), c.end());
  return out;
}

AlgebraDecl Parser::algebra_decl(const SourceDoc& doc) {
  AlgebraDecl a;
  const Token& head = peek();
  a.span = {head.line, head.col};
  a.name = ident("algebra name");
  declare(declared_, "algebra", a.name, head);
  if (at("(")) {
    ++pos_;
    a.params = name_list("parameter");
    expect(")");
  }
  expect("{");
  expect_word("gens");
  a.gens = name_list("generator");
  for (const auto& g : a.gens)
    if (g == "p") fail("'p' is reserved", head);
  expect(";");
  auto params = merged(a.params, doc.params);
  Scope sc{&params, &a.gens};
  std::set<std::pair<std::string, std::string>> seen;
  while (at("[")) {
    const Token& open = next();
    std::vector<std::string> names;
    while (peek().kind == Tok::Ident) names.push_back(next().text);
    if (names.size() != 2) fail("bracket line must name two generators", open);
    for (const auto& n : names)
      if (std::find(a.gens.begin(), a.gens.end(), n) == a.gens.end())
        fail("unknown generator '" + n + "'", open);
    expect("]");
    if (!seen.insert({names[0], names[1]}).second)
      fail("duplicate declaration of bracket [" + names[0] + " " + names[1] + "]", open);
    expect("=");
    const Token& rhs_tok = peek();
    Poly value = expr(sc);
    expect(";");
    a.brackets.push_back({names[0], names[1], split_linear(value, a.gens, rhs_tok), {open.line, open.col}});
  }
  expect("}");
  return a;
}

ModuleDecl Parser::module_decl(const SourceDoc& doc) {
  ModuleDecl m;
  const Token& head = peek();
  m.span = {head.line, head.col};
  m.name = ident("module name");
  declare(declared_, "module", m.name, head);
  if (at("(")) {
    ++pos_;
    m.params = name_list("parameter");
    expect(")");
  }
  expect_word("over");
  const Token& over = peek();
  m.over = ident("algebra name");
  const AlgebraDecl* alg = doc.find_algebra(m.over);
  if (!alg) fail("unknown identifier '" + m.over + "'", over);
  auto params = merged(m.params, alg->params, doc.params);
  Scope sc{&params, nullptr};
  expect("{");
  if (at_word("trivial")) {
    ++pos_;
    m.trivial = true;
    m.eta = expr(sc);
    expect(";");
  } else {
    std::set<std::string> seen;
    while (peek().kind == Tok::Ident) {
      const Token& g = next();
      if (std::find(alg->gens.begin(), alg->gens.end(), g.text) == alg->gens.end())
        fail("unknown generator '" + g.text + "'", g);
      if (!seen.insert(g.text).second) fail("duplicate declaration of action '" + g.text + "'", g);
      expect(":");
      Poly act = expr(sc);
      expect(";");
      m.action.emplace_back(g.text, std::move(act));
    }
  }
  expect("}");
  return m;
}

ProblemDecl Parser::problem_decl(const SourceDoc& doc) {
  ProblemDecl p;
  const Token& head = peek();
  p.span = {head.line, head.col};
  p.name = ident("problem name");
  declare(declared_, "problem", p.name, head);
  expect("{");
  bool have_shape = false;
  while (peek().kind == Tok::Ident) {
    const Token& key = next();
    if (key.text == "algebra") {
      const Token& t = peek();
      p.algebra = ident();
      if (!doc.find_algebra(p.algebra)) fail("unknown identifier '" + p.algebra + "'", t);
    } else if (key.text == "shape") {
      p.shape = shape();
      have_shape = true;
    } else if (key.text == "top" || key.text == "bottom") {
      const Token& t = peek();
      std::string name = ident();
      if (!doc.find_module(name)) fail("unknown identifier '" + name + "'", t);
      (key.text == "top" ? p.top : p.bottom) = name;
    } else if (key.text == "bounds") {
      Bounds b;
      b.f = static_cast<unsigned>(small_int());
      b.p = peek().kind == Tok::Int ? static_cast<unsigned>(small_int()) : b.f;
      p.bounds = b;
    } else if (key.text == "bind") {
      do {
        if (at(",")) ++pos_;
        const Token& t = peek();
        std::string name = ident("parameter");
        for (const auto& [n, v] : p.bind)
          if (n == name) fail("duplicate declaration of binding '" + name + "'", t);
        expect("=");
        p.bind.emplace_back(name, rational());
      } while (at(","));
    } else {
      fail("unknown problem field '" + key.text + "'", key);
    }
    expect(";");
  }
  expect("}");
  if (p.algebra.empty() || p.top.empty() || p.bottom.empty() || !have_shape)
    fail("problem needs algebra, shape, top and bottom", head);
  return p;
}

EntryDecl Parser::entry_decl() {
  EntryDecl e;
  const Token& head = peek();
  e.span = {head.line, head.col};
  e.id = string_lit();
  declare(declared_, "entry", e.id, head);
  expect("{");
  Scope any;
  while (peek().kind == Tok::Ident) {
    const Token& key = next();
    const std::string& k = key.text;
    if (k == "family") {
      e.family = ident("family");
    } else if (k == "shape") {
      e.shape = shape();
    } else if (k == "source") {
      e.source = string_lit();
    } else if (k == "set") {
      std::string v = ident("parameter");
      expect("=");
      e.sets.emplace_back(v, expr(any));
    } else if (k == "require") {
      Requirement r;
      if (at("[")) {
        ++pos_;
        do {
          if (at(",")) ++pos_;
          r.lhs.push_back(expr(any));
        } while (at(","));
        expect("]");
        expect("!=");
        expect("[");
        do {
          if (at(",")) ++pos_;
          r.rhs.push_back(expr(any));
        } while (at(","));
        expect("]");
        if (r.lhs.size() != r.rhs.size()) fail("tuple sizes differ", key);
      } else {
        r.lhs.push_back(expr(any));
        expect("!=");
        r.rhs.push_back(expr(any));
      }
      e.requires_.push_back(std::move(r));
    } else if (k == "minpoly") {
      std::string v = ident("parameter");
      expect(":");
      e.minpoly.emplace(v, expr(any));
    } else if (k == "shift") {
      e.shift = ident("parameter");
    } else if (k == "suspicious") {
      e.suspicious = string_lit();
    } else if (k == "note") {
      e.notes.push_back(string_lit());
    } else if (k == "gen") {
      GenBlock g;
      g.name = ident("coefficient name");
      for (const auto& other : e.gens)
        if (other.name == g.name) fail("duplicate declaration of gen '" + g.name + "'", key);
      expect("{");
      while (peek().kind == Tok::Ident) {
        const Token& c = next();
        expect(":");
        Poly v = expr(any);
        expect(";");
        if (c.text == "denom") {
          g.denom = std::move(v);
        } else {
          for (const auto& [n, p] : g.comps)
            if (n == c.text) fail("duplicate declaration of component '" + n + "'", c);
          g.comps.emplace_back(c.text, std::move(v));
        }
      }
      expect("}");
      e.gens.push_back(std::move(g));
      continue;  // no trailing ';'
    } else {
      fail("unknown entry field '" + k + "'", key);
    }
    expect(";");
  }
  expect("}");
  if (e.family.empty()) fail("entry needs a family", head);
  return e;
}

SourceDoc Parser::document() {
  SourceDoc doc;
  while (peek().kind != Tok::End) {
    const Token& kw = peek();
    if (at("[")) loose_bracket();
    if (kw.kind != Tok::Ident) fail_unexpected("declaration");
    ++pos_;
    if (kw.text == "version") {
      doc.version = static_cast<int>(small_int());
      expect(";");
    } else if (kw.text == "params") {
      for (const auto& n : name_list("parameter")) {
        if (std::find(doc.params.begin(), doc.params.end(), n) != doc.params.end())
          fail("duplicate declaration of '" + n + "'", kw);
        doc.params.push_back(n);
      }
      expect(";");
    } else if (kw.text == "algebra") {
      doc.algebras.push_back(algebra_decl(doc));
    } else if (kw.text == "module") {
      doc.modules.push_back(module_decl(doc));
    } else if (kw.text == "problem") {
      doc.problems.push_back(problem_decl(doc));
    } else if (kw.text == "entry") {
      doc.entries.push_back(entry_decl());
    } else {
      fail("unknown declaration '" + kw.text + "'", kw);
    }
  }
  return doc;
}

// ---- rendering ----------------------------------------------------------------

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i];
  return out;
}

std::string render_term(const std::string& gen, const Poly& c) {
  if (c == Poly(1)) return gen;
  if (c == Poly(-1)) return "-" + gen;
  if (c.size() == 1 && c.is_constant()) return c.str() + "*" + gen;
  return "(" + c.str() + ")*" + gen;
}

}  // namespace

SourceDoc parse(const std::string& text) { return Parser(text).document(); }

Poly parse_poly(const std::string& text) { return Parser(text).lone_poly(); }

std::string render_poly(const Poly& p) { return p.str(); }

std::string render(const SourceDoc& doc) {
  std::ostringstream os;
  bool first = true;
  auto gap = [&] {
    if (!first) os << "\n";
    first = false;
  };
  if (doc.version) {
    gap();
    os << "version " << *doc.version << ";\n";
  }
  if (!doc.params.empty()) {
    gap();
    os << "params " << join(doc.params) << ";\n";
  }
  for (const auto& a : doc.algebras) {
    gap();
    os << "algebra " << a.name;
    if (!a.params.empty()) os << "(" << join(a.params) << ")";
    os << " {\n  gens " << join(a.gens) << ";\n";
    for (const auto& b : a.brackets) {
      os << "  [" << b.left << " " << b.right << "] = ";
      if (b.value.empty()) os << "0";
      for (std::size_t k = 0; k < b.value.size(); ++k) {
        std::string t = render_term(b.value[k].first, b.value[k].second);
        if (k > 0) {
          if (t[0] == '-')
            t = "- " + t.substr(1);
          else
            t = "+ " + t;
          os << " ";
        }
        os << t;
      }
      os << ";\n";
    }
    os << "}\n";
  }
  for (const auto& m : doc.modules) {
    gap();
    os << "module " << m.name;
    if (!m.params.empty()) os << "(" << join(m.params) << ")";
    os << " over " << m.over << " {\n";
    if (m.trivial)
      os << "  trivial " << m.eta.str() << ";\n";
    else
      for (const auto& [g, p] : m.action) os << "  " << g << ": " << p.str() << ";\n";
    os << "}\n";
  }
  for (const auto& p : doc.problems) {
    gap();
    os << "problem " << p.name << " {\n  algebra " << p.algebra << ";\n  shape " << shape_name(p.shape)
       << ";\n  top " << p.top << ";\n  bottom " << p.bottom << ";\n";
    if (p.bounds) os << "  bounds " << p.bounds->f << " " << p.bounds->p << ";\n";
    if (!p.bind.empty()) {
      os << "  bind ";
      for (std::size_t k = 0; k < p.bind.size(); ++k)
        os << (k ? ", " : "") << p.bind[k].first << " = " << p.bind[k].second.str();
      os << ";\n";
    }
    os << "}\n";
  }
  for (const auto& e : doc.entries) {
    gap();
    os << "entry " << quote(e.id) << " {\n  family " << e.family << ";\n  shape " << shape_name(e.shape)
       << ";\n";
    if (!e.source.empty()) os << "  source " << quote(e.source) << ";\n";
    for (const auto& [v, p] : e.sets) os << "  set " << v << " = " << p.str() << ";\n";
    for (const auto& r : e.requires_) {
      auto tuple = [](const std::vector<Poly>& xs) {
        std::string s;
        for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? ", " : "") + xs[k].str();
        return s;
      };
      if (r.lhs.size() == 1)
        os << "  require " << r.lhs[0].str() << " != " << r.rhs[0].str() << ";\n";
      else
        os << "  require [" << tuple(r.lhs) << "] != [" << tuple(r.rhs) << "];\n";
    }
    if (e.minpoly) os << "  minpoly " << e.minpoly->first << ": " << e.minpoly->second.str() << ";\n";
    if (e.shift) os << "  shift " << *e.shift << ";\n";
    if (e.suspicious) os << "  suspicious " << quote(*e.suspicious) << ";\n";
    for (const auto& n : e.notes) os << "  note " << quote(n) << ";\n";
    for (const auto& g : e.gens) {
      os << "  gen " << g.name << " {\n";
      if (g.denom != Poly(1)) os << "    denom: " << g.denom.str() << ";\n";
      for (const auto& [c, p] : g.comps) os << "    " << c << ": " << p.str() << ";\n";
      os << "  }\n";
    }
    os << "}\n";
  }
  return os.str();
}

// ---- conversion ---------------------------------------------------------------

ConformalAlgebra to_algebra(const AlgebraDecl& decl) {
  ConformalAlgebra alg(decl.name, decl.gens, decl.params);
  const std::size_t n = decl.gens.size();
  std::set<std::pair<std::size_t, std::size_t>> given;
  for (const auto& b : decl.brackets) given.insert({alg.index(b.left), alg.index(b.right)});
  for (const auto& b : decl.brackets) {
    std::size_t i = alg.index(b.left), j = alg.index(b.right);
    std::vector<Poly> v(n);
    for (const auto& [g, p] : b.value) v[alg.index(g)] = p;
    if (given.count({j, i}))
      alg.set_bracket(i, j, std::move(v));
    else
      alg.set_bracket_skew(i, j, std::move(v));
  }
  return alg;
}

ConformalModule to_module(const ModuleDecl& decl, const ConformalAlgebra& alg) {
  if (decl.trivial) return ConformalModule::trivial(decl.name, alg.size(), decl.eta, decl.params);
  std::vector<Poly> act(alg.size());
  for (const auto& [g, p] : decl.action) act[alg.index(g)] = p;
  return ConformalModule::free(decl.name, std::move(act), decl.params);
}

ExtProblem to_problem(const SourceDoc& doc, const ProblemDecl& decl, Binding* bind) {
  const AlgebraDecl* a = doc.find_algebra(decl.algebra);
  const ModuleDecl* top = doc.find_module(decl.top);
  const ModuleDecl* bottom = doc.find_module(decl.bottom);
  if (!a || !top || !bottom) throw std::invalid_argument("problem " + decl.name + " has unresolved names");
  ConformalAlgebra alg = to_algebra(*a);
  ExtProblem prob{alg, decl.shape, to_module(*top, alg), to_module(*bottom, alg)};
  if (bind)
    for (const auto& [k, v] : decl.bind) (*bind)[k] = v;
  return prob;
}

}  // namespace lca::dsl
