#include "adjforge/session.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "adjforge/error.hpp"

namespace adjforge {

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n')
        advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      t.kind = Tok::Number;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::string_view("+-*/^()[],;:='").find(c) != std::string_view::npos) {
      t.kind = Tok::Punct;
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

const std::set<std::string> &keywords() {
  static const std::set<std::string> k = {"vars", "unknown", "aux", "param", "func", "eq", "system",
                                          "gen",  "sub",     "solve", "adjoint", "eps", "exp"};
  return k;
}

bool starts_with(const std::string &s, std::string_view p) { return s.rfind(p, 0) == 0; }

} // namespace

class Parser {
public:
  Parser(Session &s, std::string_view text) : s_(s), toks_(lex(text)) {}

  void statements() {
    while (peek().kind != Tok::End)
      statement();
  }

  Expr whole_expression() {
    Expr e = sum();
    if (peek().kind != Tok::End)
      fail("unexpected '" + peek().text + "' after expression");
    return e;
  }

private:
  Session &s_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool used_expressions_ = false;

  const Token &peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1)
      ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string &msg) const { fail_at(peek(), msg); }
  [[noreturn]] static void fail_at(const Token &t, const std::string &msg) {
    throw ParseError(msg, t.line, t.column);
  }
  bool is_punct(const char *p, std::size_t k = 0) const { return peek(k).kind == Tok::Punct && peek(k).text == p; }
  bool is_ident(const char *p, std::size_t k = 0) const { return peek(k).kind == Tok::Ident && peek(k).text == p; }
  void expect(const char *p) {
    if (!is_punct(p))
      fail(std::string("expected '") + p + "' but found '" + (peek().kind == Tok::End ? "end of input" : peek().text) + "'");
    next();
  }
  std::string ident(const char *what) {
    if (peek().kind != Tok::Ident)
      fail(std::string("expected ") + what);
    return next().text;
  }
  int order() const { return s_.order_; }

  bool name_taken(const std::string &n) const {
    const Space &sp = s_.space_;
    return sp.independent(n) || sp.variable(n) || s_.funcs_.count(n) ||
           std::any_of(s_.params_.begin(), s_.params_.end(), [&](Symbol p) { return p.name() == n; });
  }

  void declare(const Token &t) {
    if (keywords().count(t.text))
      fail_at(t, "'" + t.text + "' is reserved");
    if (name_taken(t.text))
      fail_at(t, "redefinition of '" + t.text + "'");
  }

  void statement() {
    Token kw = peek();
    if (kw.kind != Tok::Ident)
      fail("expected a statement");
    next();
    if (kw.text == "vars") {
      while (peek().kind == Tok::Ident) {
        Token t = next();
        declare(t);
        s_.space_.independents.push_back(t.text);
      }
      expect(";");
    } else if (kw.text == "unknown") {
      Token t = next();
      if (t.kind != Tok::Ident)
        fail_at(t, "expected a dependent variable name");
      declare(t);
      std::string adj = t.text == "u" ? "v" : "v" + t.text;
      Token at = peek();
      if (is_ident("adjoint")) {
        next();
        at = next();
        if (at.kind != Tok::Ident)
          fail_at(at, "expected an adjoint variable name");
        adj = at.text;
      }
      s_.space_.dependents.push_back(t.text);
      Token fake = at;
      fake.text = adj;
      declare(fake);
      s_.space_.adjoints.push_back(adj);
      expect(";");
    } else if (kw.text == "aux") {
      while (peek().kind == Tok::Ident) {
        Token t = next();
        declare(t);
        s_.space_.auxiliaries.push_back(t.text);
      }
      expect(";");
    } else if (kw.text == "param") {
      if (is_ident("eps")) {
        next();
        if (peek().kind == Tok::Number) {
          Token n = next();
          int k = std::stoi(n.text);
          if (k < 1)
            fail_at(n, "truncation order must be at least 1");
          if (used_expressions_ || (s_.order_fixed_ && k != s_.order_))
            fail_at(n, "truncation order must be set once, before any expression");
          s_.order_ = k;
          s_.order_fixed_ = true;
        }
        expect(";");
        return;
      }
      while (peek().kind == Tok::Ident) {
        Token t = next();
        declare(t);
        s_.params_.push_back(Symbol::intern(t.text));
      }
      expect(";");
    } else if (kw.text == "func") {
      function_decl();
    } else if (kw.text == "eq") {
      equation_decl();
    } else if (kw.text == "system") {
      Token n = next();
      if (n.kind != Tok::Ident)
        fail_at(n, "expected a system name");
      if (s_.systems_.count(n.text) || s_.equations_.count(n.text))
        fail_at(n, "redefinition of system '" + n.text + "'");
      expect(":");
      std::vector<std::string> members;
      do {
        Token m = next();
        if (m.kind != Tok::Ident || !s_.equations_.count(m.text))
          fail_at(m, "unknown equation '" + m.text + "'");
        members.push_back(m.text);
      } while (is_punct(",") && (next(), true));
      expect(";");
      s_.systems_[n.text] = members;
    } else if (kw.text == "gen") {
      generator_decl();
    } else if (kw.text == "sub") {
      substitution_decl();
    } else {
      fail_at(kw, "unknown statement '" + kw.text + "'");
    }
  }

  void function_decl() {
    Token n = next();
    if (n.kind != Tok::Ident)
      fail_at(n, "expected a function name");
    declare(n);
    FuncDecl d;
    d.symbol = Symbol::intern(n.text);
    expect("(");
    do {
      Token a = next();
      if (a.kind != Tok::Ident || (!s_.space_.independent(a.text) && !s_.space_.variable(a.text)))
        fail_at(a, "function argument must be a declared variable");
      d.formals.push_back(a.text);
    } while (is_punct(",") && (next(), true));
    expect(")");
    Token rule = next();
    if (rule.text == "abstract") {
      d.kind = FuncKind::Abstract;
    } else if (rule.text == "exp") {
      d.kind = FuncKind::Exponential;
    } else if (rule.text == "power") {
      d.kind = FuncKind::Power;
      Token at = peek();
      Expr e = sum();
      if (!e.is_constant())
        fail_at(at, "power exponent must be a constant");
      try {
        d.power = Exponent::from_coefficient(e.constant_value());
      } catch (const ArgumentError &err) {
        fail_at(at, err.what());
      }
    } else {
      fail_at(rule, "expected abstract, exp or power");
    }
    if (d.kind != FuncKind::Abstract && d.formals.size() != 1)
      fail_at(rule, "exp and power functions take one argument");
    expect(";");
    s_.funcs_[n.text] = d;
  }

  void equation_decl() {
    Token n = next();
    if (n.kind != Tok::Ident)
      fail_at(n, "expected an equation name");
    if (s_.equations_.count(n.text) || s_.systems_.count(n.text))
      fail_at(n, "redefinition of equation '" + n.text + "'");
    expect(":");
    Expr lhs = sum();
    if (is_punct("=")) {
      next();
      lhs -= sum();
    }
    if (!is_ident("solve"))
      fail("expected 'solve' and a leading derivative");
    next();
    Token ct = peek();
    Expr c = unary();
    if (!c.is_unit() || c.terms()[0].mono.size() != 1 || !c.terms()[0].coeff.is_one() ||
        !c.terms()[0].mono[0].first.is_jet() || c.terms()[0].eps != 0)
      fail_at(ct, "leading derivative must be a jet coordinate");
    JetCoord lead = c.terms()[0].mono[0].first.jet();
    if (lead.family != Family::U || lead.index.empty())
      fail_at(ct, "leading derivative must be a derivative of a dependent variable");
    expect(";");
    if (partial_jet(lhs, lead).is_zero())
      fail_at(ct, "leading derivative not present in equation '" + n.text + "'");
    try {
      (void)solve_for(lhs, lead);
    } catch (const Error &e) {
      fail_at(ct, e.what());
    }
    s_.equations_[n.text] = Equation{n.text, lhs, lead};
    s_.equation_order_.push_back(n.text);
  }

  void generator_decl() {
    Token n = next();
    if (n.kind != Tok::Ident)
      fail_at(n, "expected a generator name");
    if (s_.generators_.count(n.text))
      fail_at(n, "redefinition of generator '" + n.text + "'");
    expect(":");
    const Space &sp = s_.space_;
    Generator g = Generator::zero(sp.n_independents(), sp.n_dependents(), order());
    g.name = n.text;
    bool eps_mode = false;
    std::set<std::string> seen;
    while (peek().kind == Tok::Ident) {
      const std::string &f = peek().text;
      if (f == "eps" && is_punct(":", 1)) {
        if (eps_mode)
          fail("duplicate 'eps:' section");
        next();
        next();
        eps_mode = true;
        continue;
      }
      if (!starts_with(f, "xi_") && !starts_with(f, "eta_"))
        break;
      Token ft = next();
      if (!seen.insert((eps_mode ? "eps:" : "") + ft.text).second)
        fail_at(ft, "duplicate field '" + ft.text + "'");
      expect("=");
      Token et = peek();
      Expr v = sum();
      expect(";");
      if (v.max_eps() > 0)
        fail_at(et, "generator coefficients are eps-free; use an 'eps:' section");
      if (starts_with(ft.text, "xi_")) {
        auto i = sp.independent(ft.text.substr(3));
        if (!i)
          fail_at(ft, "unknown independent variable in '" + ft.text + "'");
        (eps_mode ? g.xi1 : g.xi0)[*i] = v;
      } else {
        auto u = sp.variable(ft.text.substr(4));
        if (!u || u->first != Family::U)
          fail_at(ft, "unknown dependent variable in '" + ft.text + "'");
        (eps_mode ? g.eta1 : g.eta0)[u->second] = v;
      }
    }
    s_.generators_[n.text] = g;
    s_.generator_order_.push_back(n.text);
  }

  void substitution_decl() {
    Token n = next();
    if (n.kind != Tok::Ident)
      fail_at(n, "expected a substitution name");
    if (s_.substitutions_.count(n.text))
      fail_at(n, "redefinition of substitution '" + n.text + "'");
    expect(":");
    const Space &sp = s_.space_;
    const std::size_t m = sp.adjoints.size();
    Substitution sub;
    sub.name = n.text;
    sub.phi.assign(m, Expr(order()));
    sub.psi.assign(m, Expr(order()));
    std::set<std::string> seen;
    while (peek().kind == Tok::Ident && is_punct("=", 1)) {
      Token ft = next();
      std::string f = ft.text;
      if (!seen.insert(f).second)
        fail_at(ft, "duplicate field '" + f + "'");
      next();
      Token et = peek();
      Expr v = sum();
      expect(";");
      auto adjoint_index = [&](const std::string &name) -> std::optional<std::uint32_t> {
        auto var = sp.variable(name);
        if (var && var->first == Family::V)
          return var->second;
        return std::nullopt;
      };
      if (v.has_atom([](const Atom &a) { return a.involves(Family::V); }))
        fail_at(et, "substitution refers to an adjoint variable");
      if (auto a = adjoint_index(f)) {
        if (v.max_eps() > 1)
          fail_at(et, "substitution has terms beyond first order in eps");
        sub.phi[*a] = v.eps_part(0);
        sub.psi[*a] = v.eps_part(1);
        continue;
      }
      bool is_phi = f == "phi" || starts_with(f, "phi_");
      bool is_psi = f == "psi" || starts_with(f, "psi_");
      if (!is_phi && !is_psi)
        fail_at(ft, "unknown substitution field '" + f + "'");
      std::optional<std::uint32_t> a;
      if (f.size() == 3) {
        if (m != 1)
          fail_at(ft, "use phi_<adjoint> with several adjoint variables");
        a = 0;
      } else {
        a = adjoint_index(f.substr(4));
      }
      if (!a)
        fail_at(ft, "unknown adjoint variable in '" + f + "'");
      if (v.max_eps() > 0)
        fail_at(et, "phi and psi are eps-free");
      (is_phi ? sub.phi : sub.psi)[*a] = v;
    }
    if (seen.empty())
      fail("substitution '" + n.text + "' has no fields");
    s_.substitutions_[n.text] = sub;
    s_.substitution_order_.push_back(n.text);
  }

  // expressions

  Expr sum() {
    used_expressions_ = true;
    Expr acc(order());
    bool first = true;
    while (true) {
      bool neg = false;
      if (is_punct("+") || is_punct("-")) {
        neg = next().text == "-";
      } else if (!first) {
        break;
      }
      Expr t = product();
      acc += neg ? -t : t;
      first = false;
      if (!is_punct("+") && !is_punct("-"))
        break;
    }
    return acc;
  }

  Expr product() {
    Expr acc = unary();
    while (is_punct("*") || is_punct("/")) {
      Token op = next();
      Expr rhs = unary();
      if (op.text == "*") {
        acc *= rhs;
      } else {
        try {
          acc = acc / rhs;
        } catch (const UnsupportedOperation &e) {
          fail_at(op, e.what());
        }
      }
    }
    return acc;
  }

  Expr unary() {
    if (is_punct("-")) {
      next();
      return -unary();
    }
    if (is_punct("+")) {
      next();
      return unary();
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!is_punct("^"))
      return base;
    Token op = next();
    Token et = peek();
    Expr ex(order());
    if (is_punct("-")) {
      next();
      ex = -primary();
    } else {
      ex = primary();
    }
    if (!ex.is_constant())
      fail_at(et, "exponent must be a constant");
    Coefficient c = ex.constant_value();
    try {
      if (c.is_constant() && c.constant_value().get_den() == 1)
        return base.pow(c.constant_value().get_num().get_si());
      return base.pow(Exponent::from_coefficient(c));
    } catch (const Error &e) {
      fail_at(op, e.what());
    }
  }

  std::vector<std::uint8_t> index_list() {
    std::vector<std::uint8_t> idx;
    expect("[");
    do {
      Token t = next();
      auto i = t.kind == Tok::Ident ? s_.space_.independent(t.text) : std::nullopt;
      if (!i)
        fail_at(t, "expected an independent variable");
      idx.push_back(*i);
    } while (is_punct(",") && (next(), true));
    expect("]");
    std::sort(idx.begin(), idx.end());
    return idx;
  }

  FuncArg func_arg() {
    Token t = next();
    if (t.kind == Tok::Ident) {
      if (auto i = s_.space_.independent(t.text))
        return FuncArg{false, Family::U, *i};
      if (auto v = s_.space_.variable(t.text))
        return FuncArg{true, v->first, v->second};
    }
    fail_at(t, "function argument must be a variable");
  }

  std::vector<FuncArg> func_args() {
    std::vector<FuncArg> args;
    expect("(");
    do {
      args.push_back(func_arg());
    } while (is_punct(",") && (next(), true));
    expect(")");
    return args;
  }

  Expr arg_expr(const FuncArg &a) {
    if (!a.dependent)
      return Expr::atom(Atom::independent(static_cast<std::uint8_t>(a.index)), order());
    return Expr::atom(Atom::jet(a.family, a.index), order());
  }

  Expr function_call(const Token &name, const FuncDecl &d) {
    std::size_t primes = 0;
    while (is_punct("'")) {
      next();
      ++primes;
    }
    std::vector<std::string> slot_names;
    if (is_punct("[")) {
      next();
      do {
        Token t = next();
        if (t.kind != Tok::Ident)
          fail_at(t, "expected an argument name");
        slot_names.push_back(t.text);
      } while (is_punct(",") && (next(), true));
      expect("]");
    }
    if (primes && !slot_names.empty())
      fail_at(name, "use either primes or a slot list");
    std::vector<FuncArg> args = func_args();
    if (args.size() != d.formals.size())
      fail_at(name, "'" + name.text + "' takes " + std::to_string(d.formals.size()) + " arguments");
    std::vector<std::uint8_t> derivs;
    if (primes) {
      if (args.size() != 1)
        fail_at(name, "primes need a single-argument function");
      derivs.assign(primes, 0);
    }
    for (const auto &sn : slot_names) {
      std::optional<std::uint8_t> slot;
      for (std::size_t k = 0; k < args.size(); ++k)
        if (s_.space_.name(args[k]) == sn || d.formals[k] == sn)
          slot = static_cast<std::uint8_t>(k);
      if (!slot)
        fail_at(name, "'" + sn + "' is not an argument of '" + name.text + "'");
      derivs.push_back(*slot);
    }
    std::sort(derivs.begin(), derivs.end());
    switch (d.kind) {
    case FuncKind::Abstract:
      return Expr::atom(Atom(FuncApp{d.symbol, FuncRule::Abstract, args, derivs}), order());
    case FuncKind::Exponential:
      return Expr::atom(Atom(FuncApp{Symbol::intern("exp"), FuncRule::Exponential, args, {}}), order());
    case FuncKind::Power: {
      Atom base = args[0].dependent ? Atom::jet(args[0].family, args[0].index)
                                    : Atom::independent(static_cast<std::uint8_t>(args[0].index));
      Coefficient factor(1);
      Exponent e = d.power;
      for (std::size_t k = 0; k < derivs.size(); ++k) {
        factor *= e.to_coefficient();
        e = e - Exponent(1);
      }
      return Expr::atom_power(base, e, order()) * factor;
    }
    }
    fail_at(name, "bad function");
  }

  Expr primary() {
    Token t = peek();
    if (t.kind == Tok::Number) {
      next();
      return Expr(Coefficient(Rational(mpz_class(t.text))), order());
    }
    if (is_punct("(")) {
      next();
      Expr e = sum();
      expect(")");
      return e;
    }
    if (t.kind != Tok::Ident)
      fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    next();
    const Space &sp = s_.space_;
    if (t.text == "eps")
      return Expr::eps(1, order());
    for (Symbol p : s_.params_)
      if (p.name() == t.text)
        return Expr(Coefficient::param(p), order());
    if (auto i = sp.independent(t.text))
      return Expr::atom(Atom::independent(*i), order());
    if (auto it = s_.funcs_.find(t.text); it != s_.funcs_.end())
      return function_call(t, it->second);
    if (t.text == "exp") {
      expect("(");
      FuncArg a = func_arg();
      expect(")");
      return Expr::atom(Atom(FuncApp{Symbol::intern("exp"), FuncRule::Exponential, {a}, {}}), order());
    }
    if (auto v = sp.variable(t.text)) {
      MultiIndex idx;
      if (is_punct("["))
        idx = index_list();
      return Expr::atom(Atom::jet(v->first, v->second, idx), order());
    }
    if (t.text.size() > 1 && t.text[0] == 'D' && sp.independent(t.text.substr(1)) && is_punct("(")) {
      auto i = *sp.independent(t.text.substr(1));
      next();
      Expr e = sum();
      expect(")");
      return total_derivative(e, i);
    }
    if (auto us = t.text.find('_'); us != std::string::npos && us > 0) {
      auto v = sp.variable(t.text.substr(0, us));
      std::string suffix = t.text.substr(us + 1);
      if (v && !suffix.empty()) {
        MultiIndex idx;
        for (char c : suffix) {
          auto i = sp.independent(std::string(1, c));
          if (!i)
            fail_at(t, "'" + std::string(1, c) + "' is not a single-letter independent variable");
          idx.push_back(*i);
        }
        std::sort(idx.begin(), idx.end());
        return Expr::atom(Atom::jet(v->first, v->second, idx), order());
      }
    }
    fail_at(t, "unknown identifier '" + t.text + "'");
  }
};

Session::Session() = default;

Session Session::parse(std::string_view text) {
  Session s;
  s.include(text);
  return s;
}

void Session::include(std::string_view text) {
  Parser p(*this, text);
  p.statements();
}

namespace {

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ArgumentError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

Session Session::load(const std::string &path) {
  Session s;
  s.include_file(path);
  return s;
}

void Session::include_file(const std::string &path) {
  try {
    include(read_file(path));
  } catch (const ParseError &e) {
    throw ParseError(path + ":" + std::string(e.what()), e.line(), e.column(), true);
  }
}

Expr Session::expr(std::string_view text) const {
  Session copy = *this;
  Parser p(copy, text);
  return p.whole_expression();
}

bool Session::has_system(const std::string &name) const {
  return equations_.count(name) || systems_.count(name);
}

PdeSystem Session::system(const std::string &name) const {
  PdeSystem s;
  s.name = name;
  s.space = space_;
  if (auto it = equations_.find(name); it != equations_.end()) {
    s.equations.push_back(it->second);
  } else if (auto jt = systems_.find(name); jt != systems_.end()) {
    for (const auto &m : jt->second)
      s.equations.push_back(equations_.at(m));
  } else {
    throw ArgumentError("unknown equation or system '" + name + "'");
  }
  if (s.equations.size() != space_.adjoints.size())
    throw ConfigError("system '" + name + "' has " + std::to_string(s.equations.size()) + " equations for " +
                      std::to_string(space_.adjoints.size()) + " dependent variables");
  return s;
}

const Generator &Session::generator(const std::string &name) const {
  auto it = generators_.find(name);
  if (it == generators_.end())
    throw ArgumentError("unknown generator '" + name + "'");
  return it->second;
}

const Substitution &Session::substitution(const std::string &name) const {
  auto it = substitutions_.find(name);
  if (it == substitutions_.end())
    throw ArgumentError("unknown substitution '" + name + "'");
  return it->second;
}

std::vector<std::string> Session::equation_names() const { return equation_order_; }
std::vector<std::string> Session::generator_names() const { return generator_order_; }
std::vector<std::string> Session::substitution_names() const { return substitution_order_; }

} // namespace adjforge
