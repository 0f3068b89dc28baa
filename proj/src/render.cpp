#include "adjforge/render.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "adjforge/error.hpp"

namespace adjforge {

namespace {

const std::set<std::string> &greek() {
  static const std::set<std::string> g = {"alpha", "beta",  "gamma", "delta", "epsilon", "zeta",
                                          "eta",   "theta", "kappa", "lambda", "mu",     "nu",
                                          "xi",    "pi",    "rho",   "sigma", "tau",     "phi",
                                          "chi",   "psi",   "omega"};
  return g;
}

std::string latex_name(const std::string &name) {
  if (greek().count(name))
    return "\\" + name;
  std::size_t k = name.size();
  while (k > 0 && std::isdigit(static_cast<unsigned char>(name[k - 1])))
    --k;
  if (k > 0 && k < name.size()) {
    std::string head = name.substr(0, k);
    return (greek().count(head) ? "\\" + head : head) + "_{" + name.substr(k) + "}";
  }
  if (name.size() > 1)
    return "\\mathrm{" + name + "}";
  return name;
}

std::string sym_name(Symbol s, Format f) { return f == Format::Latex ? latex_name(s.name()) : s.name(); }

std::string rational_text(const Rational &q, Format f) {
  if (q.get_den() == 1)
    return q.get_num().get_str();
  if (f == Format::Latex)
    return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string power_suffix(const std::string &exp, bool simple, Format f) {
  if (f == Format::Latex)
    return "^{" + exp + "}";
  return simple ? "^" + exp : "^(" + exp + ")";
}

/// Monomial part of a polynomial term, without coefficient.
std::string poly_monomial(const PolyMonomial &m, Format f) {
  std::string out;
  for (const auto &[s, e] : m) {
    if (!out.empty())
      out += f == Format::Latex ? " " : "*";
    out += sym_name(s, f);
    if (e != 1)
      out += power_suffix(std::to_string(e), true, f);
  }
  return out;
}

bool poly_is_single(const Poly &p) { return p.terms().size() == 1; }

/// Joins `parts` as a signed sum: each entry is (negative, magnitude text).
std::string join_signed(const std::vector<std::pair<bool, std::string>> &parts, Format f) {
  if (parts.empty())
    return "0";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto &[neg, body] = parts[i];
    if (i == 0)
      out += neg ? "-" : "";
    else
      out += neg ? (f == Format::Latex ? " - " : "-") : (f == Format::Latex ? " + " : "+");
    out += body;
  }
  return out;
}

std::string wrap(const std::string &s, Format f) {
  return f == Format::Latex ? "\\left(" + s + "\\right)" : "(" + s + ")";
}

std::string jet_text(const JetCoord &j, const Space &s, Format f) {
  std::string base = s.name(j.family, j.sigma);
  if (f == Format::Latex)
    base = latex_name(base);
  if (j.index.empty())
    return base;
  std::string out = base;
  if (f == Format::Latex) {
    out += "_{";
    for (auto i : j.index)
      out += latex_name(s.independents.at(i));
    out += "}";
  } else {
    out += "[";
    for (std::size_t k = 0; k < j.index.size(); ++k) {
      if (k)
        out += ",";
      out += s.independents.at(j.index[k]);
    }
    out += "]";
  }
  return out;
}

struct TermParts {
  bool negative = false;
  std::string body;
};

/// Renders a term as sign plus magnitude.
TermParts term_parts(const Term &t, const Space &s, Format f) {
  TermParts tp;
  std::vector<std::string> factors;
  std::vector<std::string> denominators;
  const Coefficient &c = t.coeff;
  // numerator part of the coefficient
  const Poly &num = c.num();
  std::string coeff_text;
  bool coeff_trivial = false;
  if (num.is_constant()) {
    Rational q = num.constant_value();
    tp.negative = q < 0;
    q = abs(q);
    if (q == 1)
      coeff_trivial = true;
    else if (f == Format::Latex)
      coeff_text = rational_text(q, f);
    else if (q.get_den() == 1)
      coeff_text = q.get_num().get_str();
    else
      coeff_text = q.get_num().get_str() + "/" + q.get_den().get_str();
  } else if (poly_is_single(num)) {
    Rational q = num.terms()[0].second;
    tp.negative = q < 0;
    q = abs(q);
    std::string mono = poly_monomial(num.terms()[0].first, f);
    if (q == 1)
      coeff_text = mono;
    else if (f == Format::Latex)
      coeff_text = rational_text(q, f) + " " + mono;
    else if (q.get_den() == 1)
      coeff_text = q.get_num().get_str() + "*" + mono;
    else
      coeff_text = q.get_num().get_str() + "/" + q.get_den().get_str() + "*" + mono;
  } else {
    coeff_text = wrap(render(num, f), f);
  }
  std::string den_text;
  if (!c.den().is_constant())
    den_text = poly_is_single(c.den()) && c.den().terms()[0].first.size() == 1 && c.den().terms()[0].second == 1
                   ? render(c.den(), f)
                   : wrap(render(c.den(), f), f);

  if (!coeff_trivial || coeff_text.size())
    if (!coeff_text.empty())
      factors.push_back(coeff_text);
  if (t.eps > 0) {
    std::string e = f == Format::Latex ? "\\varepsilon" : "eps";
    if (t.eps > 1)
      e += power_suffix(std::to_string(t.eps), true, f);
    factors.push_back(e);
  }
  for (const auto &[a, ex] : t.mono) {
    std::string at = render(a, s, f);
    if (!(ex == Exponent(1))) {
      bool simple = ex.is_integer() && ex.as_integer() > 0;
      at += power_suffix(render(ex, f), simple, f);
    }
    factors.push_back(at);
  }
  std::string body;
  if (f == Format::Latex) {
    std::string numer;
    for (const auto &x : factors)
      numer += (numer.empty() ? "" : " ") + x;
    if (!den_text.empty())
      body = "\\frac{" + (numer.empty() ? std::string("1") : numer) + "}{" + render(c.den(), f) + "}";
    else
      body = numer.empty() ? "1" : numer;
  } else {
    for (const auto &x : factors)
      body += (body.empty() ? "" : "*") + x;
    if (body.empty())
      body = "1";
    if (!den_text.empty())
      body += "/" + den_text;
  }
  tp.body = body;
  return tp;
}

Rational integer_lcm(const Rational &a, const Rational &b) {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), a.get_num().get_mpz_t(), b.get_num().get_mpz_t());
  return Rational(l);
}

} // namespace

Format parse_format(const std::string &name) {
  if (name == "text")
    return Format::Text;
  if (name == "latex")
    return Format::Latex;
  if (name == "json")
    return Format::Json;
  throw ArgumentError("unknown format '" + name + "' (expected text, latex or json)");
}

std::string render(const Poly &p, Format f) {
  std::vector<std::pair<bool, std::string>> parts;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    Rational q = it->second;
    bool neg = q < 0;
    q = abs(q);
    std::string mono = poly_monomial(it->first, f);
    std::string body;
    if (mono.empty())
      body = rational_text(q, f);
    else if (q == 1)
      body = mono;
    else
      body = rational_text(q, f) + (f == Format::Latex ? " " : "*") + mono;
    parts.emplace_back(neg, body);
  }
  return join_signed(parts, f);
}

std::string render(const Coefficient &c, Format f) {
  if (c.is_polynomial()) {
    Poly p = c.num().scaled(1 / c.den().constant_value());
    return render(p, f);
  }
  if (f == Format::Latex)
    return "\\frac{" + render(c.num(), f) + "}{" + render(c.den(), f) + "}";
  std::string n = poly_is_single(c.num()) ? render(c.num(), f) : wrap(render(c.num(), f), f);
  return n + "/" + wrap(render(c.den(), f), f);
}

std::string render(const Exponent &e, Format f) {
  Poly p(e.constant());
  for (const auto &[s, q] : e.linear())
    p += Poly::variable(s).scaled(q);
  return render(p, f);
}

std::string render(const Atom &a, const Space &s, Format f) {
  if (a.is_base()) {
    const std::string &n = s.independents.at(a.base().index);
    return f == Format::Latex ? latex_name(n) : n;
  }
  if (a.is_jet())
    return jet_text(a.jet(), s, f);
  const FuncApp &fa = a.func();
  std::string args;
  for (std::size_t k = 0; k < fa.args.size(); ++k) {
    if (k)
      args += ",";
    args += f == Format::Latex ? latex_name(s.name(fa.args[k])) : s.name(fa.args[k]);
  }
  if (fa.rule == FuncRule::Exponential)
    return f == Format::Latex ? "e^{" + args + "}" : "exp(" + args + ")";
  std::string head = f == Format::Latex ? latex_name(fa.symbol.name()) : fa.symbol.name();
  if (fa.args.size() == 1) {
    head += std::string(fa.derivs.size(), '\'');
  } else if (!fa.derivs.empty()) {
    if (f == Format::Latex) {
      head += "_{";
      for (auto d : fa.derivs)
        head += latex_name(s.name(fa.args.at(d)));
      head += "}";
    } else {
      head += "[";
      for (std::size_t k = 0; k < fa.derivs.size(); ++k) {
        if (k)
          head += ",";
        head += s.name(fa.args.at(fa.derivs[k]));
      }
      head += "]";
    }
  }
  return head + (f == Format::Latex ? "\\left(" + args + "\\right)" : "(" + args + ")");
}

std::string render(const Expr &e, const Space &s, Format f) {
  if (f == Format::Json)
    return term_dump(e, s).dump();
  std::vector<std::pair<bool, std::string>> parts;
  for (const Term &t : e.terms()) {
    TermParts tp = term_parts(t, s, f);
    parts.emplace_back(tp.negative, tp.body);
  }
  return join_signed(parts, f);
}

std::string render_factored(const Expr &e, const Space &s, Format f) {
  if (f == Format::Json || e.terms().size() < 2)
    return render(e, s, f);
  const auto &terms = e.terms();
  int k = terms.front().eps;
  for (const Term &t : terms)
    k = std::min(k, t.eps);
  // common atoms with positive integer exponents
  Monomial common;
  for (const auto &[a, ex] : terms.front().mono) {
    if (!ex.is_positive_integer())
      continue;
    long m = ex.as_integer();
    bool everywhere = true;
    for (const Term &t : terms) {
      auto it = std::find_if(t.mono.begin(), t.mono.end(), [&](const auto &p) { return p.first == a; });
      if (it == t.mono.end() || !it->second.is_positive_integer()) {
        everywhere = false;
        break;
      }
      m = std::min(m, it->second.as_integer());
    }
    if (everywhere)
      common.emplace_back(a, Exponent(m));
  }
  // common denominator: polynomial lcm, then integer lcm of the numerators' denominators
  Poly den(1);
  for (const Term &t : terms)
    if (!t.coeff.den().is_constant()) {
      Poly g = gcd(den, t.coeff.den());
      den = exact_divide(den, g) * t.coeff.den();
    }
  Rational int_den(1);
  std::vector<Coefficient> scaled;
  for (const Term &t : terms) {
    Coefficient c = t.coeff * Coefficient(den);
    scaled.push_back(c);
    for (const auto &pt : c.num().terms())
      int_den = integer_lcm(int_den, Rational(pt.second.get_den()));
  }
  mpz_class content(0);
  for (Coefficient &c : scaled) {
    c *= Coefficient(int_den);
    for (const auto &pt : c.num().terms())
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), pt.second.get_num().get_mpz_t());
  }
  if (content == 0)
    content = 1;
  // sign follows the first term of the inner sum
  bool negative = scaled.front().num().leading_coefficient() < 0;
  Rational factor_num = negative ? Rational(-content) : Rational(content);
  Coefficient factor = Coefficient(Poly(factor_num / int_den), den);
  if (factor.is_one() && k == 0 && common.empty())
    return render(e, s, f);
  std::vector<Term> in;
  for (const Term &t : terms) {
    Monomial m;
    for (const auto &[a, ex] : t.mono) {
      auto it = std::find_if(common.begin(), common.end(), [&](const auto &p) { return p.first == a; });
      Exponent r = it == common.end() ? ex : ex - it->second;
      if (!r.is_zero())
        m.emplace_back(a, r);
    }
    in.push_back(Term{t.coeff / factor, t.eps - k, std::move(m)});
  }
  Expr inner = Expr::from_terms(std::move(in), e.order());
  if (inner.terms().size() == 1)
    return render(e, s, f);
  Term pt{factor, k, common};
  TermParts head = term_parts(pt, s, f);
  std::string body = render(inner, s, f);
  bool head_is_one = head.body == "1";
  std::string out = head.negative ? "-" : "";
  if (f == Format::Latex) {
    out += head_is_one ? wrap(body, f) : head.body + " " + wrap(body, f);
  } else {
    out += head_is_one ? wrap(body, f) : head.body + "*" + wrap(body, f);
  }
  return out;
}

nlohmann::json term_dump(const Expr &e, const Space &s) {
  nlohmann::json terms = nlohmann::json::array();
  for (const Term &t : e.terms()) {
    nlohmann::json atoms = nlohmann::json::array();
    for (const auto &[a, ex] : t.mono)
      atoms.push_back({{"atom", render(a, s)}, {"exponent", render(ex)}});
    terms.push_back({{"coeff_num", render(t.coeff.num())},
                     {"coeff_den", render(t.coeff.den())},
                     {"eps_power", t.eps},
                     {"atoms", atoms}});
  }
  return nlohmann::json{{"truncation_order", e.order()}, {"terms", terms}};
}

} // namespace adjforge
