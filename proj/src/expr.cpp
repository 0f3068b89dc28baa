#include "adjforge/expr.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "adjforge/error.hpp"

namespace adjforge {

namespace {

void require_same_order(const Expr &a, const Expr &b) {
  if (a.order() != b.order())
    throw ConfigError("truncation orders differ (" + std::to_string(a.order()) + " vs " +
                      std::to_string(b.order()) + ")");
}

bool term_less(const Term &a, const Term &b) {
  if (a.eps != b.eps)
    return a.eps < b.eps;
  return compare_monomials(a.mono, b.mono) > 0;
}

bool same_key(const Term &a, const Term &b) {
  return a.eps == b.eps && compare_monomials(a.mono, b.mono) == 0;
}

Monomial monomial_power(const Monomial &m, const Exponent &e) {
  Monomial out;
  for (const auto &[a, f] : m) {
    Exponent g;
    if (f.linear().empty())
      g = e.scaled(f.constant());
    else if (e.linear().empty())
      g = f.scaled(e.constant());
    else
      throw UnsupportedOperation("product of symbolic exponents");
    if (!g.is_zero())
      out.emplace_back(a, std::move(g));
  }
  return out;
}

long double int_pow(long double x, long n) {
  if (n < 0)
    return 1.0L / int_pow(x, -n);
  long double r = 1.0L;
  while (n) {
    if (n & 1)
      r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

} // namespace

int compare_monomials(const Monomial &a, const Monomial &b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a[i].first <=> b[i].first; c != 0)
      return c < 0 ? -1 : 1;
    if (auto c = a[i].second <=> b[i].second; c != 0)
      return c < 0 ? -1 : 1;
  }
  return a.size() < b.size() ? -1 : a.size() > b.size() ? 1 : 0;
}

Monomial multiply(const Monomial &a, const Monomial &b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      Exponent e = a[i].second + b[j].second;
      if (!e.is_zero())
        out.emplace_back(a[i].first, std::move(e));
      ++i;
      ++j;
    }
  }
  return out;
}

Expr::Expr(int order) : order_(order) {
  if (order < 1)
    throw ArgumentError("truncation order must be at least 1");
}

Expr::Expr(const Coefficient &c, int order) : Expr(order) {
  if (!c.is_zero())
    terms_.push_back(Term{c, 0, {}});
}

Expr Expr::atom(const Atom &a, int order) { return atom_power(a, Exponent(1), order); }

Expr Expr::atom_power(const Atom &a, const Exponent &e, int order) {
  Expr r(order);
  Monomial m;
  if (!e.is_zero())
    m.emplace_back(a, e);
  r.terms_.push_back(Term{Coefficient(1), 0, std::move(m)});
  return r;
}

Expr Expr::eps(int power, int order) {
  Expr r(order);
  if (power < 0)
    throw ArgumentError("negative eps power");
  if (power < order)
    r.terms_.push_back(Term{Coefficient(1), power, {}});
  return r;
}

Expr Expr::from_terms(std::vector<Term> terms, int order) {
  Expr r(order);
  r.terms_ = std::move(terms);
  r.normalize();
  return r;
}

void Expr::normalize() {
  std::erase_if(terms_, [this](const Term &t) { return t.eps >= order_ || t.coeff.is_zero(); });
  for (const Term &t : terms_)
    if (t.eps < 0)
      throw UnsupportedOperation("negative power of eps");
  std::sort(terms_.begin(), terms_.end(), term_less);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto &t : terms_) {
    if (!out.empty() && same_key(out.back(), t)) {
      out.back().coeff += t.coeff;
      if (out.back().coeff.is_zero())
        out.pop_back();
    } else {
      out.push_back(std::move(t));
    }
  }
  terms_ = std::move(out);
}

bool Expr::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].eps == 0 && terms_[0].mono.empty());
}

Coefficient Expr::constant_value() const {
  if (!is_constant())
    throw ArgumentError("expression is not a constant");
  return terms_.empty() ? Coefficient() : terms_[0].coeff;
}

int Expr::min_eps() const { return terms_.empty() ? 0 : terms_.front().eps; }
int Expr::max_eps() const { return terms_.empty() ? 0 : terms_.back().eps; }

Expr Expr::with_order(int order) const {
  Expr r(order);
  r.terms_ = terms_;
  std::erase_if(r.terms_, [order](const Term &t) { return t.eps >= order; });
  return r;
}

Expr Expr::eps_part(int k) const {
  Expr r(order_);
  for (const Term &t : terms_)
    if (t.eps == k)
      r.terms_.push_back(Term{t.coeff, 0, t.mono});
  r.normalize();
  return r;
}

Expr Expr::shift_eps(int k) const {
  Expr r(order_);
  r.terms_ = terms_;
  for (Term &t : r.terms_)
    t.eps += k;
  r.normalize();
  return r;
}

Expr Expr::operator-() const {
  Expr r = *this;
  for (Term &t : r.terms_)
    t.coeff = -t.coeff;
  return r;
}

Expr &Expr::operator+=(const Expr &o) {
  require_same_order(*this, o);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && term_less(terms_[i], o.terms_[j]))) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || term_less(o.terms_[j], terms_[i])) {
      out.push_back(o.terms_[j++]);
    } else {
      Coefficient c = terms_[i].coeff + o.terms_[j].coeff;
      if (!c.is_zero())
        out.push_back(Term{std::move(c), terms_[i].eps, std::move(terms_[i].mono)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Expr &Expr::operator-=(const Expr &o) { return *this += -o; }

Expr operator*(const Expr &a, const Expr &b) {
  require_same_order(a, b);
  std::vector<Term> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const Term &s : a.terms_)
    for (const Term &t : b.terms_) {
      if (s.eps + t.eps >= a.order_)
        continue;
      terms.push_back(Term{s.coeff * t.coeff, s.eps + t.eps, multiply(s.mono, t.mono)});
    }
  return Expr::from_terms(std::move(terms), a.order_);
}

Expr &Expr::operator*=(const Expr &o) { return *this = *this * o; }

Expr &Expr::operator*=(const Coefficient &c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (Term &t : terms_)
    t.coeff *= c;
  return *this;
}

Expr operator/(const Expr &a, const Expr &b) {
  require_same_order(a, b);
  if (!b.is_unit())
    throw UnsupportedOperation("division by a sum; only coefficient and monomial divisors are allowed");
  if (b.terms_[0].eps != 0)
    throw UnsupportedOperation("division by a power of eps");
  return a * b.inverse();
}

Expr operator/(Expr a, const Coefficient &c) {
  if (c.is_zero())
    throw UnsupportedOperation("division by zero");
  return a *= c.inverse();
}

Expr Expr::pow(long n) const {
  if (n < 0)
    return inverse().pow(-n);
  Expr result(Coefficient(1), order_);
  Expr base = *this;
  while (n) {
    if (n & 1)
      result *= base;
    n >>= 1;
    if (n)
      base *= base;
  }
  return result;
}

Expr Expr::inverse() const {
  Expr lead = eps_part(0);
  if (!lead.is_unit())
    throw UnsupportedOperation("not invertible: the eps-free part must be a single term");
  const Term &t = lead.terms_[0];
  Expr lead_inv(order_);
  Monomial m;
  for (const auto &[a, e] : t.mono)
    m.emplace_back(a, -e);
  lead_inv.terms_.push_back(Term{t.coeff.inverse(), 0, std::move(m)});
  if (terms_.size() == 1)
    return lead_inv;
  Expr q = (*this - lead) * lead_inv;
  Expr sum(Coefficient(1), order_);
  Expr power(Coefficient(1), order_);
  for (int k = 1; k < order_; ++k) {
    power *= -q;
    sum += power;
  }
  return lead_inv * sum;
}

Expr Expr::pow(const Exponent &e) const {
  if (e.is_integer())
    return pow(e.as_integer());
  Expr lead = eps_part(0);
  if (!lead.is_unit())
    throw UnsupportedOperation("symbolic power of a sum");
  const Term &t = lead.terms_[0];
  if (!t.coeff.is_one())
    throw UnsupportedOperation("symbolic power of a non-unit coefficient");
  Expr lead_pow(order_);
  lead_pow.terms_.push_back(Term{Coefficient(1), 0, monomial_power(t.mono, e)});
  if (terms_.size() == 1)
    return lead_pow;
  Expr q = (*this - lead) * lead.inverse();
  Expr sum(Coefficient(1), order_);
  Expr power(Coefficient(1), order_);
  Coefficient binom(1);
  const Coefficient ec = e.to_coefficient();
  for (int k = 1; k < order_; ++k) {
    power *= q;
    binom *= (ec - Coefficient(k - 1)) / Coefficient(k);
    sum += power * binom;
  }
  return lead_pow * sum;
}

Expr Expr::substitute_param(Symbol s, const Coefficient &value) const {
  std::vector<Term> out = terms_;
  for (Term &t : out) {
    t.coeff = t.coeff.substitute(s, value);
    for (auto &[a, e] : t.mono)
      if (!e.linear().empty())
        e = Exponent::from_coefficient(e.to_coefficient().substitute(s, value));
  }
  for (Term &t : out)
    std::erase_if(t.mono, [](const auto &p) { return p.second.is_zero(); });
  return from_terms(std::move(out), order_);
}

Expr Expr::substitute_atoms(const std::function<std::optional<Expr>(const Atom &)> &fn) const {
  std::map<Atom, std::optional<Expr>> cache;
  std::vector<Term> kept;
  Expr sum(order_);
  for (const Term &t : terms_) {
    Monomial rest;
    std::vector<Expr> factors;
    for (const auto &[a, e] : t.mono) {
      auto it = cache.find(a);
      if (it == cache.end())
        it = cache.emplace(a, fn(a)).first;
      if (it->second) {
        if (it->second->order() != order_)
          throw ConfigError("substituted expression has a different truncation order");
        factors.push_back(it->second->pow(e));
      } else {
        rest.emplace_back(a, e);
      }
    }
    if (factors.empty()) {
      kept.push_back(t);
      continue;
    }
    Expr prod(order_);
    prod.terms_.push_back(Term{t.coeff, t.eps, std::move(rest)});
    for (const Expr &f : factors)
      prod *= f;
    sum += prod;
  }
  return sum + from_terms(std::move(kept), order_);
}

Expr Expr::differentiate(const std::function<std::optional<Expr>(const Atom &)> &fn) const {
  std::map<Atom, std::optional<Expr>> cache;
  std::vector<Term> out;
  for (const Term &t : terms_) {
    for (std::size_t k = 0; k < t.mono.size(); ++k) {
      const auto &[a, e] = t.mono[k];
      auto it = cache.find(a);
      if (it == cache.end())
        it = cache.emplace(a, fn(a)).first;
      if (!it->second || it->second->is_zero())
        continue;
      Monomial reduced = t.mono;
      Exponent lowered = e - Exponent(1);
      if (lowered.is_zero())
        reduced.erase(reduced.begin() + static_cast<long>(k));
      else
        reduced[k].second = lowered;
      const Coefficient c = t.coeff * e.to_coefficient();
      for (const Term &d : it->second->terms_) {
        if (t.eps + d.eps >= order_)
          continue;
        out.push_back(Term{c * d.coeff, t.eps + d.eps, multiply(reduced, d.mono)});
      }
    }
  }
  return from_terms(std::move(out), order_);
}

std::vector<Atom> Expr::atoms() const {
  std::set<Atom> s;
  for (const Term &t : terms_)
    for (const auto &p : t.mono)
      s.insert(p.first);
  return {s.begin(), s.end()};
}

bool Expr::has_atom(const std::function<bool(const Atom &)> &pred) const {
  for (const Term &t : terms_)
    for (const auto &p : t.mono)
      if (pred(p.first))
        return true;
  return false;
}

std::vector<Symbol> Expr::params() const {
  std::set<Symbol> s;
  for (const Term &t : terms_) {
    for (Symbol p : t.coeff.variables())
      s.insert(p);
    for (const auto &[a, e] : t.mono)
      for (const auto &l : e.linear())
        s.insert(l.first);
  }
  return {s.begin(), s.end()};
}

bool equals(const Expr &a, const Expr &b) {
  require_same_order(a, b);
  if (a.terms_.size() != b.terms_.size())
    return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    const Term &s = a.terms_[i];
    const Term &t = b.terms_[i];
    if (s.eps != t.eps || compare_monomials(s.mono, t.mono) != 0 || !(s.coeff == t.coeff))
      return false;
  }
  return true;
}

Expr truncate(const Expr &e, int order) {
  if (order < 1)
    throw ArgumentError("truncation order must be at least 1");
  return e.with_order(order);
}

std::shared_ptr<const Tree> Tree::num(Rational q) {
  auto t = std::make_shared<Tree>();
  t->kind = Kind::Number;
  t->number = std::move(q);
  return t;
}

std::shared_ptr<const Tree> Tree::par(Symbol s) {
  auto t = std::make_shared<Tree>();
  t->kind = Kind::Param;
  t->param = s;
  return t;
}

std::shared_ptr<const Tree> Tree::leaf(const Atom &a) {
  auto t = std::make_shared<Tree>();
  t->kind = Kind::Atom;
  t->atom = a;
  return t;
}

std::shared_ptr<const Tree> Tree::epsilon() {
  auto t = std::make_shared<Tree>();
  t->kind = Kind::Eps;
  return t;
}

std::shared_ptr<const Tree> Tree::node(Kind k, std::vector<std::shared_ptr<const Tree>> kids) {
  auto t = std::make_shared<Tree>();
  t->kind = k;
  t->children = std::move(kids);
  return t;
}

std::shared_ptr<const Tree> Tree::pow(std::shared_ptr<const Tree> base, long n) {
  auto t = std::make_shared<Tree>();
  t->kind = Kind::Pow;
  t->power = n;
  t->children = {std::move(base)};
  return t;
}

Expr normalize(const Tree &t, int order) {
  switch (t.kind) {
  case Tree::Kind::Number:
    return Expr(Coefficient(t.number), order);
  case Tree::Kind::Param:
    return Expr(Coefficient::param(t.param), order);
  case Tree::Kind::Atom:
    return Expr::atom(*t.atom, order);
  case Tree::Kind::Eps:
    return Expr::eps(1, order);
  case Tree::Kind::Add: {
    Expr r(order);
    for (const auto &c : t.children)
      r += normalize(*c, order);
    return r;
  }
  case Tree::Kind::Mul: {
    Expr r(Coefficient(1), order);
    for (const auto &c : t.children)
      r *= normalize(*c, order);
    return r;
  }
  case Tree::Kind::Neg:
    return -normalize(*t.children.at(0), order);
  case Tree::Kind::Div:
    return normalize(*t.children.at(0), order) / normalize(*t.children.at(1), order);
  case Tree::Kind::Pow:
    return normalize(*t.children.at(0), order).pow(t.power);
  }
  throw ArgumentError("malformed expression tree");
}

Expr normalize(const Expr &e) { return Expr::from_terms(e.terms(), e.order()); }

long double evaluate(const Coefficient &c, const Valuation &val) {
  return c.evaluate([&](Symbol s) {
    auto v = val.param ? val.param(s) : std::nullopt;
    if (!v)
      throw UnboundAtom("no value for parameter " + s.name());
    return *v;
  });
}

long double evaluate(const Expr &e, const Valuation &val) {
  auto param = [&](Symbol s) {
    auto v = val.param ? val.param(s) : std::nullopt;
    if (!v)
      throw UnboundAtom("no value for parameter " + s.name());
    return *v;
  };
  std::map<Atom, long double> cache;
  long double sum = 0;
  for (const Term &t : e.terms()) {
    long double v = t.coeff.evaluate(param) * int_pow(val.eps, t.eps);
    for (const auto &[a, ex] : t.mono) {
      auto it = cache.find(a);
      if (it == cache.end()) {
        auto x = val.atom ? val.atom(a) : std::nullopt;
        if (!x)
          throw UnboundAtom("no value for an atom of the expression");
        it = cache.emplace(a, *x).first;
      }
      v *= ex.is_integer() ? int_pow(it->second, ex.as_integer()) : std::pow(it->second, ex.evaluate(param));
    }
    sum += v;
  }
  return sum;
}

} // namespace adjforge
