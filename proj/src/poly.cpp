#include "adjforge/poly.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "adjforge/error.hpp"

namespace adjforge {

namespace {

unsigned total(const PolyMonomial &m) {
  unsigned d = 0;
  for (const auto &[s, e] : m)
    d += e;
  return d;
}

PolyMonomial mono_mul(const PolyMonomial &a, const PolyMonomial &b) {
  PolyMonomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

/// a / b when b divides a as a power product.
bool mono_div(const PolyMonomial &a, const PolyMonomial &b, PolyMonomial &out) {
  out.clear();
  std::size_t i = 0;
  for (const auto &[s, e] : b) {
    while (i < a.size() && a[i].first < s)
      out.push_back(a[i++]);
    if (i == a.size() || a[i].first != s || a[i].second < e)
      return false;
    if (a[i].second > e)
      out.emplace_back(s, a[i].second - e);
    ++i;
  }
  while (i < a.size())
    out.push_back(a[i++]);
  return true;
}

Poly content_in(const Poly &p, Symbol x);
Poly primitive_in(const Poly &p, Symbol x) { return exact_divide(p, content_in(p, x)); }

Poly lead_in(const Poly &p, Symbol x) { return p.coefficients_in(x).back(); }

Poly pseudo_remainder(Poly a, const Poly &b, Symbol x) {
  const unsigned db = b.degree(x);
  const Poly lb = lead_in(b, x);
  const Poly xs = Poly::variable(x);
  while (!a.is_zero() && a.degree(x) >= db) {
    const unsigned d = a.degree(x) - db;
    Poly la = lead_in(a, x);
    a = lb * a - la * xs.pow(d) * b;
  }
  return a;
}

Poly content_in(const Poly &p, Symbol x) {
  Poly g;
  for (const auto &c : p.coefficients_in(x)) {
    if (c.is_zero())
      continue;
    g = gcd(g, c);
    if (g.is_constant())
      return Poly(1);
  }
  return g.is_zero() ? Poly(1) : g;
}

} // namespace

int compare_grlex(const PolyMonomial &a, const PolyMonomial &b) {
  const unsigned da = total(a), db = total(b);
  if (da != db)
    return da < db ? -1 : 1;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size())
      return 1;
    if (i == a.size())
      return -1;
    if (a[i].first == b[j].first) {
      if (a[i].second != b[j].second)
        return a[i].second < b[j].second ? -1 : 1;
      ++i;
      ++j;
    } else if (a[i].first < b[j].first) {
      return 1; // a carries a more significant variable
    } else {
      return -1;
    }
  }
  return 0;
}

Poly::Poly(long value) {
  if (value != 0)
    terms_.emplace_back(PolyMonomial{}, Rational(value));
}

Poly::Poly(const Rational &value) {
  if (value != 0)
    terms_.emplace_back(PolyMonomial{}, value);
}

Poly Poly::variable(Symbol s) {
  Poly p;
  p.terms_.emplace_back(PolyMonomial{{s, 1u}}, Rational(1));
  return p;
}

Poly Poly::from_unsorted(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term &a, const Term &b) { return compare_grlex(a.first, b.first) < 0; });
  Poly p;
  for (auto &t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second == 0)
        p.terms_.pop_back();
    } else if (t.second != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty()); }

Rational Poly::constant_value() const {
  if (!terms_.empty() && terms_.front().first.empty())
    return terms_.front().second;
  return Rational(0);
}

unsigned Poly::degree(Symbol s) const {
  unsigned d = 0;
  for (const auto &[m, c] : terms_)
    for (const auto &[v, e] : m)
      if (v == s)
        d = std::max(d, e);
  return d;
}

unsigned Poly::total_degree() const { return terms_.empty() ? 0 : total(terms_.back().first); }

std::vector<Symbol> Poly::variables() const {
  std::set<Symbol> vs;
  for (const auto &[m, c] : terms_)
    for (const auto &[v, e] : m)
      vs.insert(v);
  return {vs.begin(), vs.end()};
}

bool Poly::depends_on(Symbol s) const { return degree(s) > 0; }

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto &t : p.terms_)
    t.second = -t.second;
  return p;
}

Poly &Poly::operator+=(const Poly &o) {
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c = (i == terms_.size()) ? 1 : (j == o.terms_.size()) ? -1 : compare_grlex(terms_[i].first, o.terms_[j].first);
    if (c < 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (c > 0) {
      out.push_back(o.terms_[j++]);
    } else {
      Rational s = terms_[i].second + o.terms_[j].second;
      if (s != 0)
        out.emplace_back(std::move(terms_[i].first), s);
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Poly &Poly::operator-=(const Poly &o) { return *this += -o; }

Poly operator*(const Poly &a, const Poly &b) {
  if (a.is_zero() || b.is_zero())
    return Poly();
  if (a.is_constant())
    return b.scaled(a.constant_value());
  if (b.is_constant())
    return a.scaled(b.constant_value());
  std::vector<Poly::Term> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto &[ma, ca] : a.terms_)
    for (const auto &[mb, cb] : b.terms_)
      terms.emplace_back(mono_mul(ma, mb), ca * cb);
  return Poly::from_unsorted(std::move(terms));
}

Poly &Poly::operator*=(const Poly &o) { return *this = *this * o; }

bool operator==(const Poly &a, const Poly &b) {
  if (a.terms_.size() != b.terms_.size())
    return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second)
      return false;
  return true;
}

Poly Poly::scaled(const Rational &c) const {
  if (c == 0)
    return Poly();
  Poly p = *this;
  for (auto &t : p.terms_)
    t.second *= c;
  return p;
}

Poly Poly::pow(unsigned n) const {
  Poly result(1), base = *this;
  while (n) {
    if (n & 1u)
      result *= base;
    n >>= 1u;
    if (n)
      base *= base;
  }
  return result;
}

Poly Poly::monic() const {
  if (is_zero())
    return *this;
  Rational inv = 1 / leading_coefficient();
  return scaled(inv);
}

std::vector<Poly> Poly::coefficients_in(Symbol x) const {
  std::vector<std::vector<Term>> buckets(degree(x) + 1);
  for (const auto &[m, c] : terms_) {
    PolyMonomial rest;
    unsigned k = 0;
    for (const auto &[v, e] : m) {
      if (v == x)
        k = e;
      else
        rest.emplace_back(v, e);
    }
    buckets[k].emplace_back(std::move(rest), c);
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto &b : buckets)
    out.push_back(from_unsorted(std::move(b)));
  return out;
}

Poly Poly::from_coefficients_in(Symbol x, const std::vector<Poly> &coeffs) {
  Poly out;
  const Poly xs = variable(x);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    out += coeffs[k] * xs.pow(static_cast<unsigned>(k));
  return out;
}

long double Poly::evaluate(const std::function<long double(Symbol)> &value) const {
  long double sum = 0;
  for (const auto &[m, c] : terms_) {
    long double t = c.get_d();
    if (c.get_den() != 1)
      t = static_cast<long double>(c.get_num().get_d()) / static_cast<long double>(c.get_den().get_d());
    for (const auto &[v, e] : m)
      t *= std::pow(value(v), static_cast<long double>(e));
    sum += t;
  }
  return sum;
}

Poly exact_divide(const Poly &a, const Poly &b) {
  if (b.is_zero())
    throw UnsupportedOperation("polynomial division by zero");
  if (b.is_constant())
    return a.scaled(1 / b.constant_value());
  Poly q, r = a;
  PolyMonomial m;
  while (!r.is_zero()) {
    if (!mono_div(r.leading_monomial(), b.leading_monomial(), m))
      throw UnsupportedOperation("polynomial division is not exact");
    Rational c = r.leading_coefficient() / b.leading_coefficient();
    Poly step = Poly(c);
    for (const auto &[v, e] : m)
      step *= Poly::variable(v).pow(e);
    q += step;
    r -= step * b;
  }
  return q;
}

Poly gcd(const Poly &a, const Poly &b) {
  if (a.is_zero())
    return b.monic();
  if (b.is_zero())
    return a.monic();
  if (a.is_constant() || b.is_constant())
    return Poly(1);
  if (a == b)
    return a.monic();

  auto va = a.variables(), vb = b.variables();
  Symbol x = va.front();
  if (vb.front() < x)
    x = vb.front();
  if (!a.depends_on(x))
    return gcd(a, content_in(b, x));
  if (!b.depends_on(x))
    return gcd(content_in(a, x), b);

  Poly ca = content_in(a, x), cb = content_in(b, x);
  Poly pa = exact_divide(a, ca), pb = exact_divide(b, cb);
  Poly c = gcd(ca, cb);
  if (pa.degree(x) < pb.degree(x))
    std::swap(pa, pb);
  while (true) {
    Poly r = pseudo_remainder(pa, pb, x);
    if (r.is_zero())
      break;
    if (r.degree(x) == 0) {
      pb = Poly(1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_in(r, x);
  }
  return (c * primitive_in(pb, x)).monic();
}

std::string to_string(const Rational &q) { return q.get_str(); }

} // namespace adjforge
