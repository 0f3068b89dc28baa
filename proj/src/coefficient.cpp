#include "adjforge/coefficient.hpp"

#include <set>

#include "adjforge/error.hpp"

namespace adjforge {

namespace {

Coefficient poly_substitute(const Poly &p, Symbol s, const Coefficient &value) {
  if (!p.depends_on(s))
    return Coefficient(p);
  auto coeffs = p.coefficients_in(s);
  // Horner in the substituted variable
  Coefficient acc;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    acc *= value;
    acc += Coefficient(coeffs[k]);
  }
  return acc;
}

} // namespace

Coefficient::Coefficient(Poly num, Poly den) {
  if (den.is_zero())
    throw UnsupportedOperation("coefficient with zero denominator");
  if (num.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (!den.is_constant()) {
    Poly g = gcd(num, den);
    if (!g.is_constant()) {
      num = exact_divide(num, g);
      den = exact_divide(den, g);
    }
  }
  Rational lc = den.leading_coefficient();
  num_ = num.scaled(1 / lc);
  den_ = den.scaled(1 / lc);
}

std::vector<Symbol> Coefficient::variables() const {
  std::set<Symbol> vs;
  for (auto s : num_.variables())
    vs.insert(s);
  for (auto s : den_.variables())
    vs.insert(s);
  return {vs.begin(), vs.end()};
}

Coefficient Coefficient::operator-() const {
  Coefficient c = *this;
  c.num_ = -c.num_;
  return c;
}

Coefficient &Coefficient::operator+=(const Coefficient &o) {
  if (o.is_zero())
    return *this;
  if (is_zero())
    return *this = o;
  if (den_ == o.den_) {
    Poly n = num_ + o.num_;
    if (den_.is_constant()) {
      num_ = std::move(n);
      return *this;
    }
    return *this = Coefficient(std::move(n), den_);
  }
  return *this = Coefficient(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Coefficient &Coefficient::operator*=(const Coefficient &o) {
  if (is_zero() || o.is_zero())
    return *this = Coefficient();
  if (den_.is_constant() && o.den_.is_constant()) {
    num_ *= o.num_;
    return *this;
  }
  Poly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
  Poly n = exact_divide(num_, g1) * exact_divide(o.num_, g2);
  Poly d = exact_divide(den_, g2) * exact_divide(o.den_, g1);
  Rational lc = d.leading_coefficient();
  num_ = n.scaled(1 / lc);
  den_ = d.scaled(1 / lc);
  return *this;
}

Coefficient Coefficient::inverse() const {
  if (is_zero())
    throw UnsupportedOperation("division by a zero coefficient");
  return Coefficient(den_, num_);
}

Coefficient &Coefficient::operator/=(const Coefficient &o) { return *this *= o.inverse(); }

Coefficient Coefficient::substitute(Symbol s, const Coefficient &value) const {
  if (!depends_on(s))
    return *this;
  return poly_substitute(num_, s, value) / poly_substitute(den_, s, value);
}

long double Coefficient::evaluate(const std::function<long double(Symbol)> &value) const {
  return num_.evaluate(value) / den_.evaluate(value);
}

} // namespace adjforge
