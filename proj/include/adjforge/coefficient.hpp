#pragma once

#include <functional>
#include <vector>

#include "adjforge/poly.hpp"

namespace adjforge {

/// Element of Q(p1, ..., pk): a reduced quotient of polynomials in ConstParams.
///
/// Invariant: gcd(num, den) = 1 and den is monic under grlex, so equal values
/// have identical representations. Zero is 0/1.
class Coefficient {
public:
  Coefficient() : den_(1) {}
  Coefficient(long value) : num_(value), den_(1) {} // NOLINT(google-explicit-constructor)
  Coefficient(const Rational &value) : num_(value), den_(1) {} // NOLINT(google-explicit-constructor)
  Coefficient(Poly num) : num_(std::move(num)), den_(1) {} // NOLINT(google-explicit-constructor)
  Coefficient(Poly num, Poly den);
  static Coefficient param(Symbol s) { return Coefficient(Poly::variable(s)); }

  const Poly &num() const { return num_; }
  const Poly &den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_constant() && num_.is_constant() && num_.constant_value() == 1; }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  Rational constant_value() const { return num_.constant_value(); }
  bool depends_on(Symbol s) const { return num_.depends_on(s) || den_.depends_on(s); }
  std::vector<Symbol> variables() const;

  Coefficient operator-() const;
  Coefficient &operator+=(const Coefficient &o);
  Coefficient &operator-=(const Coefficient &o) { return *this += -o; }
  Coefficient &operator*=(const Coefficient &o);
  Coefficient &operator/=(const Coefficient &o);
  friend Coefficient operator+(Coefficient a, const Coefficient &b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient &b) { return a -= b; }
  friend Coefficient operator*(Coefficient a, const Coefficient &b) { return a *= b; }
  friend Coefficient operator/(Coefficient a, const Coefficient &b) { return a /= b; }
  friend bool operator==(const Coefficient &a, const Coefficient &b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  Coefficient inverse() const;
  /// Replaces the parameter `s` by `value` everywhere.
  Coefficient substitute(Symbol s, const Coefficient &value) const;
  long double evaluate(const std::function<long double(Symbol)> &value) const;

private:
  Poly num_;
  Poly den_;
};

} // namespace adjforge
