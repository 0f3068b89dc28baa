#pragma once

#include <gmpxx.h>

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "adjforge/symbol.hpp"

namespace adjforge {

using Rational = mpq_class;

/// Power product over parameter symbols, sorted by symbol, exponents > 0.
using PolyMonomial = std::vector<std::pair<Symbol, unsigned>>;

/// Graded lexicographic monomial order (smaller symbol id is more significant).
int compare_grlex(const PolyMonomial &a, const PolyMonomial &b);

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept sorted ascending in grlex order with no zero coefficients,
/// so structural equality is mathematical equality.
class Poly {
public:
  using Term = std::pair<PolyMonomial, Rational>;

  Poly() = default;
  Poly(long value); // NOLINT(google-explicit-constructor)
  Poly(const Rational &value); // NOLINT(google-explicit-constructor)
  static Poly variable(Symbol s);

  const std::vector<Term> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term value; only meaningful when is_constant().
  Rational constant_value() const;
  const Rational &leading_coefficient() const { return terms_.back().second; }
  const PolyMonomial &leading_monomial() const { return terms_.back().first; }

  unsigned degree(Symbol s) const;
  unsigned total_degree() const;
  std::vector<Symbol> variables() const;
  bool depends_on(Symbol s) const;

  Poly operator-() const;
  Poly &operator+=(const Poly &o);
  Poly &operator-=(const Poly &o);
  Poly &operator*=(const Poly &o);
  friend Poly operator+(Poly a, const Poly &b) { return a += b; }
  friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
  friend Poly operator*(const Poly &a, const Poly &b);
  friend bool operator==(const Poly &a, const Poly &b);

  Poly scaled(const Rational &c) const;
  Poly pow(unsigned n) const;
  /// Divides by the leading coefficient (zero stays zero).
  Poly monic() const;

  /// Coefficients as a polynomial in `x`: result[k] multiplies x^k.
  std::vector<Poly> coefficients_in(Symbol x) const;
  static Poly from_coefficients_in(Symbol x, const std::vector<Poly> &coeffs);

  long double evaluate(const std::function<long double(Symbol)> &value) const;

private:
  static Poly from_unsorted(std::vector<Term> terms);
  std::vector<Term> terms_;
};

/// Exact quotient a / b; throws UnsupportedOperation when b does not divide a.
Poly exact_divide(const Poly &a, const Poly &b);
/// Monic greatest common divisor (0 only when both inputs are 0).
Poly gcd(const Poly &a, const Poly &b);

std::string to_string(const Rational &q);

} // namespace adjforge
