#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "adjforge/atom.hpp"
#include "adjforge/coefficient.hpp"
#include "adjforge/exponent.hpp"

namespace adjforge {

/// Power product of atoms, sorted by atom, no zero exponents.
using Monomial = std::vector<std::pair<Atom, Exponent>>;

int compare_monomials(const Monomial &a, const Monomial &b);
Monomial multiply(const Monomial &a, const Monomial &b);

struct Term {
  Coefficient coeff;
  int eps = 0;
  Monomial mono;
};

/// Canonical sum of terms modulo eps^order.
///
/// Terms are ordered by eps power ascending, then by monomial descending.
/// Binary operations require equal truncation orders and throw ConfigError
/// otherwise; coefficient operands carry no order.
class Expr {
public:
  static constexpr int kDefaultOrder = 2;

  explicit Expr(int order = kDefaultOrder);
  Expr(const Coefficient &c, int order = kDefaultOrder);
  static Expr atom(const Atom &a, int order = kDefaultOrder);
  static Expr atom_power(const Atom &a, const Exponent &e, int order = kDefaultOrder);
  static Expr eps(int power = 1, int order = kDefaultOrder);
  static Expr from_terms(std::vector<Term> terms, int order);

  const std::vector<Term> &terms() const { return terms_; }
  int order() const { return order_; }
  bool is_zero() const { return terms_.empty(); }
  /// Zero or a single eps-free term without atoms.
  bool is_constant() const;
  Coefficient constant_value() const;
  /// A single term (an invertible element).
  bool is_unit() const { return terms_.size() == 1; }
  int min_eps() const;
  int max_eps() const;

  Expr with_order(int order) const;
  /// Coefficient of eps^k, as an eps-free expression of the same order.
  Expr eps_part(int k) const;
  /// Multiplies by eps^k (k may be negative when every term allows it).
  Expr shift_eps(int k) const;

  Expr operator-() const;
  Expr &operator+=(const Expr &o);
  Expr &operator-=(const Expr &o);
  Expr &operator*=(const Expr &o);
  Expr &operator*=(const Coefficient &c);
  friend Expr operator+(Expr a, const Expr &b) { return a += b; }
  friend Expr operator-(Expr a, const Expr &b) { return a -= b; }
  friend Expr operator*(const Expr &a, const Expr &b);
  friend Expr operator*(Expr a, const Coefficient &c) { return a *= c; }
  friend Expr operator*(const Coefficient &c, Expr a) { return a *= c; }
  friend Expr operator+(Expr a, const Coefficient &c) { return a += Expr(c, a.order()); }
  friend Expr operator+(const Coefficient &c, Expr a) { return a += Expr(c, a.order()); }
  friend Expr operator-(Expr a, const Coefficient &c) { return a -= Expr(c, a.order()); }
  friend Expr operator-(const Coefficient &c, const Expr &a) { return Expr(c, a.order()) - a; }
  /// Division by a unit; anything else throws UnsupportedOperation.
  friend Expr operator/(const Expr &a, const Expr &b);
  friend Expr operator/(Expr a, const Coefficient &c);

  Expr pow(long n) const;
  /// Power series (a0 + r)^e with a0 the eps-free part, which must be a unit.
  Expr pow(const Exponent &e) const;
  /// Series inverse; the eps-free part must be a unit.
  Expr inverse() const;

  Expr substitute_param(Symbol s, const Coefficient &value) const;
  /// Replaces atoms for which `fn` returns a value; exponents are applied
  /// with pow().
  Expr substitute_atoms(const std::function<std::optional<Expr>(const Atom &)> &fn) const;
  /// Generic derivation; `fn` gives the derivative of an atom (nullopt = 0).
  Expr differentiate(const std::function<std::optional<Expr>(const Atom &)> &fn) const;

  std::vector<Atom> atoms() const;
  bool has_atom(const std::function<bool(const Atom &)> &pred) const;
  std::vector<Symbol> params() const;

  /// Structural equality; throws ConfigError on mismatched orders.
  friend bool equals(const Expr &a, const Expr &b);
  friend bool operator==(const Expr &a, const Expr &b) { return equals(a, b); }

private:
  void normalize();
  std::vector<Term> terms_;
  int order_;
};

Expr truncate(const Expr &e, int order);

/// Raw arithmetic tree, the input of normalize().
struct Tree {
  enum class Kind { Number, Param, Atom, Eps, Add, Mul, Neg, Div, Pow };
  Kind kind = Kind::Number;
  Rational number;
  Symbol param;
  std::optional<Atom> atom;
  long power = 0;
  std::vector<std::shared_ptr<const Tree>> children;

  static std::shared_ptr<const Tree> num(Rational q);
  static std::shared_ptr<const Tree> par(Symbol s);
  static std::shared_ptr<const Tree> leaf(const Atom &a);
  static std::shared_ptr<const Tree> epsilon();
  static std::shared_ptr<const Tree> node(Kind k, std::vector<std::shared_ptr<const Tree>> kids);
  static std::shared_ptr<const Tree> pow(std::shared_ptr<const Tree> base, long n);
};

Expr normalize(const Tree &t, int order = Expr::kDefaultOrder);
/// Re-normalizes an expression from its own term list.
Expr normalize(const Expr &e);

/// Numeric values for atoms, parameters and eps.
struct Valuation {
  std::function<std::optional<long double>(const Atom &)> atom;
  std::function<std::optional<long double>(Symbol)> param;
  long double eps = 0;
};

/// Throws UnboundAtom when an atom or parameter has no value.
long double evaluate(const Expr &e, const Valuation &val);
long double evaluate(const Coefficient &c, const Valuation &val);

} // namespace adjforge
