#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "adjforge/coefficient.hpp"

namespace adjforge {

/// Affine exponent c0 + sum_i ci * p_i with rational ci over ConstParams p_i.
///
/// Covers the integer powers of the jet calculus as well as u^mu, u^(mu-1)
/// and u^(-4/3).
class Exponent {
public:
  Exponent() = default;
  Exponent(long value) : constant_(value) {} // NOLINT(google-explicit-constructor)
  explicit Exponent(Rational value) : constant_(std::move(value)) {}
  /// Fails with ArgumentError unless `c` is an affine polynomial.
  static Exponent from_coefficient(const Coefficient &c);

  const Rational &constant() const { return constant_; }
  const std::vector<std::pair<Symbol, Rational>> &linear() const { return linear_; }

  bool is_zero() const { return linear_.empty() && constant_ == 0; }
  bool is_integer() const { return linear_.empty() && constant_.get_den() == 1; }
  /// Only valid if is_integer().
  long as_integer() const { return constant_.get_num().get_si(); }
  bool is_positive_integer() const { return is_integer() && constant_ > 0; }

  Exponent operator-() const;
  Exponent &operator+=(const Exponent &o);
  friend Exponent operator+(Exponent a, const Exponent &b) { return a += b; }
  friend Exponent operator-(Exponent a, const Exponent &b) { return a += -b; }
  Exponent scaled(const Rational &k) const;

  Coefficient to_coefficient() const;
  long double evaluate(const std::function<long double(Symbol)> &value) const;

  friend bool operator==(const Exponent &a, const Exponent &b) {
    return a.constant_ == b.constant_ && a.linear_ == b.linear_;
  }
  friend std::strong_ordering operator<=>(const Exponent &a, const Exponent &b);

private:
  Rational constant_{0};
  std::vector<std::pair<Symbol, Rational>> linear_;
};

} // namespace adjforge
