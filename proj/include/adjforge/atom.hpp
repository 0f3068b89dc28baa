#pragma once

#include <compare>
#include <cstdint>
#include <variant>
#include <vector>

#include "adjforge/symbol.hpp"

namespace adjforge {

/// Which kind of dependent variable a jet coordinate belongs to.
enum class Family : std::uint8_t { U = 0, V = 1, Aux = 2 };

/// Sorted tuple of independent-variable indices; empty means the variable itself.
using MultiIndex = std::vector<std::uint8_t>;

MultiIndex with_index(MultiIndex j, std::uint8_t i);
/// True if `sub` is a sub-multiset of `j`.
bool contains(const MultiIndex &j, const MultiIndex &sub);
/// Multiset difference j - sub; requires contains(j, sub).
MultiIndex difference(const MultiIndex &j, const MultiIndex &sub);
/// Number of distinct orderings of the multiset `j`.
long orderings(const MultiIndex &j);

struct BaseVar {
  std::uint8_t index = 0;
  friend bool operator==(const BaseVar &, const BaseVar &) = default;
  friend auto operator<=>(const BaseVar &, const BaseVar &) = default;
};

struct JetCoord {
  Family family = Family::U;
  std::uint32_t sigma = 0;
  MultiIndex index;

  std::size_t order() const { return index.size(); }
  JetCoord base() const { return {family, sigma, {}}; }
  friend bool operator==(const JetCoord &, const JetCoord &) = default;
  friend std::strong_ordering operator<=>(const JetCoord &a, const JetCoord &b);
};

/// Argument slot of a function application: an independent variable or an
/// underived dependent variable.
struct FuncArg {
  bool dependent = true;
  Family family = Family::U;
  std::uint32_t index = 0;

  friend bool operator==(const FuncArg &, const FuncArg &) = default;
  friend auto operator<=>(const FuncArg &, const FuncArg &) = default;
};

enum class FuncRule : std::uint8_t { Abstract = 0, Exponential = 1 };

/// F(args) differentiated once per entry of `derivs` (sorted slot numbers).
struct FuncApp {
  Symbol symbol;
  FuncRule rule = FuncRule::Abstract;
  std::vector<FuncArg> args;
  std::vector<std::uint8_t> derivs;

  std::size_t derivative_order() const { return derivs.size(); }
  friend bool operator==(const FuncApp &, const FuncApp &) = default;
  friend std::strong_ordering operator<=>(const FuncApp &a, const FuncApp &b);
};

class Atom {
public:
  Atom(BaseVar b) : v_(b) {} // NOLINT(google-explicit-constructor)
  Atom(JetCoord j) : v_(std::move(j)) {} // NOLINT(google-explicit-constructor)
  Atom(FuncApp f) : v_(std::move(f)) {} // NOLINT(google-explicit-constructor)

  static Atom independent(std::uint8_t i) { return Atom(BaseVar{i}); }
  static Atom jet(Family f, std::uint32_t sigma, MultiIndex j = {}) {
    return Atom(JetCoord{f, sigma, std::move(j)});
  }

  bool is_base() const { return v_.index() == 0; }
  bool is_jet() const { return v_.index() == 1; }
  bool is_func() const { return v_.index() == 2; }
  const BaseVar &base() const { return std::get<0>(v_); }
  const JetCoord &jet() const { return std::get<1>(v_); }
  const FuncApp &func() const { return std::get<2>(v_); }

  /// Whether the atom has an argument or coordinate on the given family.
  bool involves(Family f) const;

  friend bool operator==(const Atom &a, const Atom &b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Atom &a, const Atom &b);

private:
  std::variant<BaseVar, JetCoord, FuncApp> v_;
};

} // namespace adjforge
