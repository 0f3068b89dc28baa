#include "adjforge/atom.hpp"

#include <algorithm>

namespace adjforge {

MultiIndex with_index(MultiIndex j, std::uint8_t i) {
  j.insert(std::upper_bound(j.begin(), j.end(), i), i);
  return j;
}

bool contains(const MultiIndex &j, const MultiIndex &sub) {
  return std::includes(j.begin(), j.end(), sub.begin(), sub.end());
}

MultiIndex difference(const MultiIndex &j, const MultiIndex &sub) {
  MultiIndex out;
  std::set_difference(j.begin(), j.end(), sub.begin(), sub.end(), std::back_inserter(out));
  return out;
}

long orderings(const MultiIndex &j) {
  long n = 1;
  long k = 0;
  std::size_t run = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    ++k;
    run = (i > 0 && j[i] == j[i - 1]) ? run + 1 : 1;
    n = n * k / static_cast<long>(run);
  }
  return n;
}

std::strong_ordering operator<=>(const JetCoord &a, const JetCoord &b) {
  if (auto c = a.family <=> b.family; c != 0)
    return c;
  if (auto c = a.sigma <=> b.sigma; c != 0)
    return c;
  if (auto c = a.index.size() <=> b.index.size(); c != 0)
    return c;
  return a.index <=> b.index;
}

std::strong_ordering operator<=>(const FuncApp &a, const FuncApp &b) {
  if (auto c = a.symbol <=> b.symbol; c != 0)
    return c;
  if (auto c = a.derivs.size() <=> b.derivs.size(); c != 0)
    return c;
  if (auto c = a.derivs <=> b.derivs; c != 0)
    return c;
  if (auto c = a.rule <=> b.rule; c != 0)
    return c;
  return a.args <=> b.args;
}

bool Atom::involves(Family f) const {
  if (is_jet())
    return jet().family == f;
  if (is_func())
    return std::any_of(func().args.begin(), func().args.end(),
                       [f](const FuncArg &a) { return a.dependent && a.family == f; });
  return false;
}

std::strong_ordering operator<=>(const Atom &a, const Atom &b) {
  if (auto c = a.v_.index() <=> b.v_.index(); c != 0)
    return c;
  switch (a.v_.index()) {
  case 0:
    return a.base() <=> b.base();
  case 1:
    return a.jet() <=> b.jet();
  default:
    return a.func() <=> b.func();
  }
}

} // namespace adjforge
