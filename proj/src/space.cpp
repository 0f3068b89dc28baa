#include "adjforge/space.hpp"

#include <algorithm>

#include "adjforge/error.hpp"

namespace adjforge {

std::optional<std::uint8_t> Space::independent(std::string_view name) const {
  auto it = std::find(independents.begin(), independents.end(), name);
  if (it == independents.end())
    return std::nullopt;
  return static_cast<std::uint8_t>(it - independents.begin());
}

std::optional<std::pair<Family, std::uint32_t>> Space::variable(std::string_view name) const {
  auto find_in = [&](const std::vector<std::string> &v) -> std::optional<std::uint32_t> {
    auto it = std::find(v.begin(), v.end(), name);
    if (it == v.end())
      return std::nullopt;
    return static_cast<std::uint32_t>(it - v.begin());
  };
  if (auto i = find_in(dependents))
    return std::make_pair(Family::U, *i);
  if (auto i = find_in(adjoints))
    return std::make_pair(Family::V, *i);
  if (auto i = find_in(auxiliaries))
    return std::make_pair(Family::Aux, *i);
  return std::nullopt;
}

const std::string &Space::name(Family f, std::uint32_t sigma) const {
  const auto &v = f == Family::U ? dependents : f == Family::V ? adjoints : auxiliaries;
  if (sigma >= v.size())
    throw ArgumentError("variable index out of range");
  return v[sigma];
}

const std::string &Space::name(const FuncArg &a) const {
  if (a.dependent)
    return name(a.family, a.index);
  if (a.index >= independents.size())
    throw ArgumentError("independent variable index out of range");
  return independents[a.index];
}

std::size_t Space::count(Family f) const {
  return f == Family::U ? dependents.size() : f == Family::V ? adjoints.size() : auxiliaries.size();
}

Space Space::standard(std::vector<std::string> xs, std::vector<std::string> us) {
  Space s;
  s.independents = std::move(xs);
  s.dependents = std::move(us);
  for (const auto &u : s.dependents)
    s.adjoints.push_back(s.dependents.size() == 1 ? std::string("v") : "v" + u);
  return s;
}

} // namespace adjforge
