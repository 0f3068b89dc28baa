#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adjforge/atom.hpp"

namespace adjforge {

/// Names of the independent, dependent, adjoint and auxiliary variables.
struct Space {
  std::vector<std::string> independents;
  std::vector<std::string> dependents;
  std::vector<std::string> adjoints;
  std::vector<std::string> auxiliaries;

  std::size_t n_independents() const { return independents.size(); }
  std::size_t n_dependents() const { return dependents.size(); }

  std::optional<std::uint8_t> independent(std::string_view name) const;
  /// Looks the name up among dependents, adjoints and auxiliaries.
  std::optional<std::pair<Family, std::uint32_t>> variable(std::string_view name) const;
  const std::string &name(Family f, std::uint32_t sigma) const;
  const std::string &name(const FuncArg &a) const;
  /// Number of variables in the given family.
  std::size_t count(Family f) const;

  static Space standard(std::vector<std::string> xs, std::vector<std::string> us);
};

} // namespace adjforge
