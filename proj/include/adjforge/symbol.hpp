#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace adjforge {

/// Interned name used for constant parameters and function symbols.
///
/// Symbols compare by interning id, so the order is the order of first use.
/// The table is process-wide and thread-safe; ids are never reused.
class Symbol {
public:
  Symbol() = default;

  static Symbol intern(std::string_view name);
  /// A symbol whose name has never been interned, built from `prefix`.
  static Symbol fresh(std::string_view prefix);
  static bool exists(std::string_view name);

  std::uint32_t id() const { return id_; }
  const std::string &name() const;

  friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
  friend std::strong_ordering operator<=>(Symbol a, Symbol b) { return a.id_ <=> b.id_; }

private:
  explicit Symbol(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = 0;
};

} // namespace adjforge
