#include "adjforge/symbol.hpp"

#include <memory>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

namespace adjforge {
namespace {

struct SymbolTable {
  std::shared_mutex mutex;
  std::vector<std::unique_ptr<std::string>> names;
  std::unordered_map<std::string, std::uint32_t> ids;

  SymbolTable() { names.push_back(std::make_unique<std::string>("<null>")); }
};

SymbolTable &table() {
  static SymbolTable instance;
  return instance;
}

} // namespace

Symbol Symbol::intern(std::string_view name) {
  auto &tab = table();
  std::string key(name);
  {
    std::shared_lock lock(tab.mutex);
    if (auto it = tab.ids.find(key); it != tab.ids.end())
      return Symbol(it->second);
  }
  std::unique_lock lock(tab.mutex);
  if (auto it = tab.ids.find(key); it != tab.ids.end())
    return Symbol(it->second);
  auto id = static_cast<std::uint32_t>(tab.names.size());
  tab.names.push_back(std::make_unique<std::string>(key));
  tab.ids.emplace(std::move(key), id);
  return Symbol(id);
}

Symbol Symbol::fresh(std::string_view prefix) {
  auto &tab = table();
  std::unique_lock lock(tab.mutex);
  for (std::size_t n = tab.names.size();; ++n) {
    std::string candidate = std::string(prefix) + std::to_string(n);
    if (tab.ids.count(candidate))
      continue;
    auto id = static_cast<std::uint32_t>(tab.names.size());
    tab.names.push_back(std::make_unique<std::string>(candidate));
    tab.ids.emplace(std::move(candidate), id);
    return Symbol(id);
  }
}

bool Symbol::exists(std::string_view name) {
  auto &tab = table();
  std::shared_lock lock(tab.mutex);
  return tab.ids.count(std::string(name)) != 0;
}

const std::string &Symbol::name() const {
  auto &tab = table();
  std::shared_lock lock(tab.mutex);
  return *tab.names.at(id_);
}

} // namespace adjforge
