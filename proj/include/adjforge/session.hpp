#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "adjforge/generator.hpp"
#include "adjforge/pde_system.hpp"
#include "adjforge/space.hpp"

namespace adjforge {

enum class FuncKind { Abstract, Exponential, Power };

struct FuncDecl {
  Symbol symbol;
  FuncKind kind = FuncKind::Abstract;
  std::vector<std::string> formals;
  Exponent power; // only for FuncKind::Power
};

/// Declarations and named objects of a session file plus any catalogs.
class Session {
public:
  Session();

  /// Parses a session or catalog file into a new session.
  static Session parse(std::string_view text);
  /// Adds the statements of another file (a catalog) to this session.
  void include(std::string_view text);
  static Session load(const std::string &path);
  void include_file(const std::string &path);

  /// Parses an expression in the session's declarations.
  Expr expr(std::string_view text) const;

  const Space &space() const { return space_; }
  int order() const { return order_; }
  const std::vector<Symbol> &params() const { return params_; }
  const std::map<std::string, FuncDecl> &functions() const { return funcs_; }

  bool has_system(const std::string &name) const;
  PdeSystem system(const std::string &name) const;
  const Generator &generator(const std::string &name) const;
  const Substitution &substitution(const std::string &name) const;

  std::vector<std::string> equation_names() const;
  std::vector<std::string> generator_names() const;
  std::vector<std::string> substitution_names() const;

private:
  friend class Parser;
  Space space_;
  int order_ = Expr::kDefaultOrder;
  bool order_fixed_ = false;
  std::vector<Symbol> params_;
  std::map<std::string, FuncDecl> funcs_;
  std::map<std::string, Equation> equations_;
  std::vector<std::string> equation_order_;
  std::map<std::string, std::vector<std::string>> systems_;
  std::map<std::string, Generator> generators_;
  std::vector<std::string> generator_order_;
  std::map<std::string, Substitution> substitutions_;
  std::vector<std::string> substitution_order_;
};

} // namespace adjforge
