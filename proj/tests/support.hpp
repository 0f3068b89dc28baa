#pragma once

#include <string>

#include "adjforge/render.hpp"
#include "adjforge/session.hpp"

namespace testing {

inline const char *kWave = R"(
vars x t;
unknown u adjoint v;
aux W;
param eps 2;
param mu;
func F(u) abstract;
eq wave: u[t,t] - Dx(F(u)*u[x]) + eps*u[t] = 0 solve u[t,t];
)";

inline adjforge::Session session(const std::string &text) { return adjforge::Session::parse(text); }

/// Bundled session `name`.adf with the wave catalog included.
inline adjforge::Session bundled(const std::string &name) {
  adjforge::Session s = adjforge::Session::load(std::string(ADJFORGE_DATA_DIR) + "/" + name + ".adf");
  if (name.rfind("wave", 0) == 0)
    s.include_file(std::string(ADJFORGE_DATA_DIR) + "/wave.adfcat");
  return s;
}

inline std::string text(const adjforge::Session &s, const adjforge::Expr &e) {
  return adjforge::render(e, s.space());
}

} // namespace testing
