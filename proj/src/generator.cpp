#include "adjforge/generator.hpp"

#include "adjforge/error.hpp"

namespace adjforge {

Generator Generator::zero(std::size_t n_independents, std::size_t n_dependents, int order) {
  Generator g;
  g.xi0.assign(n_independents, Expr(order));
  g.xi1.assign(n_independents, Expr(order));
  g.eta0.assign(n_dependents, Expr(order));
  g.eta1.assign(n_dependents, Expr(order));
  return g;
}

int Generator::order() const {
  if (!xi0.empty())
    return xi0[0].order();
  if (!eta0.empty())
    return eta0[0].order();
  return Expr::kDefaultOrder;
}

bool Generator::has_eps_part() const {
  for (const auto &e : xi1)
    if (!e.is_zero())
      return true;
  for (const auto &e : eta1)
    if (!e.is_zero())
      return true;
  return false;
}

namespace {

std::vector<Expr> combine(const std::vector<Expr> &a, const std::vector<Expr> &b) {
  std::vector<Expr> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    out.push_back(a[i] + Expr::eps(1, a[i].order()) * b.at(i));
  return out;
}

std::vector<Expr> zeros_like(const std::vector<Expr> &a) {
  std::vector<Expr> out;
  for (const auto &e : a)
    out.emplace_back(e.order());
  return out;
}

std::vector<Expr> reorder(const std::vector<Expr> &a, int order) {
  std::vector<Expr> out;
  for (const auto &e : a)
    out.push_back(e.with_order(order));
  return out;
}

} // namespace

std::vector<Expr> Generator::xi() const { return combine(xi0, xi1); }
std::vector<Expr> Generator::eta() const { return combine(eta0, eta1); }

Generator Generator::unperturbed() const {
  Generator g = *this;
  g.xi1 = zeros_like(xi1);
  g.eta1 = zeros_like(eta1);
  return g;
}

Generator Generator::eps_part() const {
  Generator g = *this;
  g.xi0 = xi1;
  g.eta0 = eta1;
  g.xi1 = zeros_like(xi1);
  g.eta1 = zeros_like(eta1);
  return g;
}

Generator Generator::eps_lift() const {
  if (has_eps_part())
    throw ArgumentError("eps_lift needs an unperturbed generator");
  Generator g = *this;
  g.xi1 = xi0;
  g.eta1 = eta0;
  g.xi0 = zeros_like(xi0);
  g.eta0 = zeros_like(eta0);
  return g;
}

Generator Generator::with_order(int order) const {
  Generator g = *this;
  g.xi0 = reorder(xi0, order);
  g.xi1 = reorder(xi1, order);
  g.eta0 = reorder(eta0, order);
  g.eta1 = reorder(eta1, order);
  return g;
}

Generator operator+(const Generator &a, const Generator &b) {
  Generator g = a;
  g.name = a.name + "+" + b.name;
  for (std::size_t i = 0; i < g.xi0.size(); ++i) {
    g.xi0[i] += b.xi0.at(i);
    g.xi1[i] += b.xi1.at(i);
  }
  for (std::size_t i = 0; i < g.eta0.size(); ++i) {
    g.eta0[i] += b.eta0.at(i);
    g.eta1[i] += b.eta1.at(i);
  }
  return g;
}

} // namespace adjforge
