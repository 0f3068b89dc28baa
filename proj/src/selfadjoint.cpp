#include "adjforge/selfadjoint.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "adjforge/error.hpp"
#include "adjforge/linear_solve.hpp"

namespace adjforge {

namespace {

constexpr int kDecisionOrder = 2;
constexpr int kInspectionOrder = 3;

Expr adjoint_var(std::uint32_t b, int order) { return Expr::atom(Atom::jet(Family::V, b), order); }

bool is_leading_derivative(const Atom &a, const JetCoord &lead) {
  return a.is_jet() && a.jet().family == lead.family && a.jet().sigma == lead.sigma &&
         contains(a.jet().index, lead.index) && a.jet().index.size() > lead.index.size();
}

/// Substituted adjoint residuals reduced on the manifold of `s`.
std::vector<Expr> substituted(const PdeSystem &s, const Substitution &sub, bool unperturbed) {
  AdjointOptions o;
  o.unperturbed = unperturbed;
  std::vector<Expr> out;
  for (const Expr &a : adjoint_system(s, o))
    out.push_back(apply_substitution(a, sub));
  return out;
}

std::vector<Expr> reduced(const std::vector<Expr> &r, const PdeSystem &s) {
  auto forms = s.solved_forms();
  std::vector<Expr> out;
  for (const Expr &e : r)
    out.push_back(reduce_on_manifold(e, forms));
  return out;
}

bool all_zero(const std::vector<Expr> &v) {
  return std::all_of(v.begin(), v.end(), [](const Expr &e) { return e.is_zero(); });
}

Expr first_nonzero(const std::vector<Expr> &v, int order) {
  for (const auto &e : v)
    if (!e.is_zero())
      return e;
  return Expr(order);
}

void attach_multipliers(CheckReport &rep, const std::vector<Expr> &r, const PdeSystem &s) {
  auto lam = extract_multipliers(r, s);
  if (!lam)
    return;
  rep.has_multipliers = true;
  for (const auto &row : *lam) {
    std::vector<Expr> l, m;
    for (const auto &e : row) {
      l.push_back(e.eps_part(0));
      m.push_back(e.eps_part(1));
    }
    rep.lambda.push_back(l);
    rep.mu.push_back(m);
  }
}

/// Splits an expression into (eps power, monomial) -> coefficient.
std::map<std::pair<int, std::size_t>, Coefficient> full_split(const Expr &e, std::vector<Monomial> &monos) {
  std::map<std::pair<int, std::size_t>, Coefficient> out;
  for (const Term &t : e.terms()) {
    std::size_t id = 0;
    auto it = std::find_if(monos.begin(), monos.end(), [&](const Monomial &m) { return compare_monomials(m, t.mono) == 0; });
    if (it == monos.end()) {
      monos.push_back(t.mono);
      id = monos.size() - 1;
    } else {
      id = static_cast<std::size_t>(it - monos.begin());
    }
    out[{t.eps, id}] += t.coeff;
  }
  return out;
}

/// Linear form of `c` in `unknowns`: returns (coefficients, constant).
std::pair<std::vector<Coefficient>, Coefficient> linear_form(const Coefficient &c, const std::vector<Symbol> &unknowns) {
  for (Symbol u : unknowns)
    if (c.den().depends_on(u))
      throw UnsupportedOperation("ansatz unknown in a denominator");
  std::vector<Poly> cols(unknowns.size());
  Poly constant;
  for (const auto &[m, q] : c.num().terms()) {
    std::ptrdiff_t col = -1;
    PolyMonomial rest;
    for (const auto &[s, e] : m) {
      auto it = std::find(unknowns.begin(), unknowns.end(), s);
      if (it == unknowns.end()) {
        rest.emplace_back(s, e);
        continue;
      }
      if (col >= 0 || e != 1)
        throw UnsupportedOperation("ansatz unknowns must appear linearly");
      col = it - unknowns.begin();
    }
    Poly term(q);
    for (const auto &[s, e] : rest)
      term *= Poly::variable(s).pow(e);
    if (col < 0)
      constant += term;
    else
      cols[static_cast<std::size_t>(col)] += term;
  }
  std::vector<Coefficient> out;
  for (auto &p : cols)
    out.push_back(Coefficient(p, c.den()));
  return {out, Coefficient(constant, c.den())};
}

Expr substitute_params(const Expr &e, const std::map<Symbol, Coefficient> &values) {
  Expr r = e;
  for (const auto &[s, v] : values)
    r = r.substitute_param(s, v);
  return r;
}

/// Exponents of the independents when `e` is a single monomial in them.
std::optional<std::vector<long>> independent_exponents(const Expr &e, std::size_t n) {
  if (!e.is_unit() || e.terms()[0].eps != 0)
    return std::nullopt;
  std::vector<long> out(n, 0);
  for (const auto &[a, p] : e.terms()[0].mono) {
    if (!a.is_base() || a.base().index >= n || !p.is_integer())
      return std::nullopt;
    out[a.base().index] = p.as_integer();
  }
  return out;
}

/// Descending total degree, then descending exponents in declaration order.
/// Left as given unless every entry is a monomial in the independents.
std::vector<Expr> graded_order(const std::vector<Expr> &basis, std::size_t n) {
  std::vector<std::pair<std::vector<long>, Expr>> keyed;
  for (const auto &b : basis) {
    auto k = independent_exponents(b, n);
    if (!k)
      return basis;
    long degree = 0;
    for (long x : *k)
      degree += x;
    k->insert(k->begin(), degree);
    keyed.emplace_back(std::move(*k), b);
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto &a, const auto &b) { return a.first > b.first; });
  std::vector<Expr> out;
  for (auto &[k, b] : keyed)
    out.push_back(std::move(b));
  return out;
}

} // namespace

Expr formal_lagrangian(const PdeSystem &s) {
  Expr l(s.order());
  for (std::uint32_t b = 0; b < s.size(); ++b)
    l += adjoint_var(b, s.order()) * s.full(b);
  return l;
}

std::vector<Expr> adjoint_system(const PdeSystem &s, const AdjointOptions &opt) {
  const PdeSystem sys = opt.unperturbed ? s.unperturbed() : s;
  const Expr l = formal_lagrangian(sys);
  std::vector<Expr> out;
  for (std::uint32_t sigma = 0; sigma < sys.space.n_dependents(); ++sigma) {
    Expr a = variational_derivative(l, Family::U, sigma);
    if (opt.normalize_sign && !a.is_zero()) {
      const Coefficient &c = a.terms().front().coeff;
      if (c.num().leading_coefficient() < 0)
        a = -a;
    }
    out.push_back(a);
  }
  return out;
}

std::optional<std::vector<std::vector<Expr>>> extract_multipliers(const std::vector<Expr> &r, const PdeSystem &s) {
  const int order = s.order();
  std::vector<std::vector<Expr>> lam;
  for (const Expr &ra : r) {
    Expr rem = ra.with_order(order);
    std::vector<Expr> row;
    for (const auto &eq : s.equations) {
      if (rem.has_atom([&](const Atom &a) { return is_leading_derivative(a, eq.leading); }))
        return std::nullopt;
      Expr c = partial_jet(rem, eq.leading);
      if (!partial_jet(c, eq.leading).is_zero())
        return std::nullopt;
      Expr a = leading_coefficient(eq.expr.with_order(order), eq.leading);
      Expr l(order);
      try {
        l = c * a.inverse();
      } catch (const UnsupportedOperation &) {
        return std::nullopt;
      }
      row.push_back(l);
    }
    Expr check = rem;
    for (std::size_t b = 0; b < s.size(); ++b)
      check -= row[b] * s.full(b).with_order(order);
    if (!check.is_zero())
      return std::nullopt;
    lam.push_back(row);
  }
  return lam;
}

CheckReport check_nsa_exact(const PdeSystem &s, const Substitution &sub) {
  if (sub.phi_is_zero())
    throw ArgumentError("substitution v = phi needs phi not identically zero");
  for (const auto &p : sub.psi)
    if (!p.is_zero())
      throw ArgumentError("exact check takes a substitution without eps part");
  const PdeSystem e0 = s.unperturbed();
  auto r = substituted(e0, sub, true);
  auto red = reduced(r, e0);
  CheckReport rep;
  rep.passed = all_zero(red);
  rep.residual = first_nonzero(red, s.order());
  for (std::size_t a = 0; a < red.size(); ++a)
    rep.parts.emplace_back("substituted adjoint " + std::to_string(a + 1), r[a]);
  if (rep.passed)
    attach_multipliers(rep, r, e0);
  else
    for (const auto &e : red)
      for (auto &d : determining_split(e, e0))
        rep.determining.push_back(d);
  return rep;
}

CheckReport check_nsa_approx(const PdeSystem &s, const Substitution &sub) {
  if (sub.is_trivial())
    throw ArgumentError("substitution must not vanish identically");
  const PdeSystem s3 = s.with_order(kInspectionOrder);
  auto red3 = reduced(substituted(s3, sub, false), s3);
  const PdeSystem s2 = s.with_order(kDecisionOrder);
  auto r2 = substituted(s2, sub, false);
  std::vector<Expr> red2;
  for (const auto &e : red3)
    red2.push_back(e.with_order(kDecisionOrder));
  CheckReport rep;
  rep.passed = all_zero(red2);
  rep.residual = first_nonzero(red3, kInspectionOrder);
  for (std::size_t a = 0; a < r2.size(); ++a)
    rep.parts.emplace_back("substituted adjoint " + std::to_string(a + 1), r2[a]);
  if (rep.passed) {
    attach_multipliers(rep, r2, s2);
  } else {
    for (const auto &e : red2)
      for (auto &d : determining_split(e, s2))
        rep.determining.push_back(d);
  }
  return rep;
}

std::vector<Expr> determining_split(const Expr &residual, const PdeSystem &) {
  struct Key {
    int eps;
    Monomial jets;
  };
  std::vector<std::pair<Key, std::vector<Term>>> groups;
  for (const Term &t : residual.terms()) {
    Monomial jets, rest;
    for (const auto &p : t.mono)
      (p.first.is_jet() && !p.first.jet().index.empty() ? jets : rest).push_back(p);
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto &g) {
      return g.first.eps == t.eps && compare_monomials(g.first.jets, jets) == 0;
    });
    if (it == groups.end()) {
      groups.push_back({Key{t.eps, jets}, {}});
      it = groups.end() - 1;
    }
    it->second.push_back(Term{t.coeff, 0, rest});
  }
  std::stable_sort(groups.begin(), groups.end(), [](const auto &a, const auto &b) {
    if (a.first.eps != b.first.eps)
      return a.first.eps < b.first.eps;
    return compare_monomials(a.first.jets, b.first.jets) > 0;
  });
  std::vector<Expr> out;
  for (auto &g : groups) {
    Expr e = Expr::from_terms(std::move(g.second), residual.order());
    if (!e.is_zero())
      out.push_back(e);
  }
  return out;
}

Substitution ansatz_from_basis(const PdeSystem &s, const std::vector<Expr> &basis, std::vector<Symbol> &unknowns) {
  if (s.size() != 1)
    throw UnsupportedOperation("basis ansatz needs a single adjoint variable");
  unknowns.clear();
  const int order = s.order();
  const std::vector<Expr> ordered = graded_order(basis, s.space.n_independents());
  Expr phi(order), psi(order);
  for (const auto &b : ordered) {
    Symbol a = Symbol::fresh("a");
    unknowns.push_back(a);
    phi += b.with_order(order) * Coefficient::param(a);
  }
  for (const auto &b : ordered) {
    Symbol c = Symbol::fresh("b");
    unknowns.push_back(c);
    psi += b.with_order(order) * Coefficient::param(c);
  }
  Substitution sub;
  sub.name = "ansatz";
  sub.phi = {phi};
  sub.psi = {psi};
  return sub;
}

std::vector<SolutionFamily> solve_substitution_ansatz(const PdeSystem &s, const Substitution &ansatz,
                                                      const std::vector<Symbol> &unknowns) {
  const PdeSystem s2 = s.with_order(kDecisionOrder);
  const Substitution sub = ansatz.with_order(kDecisionOrder);
  auto red = reduced(substituted(s2, sub, false), s2);
  std::vector<std::vector<Coefficient>> rows;
  std::vector<Coefficient> rhs;
  for (const Expr &e : red) {
    std::vector<Monomial> monos;
    for (const auto &[key, c] : full_split(e, monos)) {
      if (c.is_zero())
        continue;
      auto [coeffs, constant] = linear_form(c, unknowns);
      rows.push_back(std::move(coeffs));
      rhs.push_back(-constant);
    }
  }
  if (rows.empty()) {
    rows.push_back(std::vector<Coefficient>(unknowns.size()));
    rhs.emplace_back();
  }
  LinearSolution sol = solve_linear(rows, rhs);
  if (!sol.consistent)
    return {};
  std::vector<Symbol> free;
  for (std::size_t k = 0; k < sol.free.size(); ++k)
    free.push_back(Symbol::intern("c" + std::to_string(k + 1)));
  std::map<Symbol, Coefficient> values;
  for (std::size_t j = 0; j < unknowns.size(); ++j) {
    Coefficient v = sol.constant[j];
    for (std::size_t f = 0; f < free.size(); ++f)
      v += sol.in_terms_of_free[j][f] * Coefficient::param(free[f]);
    values.emplace(unknowns[j], v);
  }
  SolutionFamily fam;
  fam.free = free;
  fam.substitution.name = ansatz.name;
  for (const auto &p : sub.phi)
    fam.substitution.phi.push_back(substitute_params(p, values));
  for (const auto &p : sub.psi)
    fam.substitution.psi.push_back(substitute_params(p, values));
  if (fam.substitution.is_trivial())
    return {};
  return {fam};
}

CheckReport check_eps_lift(const PdeSystem &s, const std::vector<Expr> &f) {
  CheckReport rep;
  bool zero = std::all_of(f.begin(), f.end(), [](const Expr &e) { return e.is_zero(); });
  if (zero || f.size() != s.size()) {
    rep.note = zero ? "rejected: f vanishes identically" : "rejected: wrong number of components";
    rep.residual = Expr(s.order());
    return rep;
  }
  Substitution exact;
  exact.name = "f";
  for (const auto &e : f) {
    if (e.max_eps() > 0)
      throw ArgumentError("f must be eps-free");
    exact.phi.push_back(e.with_order(s.order()));
    exact.psi.emplace_back(s.order());
  }
  const PdeSystem e0 = s.unperturbed();
  auto red0 = reduced(substituted(e0, exact, true), e0);
  if (!all_zero(red0)) {
    rep.note = "precondition failed: f does not solve the unperturbed adjoint system";
    rep.residual = first_nonzero(red0, s.order());
    return rep;
  }
  Substitution lifted;
  lifted.name = "eps*f";
  lifted.phi = exact.psi;
  lifted.psi = exact.phi;
  rep = check_nsa_approx(s, lifted);
  rep.note = "v = eps*f";
  return rep;
}

const char *to_string(StrictConvention c) {
  switch (c) {
  case StrictConvention::UPlusEpsU:
    return "u+eps*u";
  case StrictConvention::U:
    return "u";
  case StrictConvention::EpsU:
    return "eps*u";
  }
  return "u+eps*u";
}

StrictConvention parse_convention(const std::string &name) {
  if (name == "u+eps*u" || name == "u+epsu" || name == "default")
    return StrictConvention::UPlusEpsU;
  if (name == "u")
    return StrictConvention::U;
  if (name == "eps*u" || name == "epsu")
    return StrictConvention::EpsU;
  throw ArgumentError("unknown strict convention '" + name + "' (expected u+eps*u, u or eps*u)");
}

Multiplier multiplier_convert(const PdeSystem &s, const Substitution &sub, StrictConvention c) {
  if (s.size() != 1 || s.space.n_dependents() != 1)
    throw UnsupportedOperation("multiplier conversion needs one dependent variable");
  const int order = s.order();
  const Expr u = Expr::atom(Atom::jet(Family::U, 0), order);
  const Expr phi = sub.phi.at(0).with_order(order);
  const Expr psi = sub.psi.at(0).with_order(order);
  Multiplier m{Expr(order), Expr(order), c};
  switch (c) {
  case StrictConvention::UPlusEpsU:
    m.mu = phi / u;
    m.nu = (psi - phi) / u;
    break;
  case StrictConvention::U:
    if (phi.is_zero())
      throw ArgumentError("degenerate multiplier: phi vanishes under the convention v = u");
    m.mu = phi / u;
    m.nu = psi / u;
    break;
  case StrictConvention::EpsU:
    if (!phi.is_zero())
      throw ArgumentError("convention v = eps*u needs phi = 0");
    m.mu = psi / u;
    m.nu = Expr(order);
    break;
  }
  if (m.mu.is_zero() && m.nu.is_zero())
    throw ArgumentError("degenerate multiplier");
  return m;
}

CheckReport check_strict_sa_approx(const PdeSystem &s, const Multiplier &m, StrictConvention convention) {
  if (s.size() != 1 || s.space.n_dependents() != 1)
    throw UnsupportedOperation("strict check needs one dependent variable");
  const PdeSystem s3 = s.with_order(kInspectionOrder);
  const int order = kInspectionOrder;
  const Expr mult = m.mu.with_order(order) + Expr::eps(1, order) * m.nu.with_order(order);
  PdeSystem multiplied = s3;
  multiplied.equations[0].expr = mult * s3.full(0);
  const Expr u = Expr::atom(Atom::jet(Family::U, 0), order);
  Substitution strict;
  strict.name = to_string(convention);
  switch (convention) {
  case StrictConvention::UPlusEpsU:
    strict.phi = {u};
    strict.psi = {u};
    break;
  case StrictConvention::U:
    strict.phi = {u};
    strict.psi = {Expr(order)};
    break;
  case StrictConvention::EpsU:
    strict.phi = {Expr(order)};
    strict.psi = {u};
    break;
  }
  AdjointOptions o;
  const Expr adj = adjoint_system(multiplied, o)[0];
  const Expr r = apply_substitution(adj, strict);
  const Expr red = reduce_on_manifold(r, s3.solved_forms());
  CheckReport rep;
  rep.residual = red;
  rep.passed = red.with_order(kDecisionOrder).is_zero();
  rep.parts.emplace_back("multiplied equation", multiplied.full(0));
  rep.parts.emplace_back("adjoint", adj);
  rep.parts.emplace_back("substituted adjoint", r);
  rep.note = std::string("v = ") + to_string(convention);
  PdeSystem s2 = s.with_order(kDecisionOrder);
  auto lam = extract_multipliers({r.with_order(kDecisionOrder)}, s2);
  if (rep.passed && lam) {
    rep.has_multipliers = true;
    rep.lambda = {{(*lam)[0][0].eps_part(0)}};
    rep.mu = {{(*lam)[0][0].eps_part(1)}};
  }
  return rep;
}

} // namespace adjforge
