#include "adjforge/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "adjforge/conslaw.hpp"
#include "adjforge/error.hpp"
#include "adjforge/render.hpp"
#include "adjforge/selfadjoint.hpp"
#include "adjforge/session.hpp"
#include "adjforge/symmetry.hpp"

namespace adjforge {

namespace {

using nlohmann::json;

constexpr const char *kReportSchema = "adjforge.report/1";
constexpr const char *kConslawSchema = "adjforge.conslaw/1";
constexpr const char *kExprSchema = "adjforge.exprs/1";

struct Context {
  Session session;
  Format format = Format::Text;
  bool steps = false;
  std::ostream &out;
};

std::string show(const Context &c, const Expr &e) {
  return render(e, c.session.space(), c.format == Format::Latex ? Format::Latex : Format::Text);
}

std::string show_factored(const Context &c, const Expr &e) {
  return render_factored(e, c.session.space(), c.format == Format::Latex ? Format::Latex : Format::Text);
}

std::string show_in(const Context &c, const Expr &e, const Space &space) {
  return render(e, space, c.format == Format::Latex ? Format::Latex : Format::Text);
}

std::vector<std::string> split_list(const std::string &text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (item.find_first_not_of(" \t") != std::string::npos)
      out.push_back(item);
  return out;
}

json report_json(const Context &c, const std::string &command, const CheckReport &r) {
  json j;
  j["schema"] = kReportSchema;
  j["command"] = command;
  j["passed"] = r.passed;
  j["residual"] = show_factored(c, r.residual);
  j["lambda"] = json::array();
  j["mu"] = json::array();
  for (std::size_t a = 0; a < r.lambda.size(); ++a) {
    json lrow = json::array(), mrow = json::array();
    for (std::size_t b = 0; b < r.lambda[a].size(); ++b) {
      lrow.push_back(show(c, r.lambda[a][b]));
      mrow.push_back(show(c, r.mu[a][b]));
    }
    j["lambda"].push_back(lrow);
    j["mu"].push_back(mrow);
  }
  j["determining"] = json::array();
  for (const auto &d : r.determining)
    j["determining"].push_back(show(c, d));
  if (!r.note.empty())
    j["note"] = r.note;
  if (c.steps) {
    j["steps"] = json::array();
    for (const auto &[name, e] : r.parts)
      j["steps"].push_back({{"name", name}, {"expr", show(c, e)}});
  }
  return j;
}

int print_report(const Context &c, const std::string &command, const CheckReport &r) {
  if (c.format == Format::Json) {
    c.out << report_json(c, command, r).dump(2) << "\n";
    return r.passed ? kExitPass : kExitFail;
  }
  if (c.steps)
    for (const auto &[name, e] : r.parts)
      c.out << name << ": " << show(c, e) << "\n";
  c.out << "residual: " << show_factored(c, r.residual) << "\n";
  if (r.has_multipliers) {
    for (std::size_t a = 0; a < r.lambda.size(); ++a) {
      for (std::size_t b = 0; b < r.lambda[a].size(); ++b) {
        const std::string idx = "[" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "]";
        c.out << "lambda" << idx << ": " << show(c, r.lambda[a][b]) << "\n";
        c.out << "mu" << idx << ": " << show(c, r.mu[a][b]) << "\n";
      }
    }
  }
  if (!r.determining.empty()) {
    c.out << "determining:\n";
    for (const auto &d : r.determining)
      c.out << "  " << show(c, d) << " = 0\n";
  }
  if (!r.note.empty())
    c.out << "note: " << r.note << "\n";
  c.out << "passed: " << (r.passed ? "yes" : "no") << "\n";
  return r.passed ? kExitPass : kExitFail;
}

int print_exprs(const Context &c, const std::string &command, const std::vector<std::pair<std::string, Expr>> &items,
                const Space &space) {
  if (c.format == Format::Json) {
    json j;
    j["schema"] = kExprSchema;
    j["command"] = command;
    j["results"] = json::array();
    for (const auto &[name, e] : items)
      j["results"].push_back({{"name", name}, {"expr", render(e, space)}, {"terms", term_dump(e, space)}});
    c.out << j.dump(2) << "\n";
    return kExitPass;
  }
  for (const auto &[name, e] : items) {
    if (!name.empty())
      c.out << name << ": ";
    c.out << show_in(c, e, space) << "\n";
  }
  return kExitPass;
}

Substitution substitution_from(const Context &c, const std::string &name) { return c.session.substitution(name); }

int cmd_adjoint(Context &c, const std::string &eq, bool unperturbed, bool normalize) {
  PdeSystem s = c.session.system(eq);
  AdjointOptions o;
  o.unperturbed = unperturbed;
  o.normalize_sign = normalize;
  std::vector<Expr> adj = adjoint_system(s, o);
  std::vector<std::pair<std::string, Expr>> items;
  for (std::size_t a = 0; a < adj.size(); ++a)
    items.emplace_back(adj.size() == 1 ? "" : "delta L/delta " + s.space.dependents[a], adj[a]);
  return print_exprs(c, "adjoint", items, s.space);
}

int cmd_check_nsa(Context &c, const std::string &eq, const std::string &sub, bool exact) {
  PdeSystem s = c.session.system(eq);
  Substitution v = substitution_from(c, sub);
  CheckReport r = exact ? check_nsa_exact(s, v) : check_nsa_approx(s, v);
  if (r.note.empty())
    r.note = std::string("substitution kind: ") + to_string(v.kind());
  return print_report(c, "check-nsa", r);
}

int cmd_find_sub(Context &c, const std::string &eq, const std::string &basis_text) {
  PdeSystem s = c.session.system(eq);
  std::vector<Expr> basis;
  for (const auto &b : split_list(basis_text))
    basis.push_back(c.session.expr(b));
  if (basis.empty())
    throw ArgumentError("empty basis");
  std::vector<Symbol> unknowns;
  Substitution ansatz = ansatz_from_basis(s, basis, unknowns);
  auto families = solve_substitution_ansatz(s, ansatz, unknowns);
  if (c.format == Format::Json) {
    json j;
    j["schema"] = kReportSchema;
    j["command"] = "find-sub";
    j["passed"] = !families.empty();
    j["families"] = json::array();
    for (const auto &f : families) {
      json fj;
      fj["phi"] = show(c, f.substitution.phi[0]);
      fj["psi"] = show(c, f.substitution.psi[0]);
      fj["free"] = json::array();
      for (Symbol p : f.free)
        fj["free"].push_back(p.name());
      j["families"].push_back(fj);
    }
    c.out << j.dump(2) << "\n";
    return families.empty() ? kExitFail : kExitPass;
  }
  if (families.empty()) {
    c.out << "no nontrivial substitution in the given basis\n";
    return kExitFail;
  }
  const std::string &adj = s.space.adjoints.empty() ? std::string("v") : s.space.adjoints[0];
  for (const auto &f : families) {
    c.out << "phi: " << show(c, f.substitution.phi[0]) << "\n";
    c.out << "psi: " << show(c, f.substitution.psi[0]) << "\n";
    c.out << adj << " = " << show(c, f.substitution.full()[0]) << "\n";
    c.out << "free:";
    for (Symbol p : f.free)
      c.out << " " << p.name();
    c.out << "\n";
  }
  return kExitPass;
}

int cmd_check_sym(Context &c, const std::string &eq, const std::string &gen, bool approx) {
  PdeSystem s = c.session.system(eq);
  const Generator &g = c.session.generator(gen);
  if (!approx)
    return print_report(c, "check-sym", check_exact_symmetry(s, g));
  return print_report(c, "check-sym", check_approx_symmetry(s, g));
}

int cmd_fs_expand(Context &c, const std::string &eq, int order) {
  PdeSystem s = c.session.system(eq);
  std::vector<PdeSystem> parts = fs_expand(s, order);
  std::vector<std::pair<std::string, Expr>> items;
  for (std::size_t j = 0; j < parts.size(); ++j)
    for (const auto &e : parts[j].equations)
      items.emplace_back("eps^" + std::to_string(j), e.expr);
  return print_exprs(c, "fs-expand", items, parts.empty() ? s.space : parts[0].space);
}

int print_conslaw(const Context &c, const PdeSystem &s, const ConservedVector &cv, const CheckReport &r,
                  bool components) {
  const Space &sp = c.session.space();
  if (c.format == Format::Json) {
    json j;
    j["schema"] = kConslawSchema;
    j["generator"] = cv.generator;
    j["substitution"] = cv.substitution ? json(cv.substitution->name) : json(nullptr);
    j["nonlocal"] = cv.nonlocal();
    j["omitted_xi_L"] = cv.omitted_xi_l;
    j["components"] = json::array();
    for (std::size_t i = 0; i < cv.components.size(); ++i)
      j["components"].push_back({{"direction", sp.independents[i]}, {"expr", show(c, cv.components[i])}});
    j["residual"] = show_factored(c, r.residual);
    j["divergence"] = show_factored(c, r.parts.at(0).second);
    j["eps_order"] = r.residual.order();
    j["passed"] = r.passed;
    c.out << j.dump(2) << "\n";
    return r.passed ? kExitPass : kExitFail;
  }
  if (components) {
    for (std::size_t i = 0; i < cv.components.size(); ++i) {
      if (c.format == Format::Latex)
        c.out << "C^{" << sp.independents[i] << "} = " << show(c, cv.components[i]) << "\n";
      else
        c.out << "C^" << sp.independents[i] << " = " << show(c, cv.components[i]) << "\n";
    }
    if (cv.nonlocal())
      c.out << "nonlocal: adjoint variables are left symbolic\n";
  }
  c.out << "residual: " << show_factored(c, r.residual) << "\n";
  if (c.steps || !components)
    c.out << "divergence: " << show_factored(c, r.parts.at(0).second) << "\n";
  c.out << "passed: " << (r.passed ? "yes" : "no") << "\n";
  (void)s;
  return r.passed ? kExitPass : kExitFail;
}

ConservedVector build_vector(const Context &c, const PdeSystem &s, const std::string &gen, const std::string &sub,
                             bool keep, bool raw) {
  ConslawOptions o;
  o.keep_xi_l = keep;
  o.simplify = !raw;
  std::optional<Substitution> v;
  if (!sub.empty())
    v = substitution_from(c, sub);
  return conserved_vector(s, c.session.generator(gen), v, o);
}

CheckReport verify(const PdeSystem &s, const ConservedVector &cv) {
  if (!cv.nonlocal())
    return verify_divergence(cv, s);
  std::vector<SolvedForm> adj = adjoint_solved_forms(s.with_order(kConslawWorkingOrder));
  return verify_divergence(cv, s, &adj);
}

int cmd_conslaw(Context &c, const std::string &eq, const std::string &gen, const std::string &sub, bool keep,
                bool raw) {
  PdeSystem s = c.session.system(eq);
  ConservedVector cv = build_vector(c, s, gen, sub, keep, raw);
  return print_conslaw(c, s, cv, verify(s, cv), true);
}

int cmd_verify(Context &c, const std::string &eq, const std::string &gen, const std::string &sub, bool keep) {
  PdeSystem s = c.session.system(eq);
  ConservedVector cv = build_vector(c, s, gen, sub, keep, false);
  return print_conslaw(c, s, cv, verify(s, cv), false);
}

int cmd_multiplier(Context &c, const std::string &eq, const std::string &sub, const std::string &conv) {
  PdeSystem s = c.session.system(eq);
  Multiplier m = multiplier_convert(s, substitution_from(c, sub), parse_convention(conv));
  std::vector<std::pair<std::string, Expr>> items{{"mu", m.mu}, {"nu", m.nu}};
  return print_exprs(c, "multiplier", items, s.space);
}

int cmd_check_strict(Context &c, const std::string &eq, const std::string &sub, const std::string &conv) {
  PdeSystem s = c.session.system(eq);
  StrictConvention k = parse_convention(conv);
  Multiplier m = multiplier_convert(s, substitution_from(c, sub), k);
  return print_report(c, "check-strict", check_strict_sa_approx(s, m, k));
}

int cmd_check_lift(Context &c, const std::string &eq, const std::vector<std::string> &f) {
  PdeSystem s = c.session.system(eq);
  std::vector<Expr> fs;
  for (const auto &text : f)
    fs.push_back(c.session.expr(text));
  return print_report(c, "check-lift", check_eps_lift(s, fs));
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Approximate nonlinear self-adjointness and conservation laws", "adjforge"};
  app.require_subcommand(1);
  std::string session_path;
  std::vector<std::string> catalogs;
  std::string format_name;
  bool steps = false;
  app.add_option("--session", session_path, "session file (.adf)")->required();
  app.add_option("--catalog", catalogs, "catalog file (.adfcat), repeatable");
  app.add_option("--format", format_name, "text, latex or json (default from ADJFORGE_FORMAT, else text)");
  app.add_flag("--steps", steps, "print intermediate expressions");

  std::string eq, sub, gen, basis, conv = "u+eps*u";
  std::vector<std::string> f;
  int order = 1;
  bool unperturbed = false, normalize = false, exact = false, approx = false, keep = false, raw = false;

  auto *adj = app.add_subcommand("adjoint", "adjoint equations of a system");
  adj->add_option("eq", eq)->required();
  adj->add_flag("--unperturbed", unperturbed, "use the unperturbed system only");
  adj->add_flag("--normalize-sign", normalize, "make the first term positive");

  auto *nsa = app.add_subcommand("check-nsa", "approximate (or exact) nonlinear self-adjointness");
  nsa->add_option("eq", eq)->required();
  nsa->add_option("--sub", sub)->required();
  nsa->add_flag("--exact", exact, "check the unperturbed system with v = phi");

  auto *find = app.add_subcommand("find-sub", "solve for substitutions over a monomial basis");
  find->add_option("eq", eq)->required();
  find->add_option("--basis", basis, "comma-separated monomials")->required();

  auto *sym = app.add_subcommand("check-sym", "verify a symmetry generator");
  sym->add_option("eq", eq)->required();
  sym->add_option("--gen", gen)->required();
  sym->add_flag("--approx", approx, "approximate symmetry of the perturbed system");

  auto *fs = app.add_subcommand("fs-expand", "split the system by powers of eps");
  fs->add_option("eq", eq)->required();
  fs->add_option("--order", order)->check(CLI::Range(0, 2));

  auto *cl = app.add_subcommand("conslaw", "conserved vector of a generator");
  cl->add_option("eq", eq)->required();
  cl->add_option("--gen", gen)->required();
  cl->add_option("--sub", sub);
  cl->add_flag("--keep-xiL", keep, "keep the xi^i L term");
  cl->add_flag("--raw", raw, "skip the divergence-preserving clean-up");

  auto *ver = app.add_subcommand("verify", "divergence of a conserved vector on the manifold");
  ver->add_option("eq", eq)->required();
  ver->add_option("--gen", gen)->required();
  ver->add_option("--sub", sub);
  ver->add_flag("--keep-xiL", keep, "keep the xi^i L term");

  auto *mult = app.add_subcommand("multiplier", "multiplier for approximate strict self-adjointness");
  mult->add_option("eq", eq)->required();
  mult->add_option("--sub", sub)->required();
  mult->add_option("--convention", conv, "u+eps*u, u or eps*u");

  auto *strict = app.add_subcommand("check-strict", "strict self-adjointness after multiplication");
  strict->add_option("eq", eq)->required();
  strict->add_option("--sub", sub)->required();
  strict->add_option("--convention", conv, "u+eps*u, u or eps*u");

  auto *lift = app.add_subcommand("check-lift", "v = eps*f for a solution f of the unperturbed adjoint");
  lift->add_option("eq", eq)->required();
  lift->add_option("--f", f, "one expression per adjoint variable")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    if (format_name.empty()) {
      const char *env = std::getenv("ADJFORGE_FORMAT");
      format_name = env && *env ? env : "text";
    }
    Context c{Session::load(session_path), parse_format(format_name), steps, out};
    for (const auto &cat : catalogs)
      c.session.include_file(cat);
    if (adj->parsed())
      return cmd_adjoint(c, eq, unperturbed, normalize);
    if (nsa->parsed())
      return cmd_check_nsa(c, eq, sub, exact);
    if (find->parsed())
      return cmd_find_sub(c, eq, basis);
    if (sym->parsed())
      return cmd_check_sym(c, eq, gen, approx);
    if (fs->parsed())
      return cmd_fs_expand(c, eq, order);
    if (cl->parsed())
      return cmd_conslaw(c, eq, gen, sub, keep, raw);
    if (ver->parsed())
      return cmd_verify(c, eq, gen, sub, keep);
    if (mult->parsed())
      return cmd_multiplier(c, eq, sub, conv);
    if (strict->parsed())
      return cmd_check_strict(c, eq, sub, conv);
    if (lift->parsed())
      return cmd_check_lift(c, eq, f);
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  err << "error: no command\n";
  return kExitError;
}

} // namespace adjforge
