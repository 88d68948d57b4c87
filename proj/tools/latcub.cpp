// latcub: lattice queries, cubature solves, bounds and table reproduction.
//
// Exit codes: 0 success, 1 mismatch or infeasible, 2 usage, 3 missing data.

#include "latcub/bounds.hpp"
#include "latcub/catalog.hpp"
#include "latcub/cubature.hpp"
#include "latcub/reproduce.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace latcub;

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2, kMissing = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string format = "markdown";
  std::string output;
  unsigned threads = 0;
  std::uint64_t seed = 1;
};

// Writes to --output when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot write " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<int> parse_shells(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("bad shell list '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("empty shell list");
  return out;
}

std::string decimal(double v, int digits = 17) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void check_format(const std::string& f) {
  if (f != "markdown" && f != "csv" && f != "jsonl") throw UsageError("unknown format '" + f + "'");
}

// ---------------------------------------------------------------------------

int lattice_info(const std::string& name, const Common& c) {
  auto l = catalog_load(name);
  const auto& facts = l->facts();
  auto [min, kissing] = minimum(l);
  Sink sink(c.output);
  auto& out = sink.out();
  std::string gram = "[";
  for (std::size_t i = 0; i < l->dim(); ++i) {
    gram += i ? ",[" : "[";
    for (std::size_t j = 0; j < l->dim(); ++j) gram += (j ? "," : "") + to_string(l->gram()(i, j));
    gram += "]";
  }
  gram += "]";
  const std::string ell = facts.ell ? std::to_string(*facts.ell) : "";
  if (c.format == "jsonl") {
    nlohmann::ordered_json j;
    j["name"] = l->name();
    j["dim"] = l->dim();
    j["gram"] = gram;
    j["det"] = to_string(l->determinant());
    j["ell"] = ell;
    j["even"] = l->is_even();
    j["min"] = to_string(min);
    j["kissing"] = kissing.get_str();
    out << j.dump() << "\n";
  } else if (c.format == "csv") {
    out << "name,dim,gram,det,ell,even,min,kissing\n";
    out << l->name() << "," << l->dim() << ",\"" << gram << "\"," << to_string(l->determinant()) << "," << ell << ","
        << (l->is_even() ? "true" : "false") << "," << to_string(min) << "," << kissing.get_str() << "\n";
  } else {
    out << "| field | value |\n|---|---|\n";
    out << "| name | " << l->name() << " |\n| dim | " << l->dim() << " |\n| gram | " << gram << " |\n| det | "
        << to_string(l->determinant()) << " |\n| ell | " << ell << " |\n| even | " << (l->is_even() ? "yes" : "no")
        << " |\n| min | " << to_string(min) << " |\n| kissing | " << kissing.get_str() << " |\n";
  }
  return kOk;
}

int lattice_shell(const std::string& name, const std::string& norm_text, bool count_only, const Common& c) {
  auto l = catalog_load(name);
  const Rational norm = parse_rational(norm_text);
  EnumerationOptions opt;
  opt.threads = c.threads;
  Sink sink(c.output);
  auto& out = sink.out();
  if (count_only) {
    out << count_shell(l, norm, opt).get_str() << "\n";
    return kOk;
  }
  auto shell = enumerate_shell(l, norm, opt);
  if (c.format == "jsonl") {
    for (std::size_t i = 0; i < shell.size(); ++i) {
      nlohmann::ordered_json j;
      j["index"] = i;
      j["coeffs"] = shell.vectors[i].coeffs;
      out << j.dump() << "\n";
    }
  } else if (c.format == "csv") {
    out << "# lattice=" << name << "\n# norm=" << to_string(norm) << "\n# count=" << shell.size() << "\nindex";
    for (std::size_t k = 0; k < l->dim(); ++k) out << ",c" << k + 1;
    out << "\n";
    for (std::size_t i = 0; i < shell.size(); ++i) {
      out << i;
      for (auto v : shell.vectors[i].coeffs) out << "," << v;
      out << "\n";
    }
  } else {
    out << "shell " << to_string(norm) << " of " << name << ": " << shell.size() << " vectors\n\n| index | coefficients |\n|---|---|\n";
    for (std::size_t i = 0; i < shell.size(); ++i) {
      out << "| " << i << " | ";
      for (std::size_t k = 0; k < shell.vectors[i].coeffs.size(); ++k) out << (k ? " " : "") << shell.vectors[i].coeffs[k];
      out << " |\n";
    }
  }
  return kOk;
}

int lattice_theta(const std::string& name, int max_norm, const Common& c) {
  auto l = catalog_load(name);
  EnumerationOptions opt;
  opt.threads = c.threads;
  auto theta = theta_by_enumeration(l, max_norm, opt);
  Sink sink(c.output);
  auto& out = sink.out();
  if (c.format == "csv") {
    out << "norm,count\n";
    for (int m = 0; m <= max_norm; ++m) out << m << "," << to_string(theta.coeff(m)) << "\n";
  } else if (c.format == "jsonl") {
    for (int m = 0; m <= max_norm; ++m)
      out << nlohmann::ordered_json{{"norm", m}, {"count", to_string(theta.coeff(m))}}.dump() << "\n";
  } else {
    out << "Theta_" << name << " = " << theta.to_string() << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct CubatureArgs {
  std::string set;
  std::string shells;
  int strength = -1;
  std::string group;
  std::string method = "modular";
  bool verify = false;
  bool allow_merged = false;
  std::size_t pair_cap = 1'000'000'000;
  std::uint64_t count_budget = 20'000'000;
  std::string input;
};

void write_formula(const CubatureFormula& f, const Common& c) {
  if (c.output.empty()) return;
  Sink sink(c.output);
  if (c.format == "jsonl")
    write_jsonl(sink.out(), f);
  else
    write_csv(sink.out(), f);
}

void print_verify(std::ostream& out, const VerifyReport& rep, std::size_t size, int t) {
  if (!rep.ran) {
    out << "verification: refused (" << rep.message << ")\n";
    return;
  }
  out << "verification: " << (rep.pass ? "pass" : "FAIL") << " at strength " << t << " on " << size << " nodes";
  if (rep.strength && rep.strength->sharp_degree) out << "; first nonzero defect at degree " << *rep.strength->sharp_degree;
  out << "\n";
  if (rep.strength)
    for (const auto& d : rep.strength->degrees)
      if (d.k % 2 == 0)
        out << "  defect k=" << d.k << ": " << decimal(d.defect, 6) << " (relative " << decimal(d.scale > 0 ? std::fabs(d.defect) / d.scale : 0, 3)
            << ")\n";
}

int cubature_solve(const CubatureArgs& a, const Common& c, bool reduce) {
  if (a.strength < 0) throw UsageError("--strength is required");
  auto set = parse_lattice_set(a.set);
  const auto shells = parse_shells(a.shells);
  ProfileOptions popt;
  popt.count_budget = a.count_budget;
  popt.enumeration.threads = c.threads;
  popt.seed = c.seed;
  auto& out = std::cout;
  std::vector<Rational> weights;

  if (a.method == "gram") {
    GramOptions gopt;
    gopt.pair_cap = a.pair_cap;
    auto g = solve_weights_gram(set, shells, a.strength, gopt);
    out << "set " << set.id << ", shells " << a.shells << ", strength " << a.strength << " (Gram solver)\n";
    out << "status: " << g.status << ", rank " << g.rank << ", residual " << decimal(g.residual, 3) << "\n";
    for (std::size_t j = 0; j < shells.size(); ++j) out << "  W(" << shells[j] << ") = " << decimal(g.weights[j]) << "\n";
    return g.feasible ? kOk : kFail;
  }
  if (a.method != "modular") throw UsageError("unknown method '" + a.method + "'");

  auto profile = set_profile(set, shells, popt);
  check_shells(set, profile, shells, popt.enumeration);
  auto sol = solve_weights_modular(profile, shells, a.strength, a.group, c.seed);
  out << "set " << set.id << ", shells " << a.shells << ", strength " << a.strength;
  if (!a.group.empty()) out << ", group " << a.group;
  out << "\n";
  out << "degrees with equations:";
  for (int d : sol.degrees) out << " " << d;
  if (!sol.skipped.empty()) {
    out << "; skipped (no invariant harmonics):";
    for (int d : sol.skipped) out << " " << d;
  }
  out << "\nstatus: " << sol.status << "\n";
  out << "| shell | size | source | weight | weight (decimal) |\n|---|---|---|---|---|\n";
  for (std::size_t j = 0; j < shells.size(); ++j) {
    out << "| " << shells[j] << " | " << sol.shell_sizes[j].get_str() << " | " << profile.sources.at(shells[j]) << " | ";
    if (sol.weights.empty())
      out << " | |\n";
    else
      out << to_string(sol.weights[j]) << " | " << to_decimal(sol.weights[j], 17) << " |\n";
  }
  if (!sol.feasible) {
    if (sol.status == "nonpositive weight")
      for (std::size_t j = 0; j < shells.size(); ++j)
        if (sol.weights[j] <= 0) out << "negative weight: W(" << shells[j] << ") = " << to_decimal(sol.weights[j], 6) << "\n";
    return kFail;
  }
  out << "certificate: " << sol.equations.size() << " equations, residuals " << (sol.residuals_zero() ? "exactly zero" : "NONZERO")
      << "\n";
  const Integer size = distinct_size(set, profile, shells, popt.enumeration);
  out << "size: " << size.get_str() << "\n";
  weights = sol.weights;

  const double s = size.get_d();
  const bool fits = s <= 5e6 && s * s <= static_cast<double>(a.pair_cap);
  if (!a.verify && !reduce && c.output.empty()) return kOk;
  if (!fits) {
    out << "verification: refused (" << size.get_str() << " nodes exceed the pair cap); certified by the exact weight equations\n";
    return kOk;
  }
  AssembleOptions aopt;
  aopt.allow_merged_positivity = a.allow_merged;
  aopt.enumeration.threads = c.threads;
  auto f = assemble(set, shells, weights, a.strength, aopt);
  DefectOptions dopt;
  dopt.pair_cap = a.pair_cap;
  dopt.threads = c.threads;
  int code = kOk;
  if (a.verify) {
    auto rep = verify(f, a.strength, dopt);
    print_verify(out, rep, f.size(), a.strength);
    if (rep.ran && !rep.pass) code = kFail;
  }
  if (reduce) {
    auto rep = reduce_support(f, a.strength, dopt);
    out << "reduce: " << rep.message << " (B(n,t) = " << rep.bound << ")\n";
    if (rep.reduced) f = rep.formula;
  }
  write_formula(f, c);
  return code;
}

int cubature_verify(const CubatureArgs& a, const Common& c) {
  if (a.input.empty()) {
    CubatureArgs b = a;
    b.verify = true;
    return cubature_solve(b, c, false);
  }
  std::ifstream in(a.input);
  if (!in) throw UsageError("cannot read " + a.input);
  auto f = read_csv(in);
  const int t = a.strength >= 0 ? a.strength : f.t;
  DefectOptions dopt;
  dopt.pair_cap = a.pair_cap;
  dopt.threads = c.threads;
  auto rep = verify(f, t, dopt);
  print_verify(std::cout, rep, f.size(), t);
  return rep.ran && !rep.pass ? kFail : kOk;
}

// ---------------------------------------------------------------------------

int run_bounds(int n, int t, const std::string& method, int degree, int grid, const Common& c) {
  Sink sink(c.output);
  auto& out = sink.out();
  std::string value, extra;
  if (method == "delsarte") {
    value = delsarte(n, t).get_str();
  } else if (method == "delsarte+1") {
    value = delsarte_plus_one(n, t).get_str();
    extra = delsarte_flagged(n, t) ? "flagged" : "not flagged";
  } else if (method == "B") {
    value = bound_B(n, t).get_str();
  } else if (method == "yudin") {
    auto y = yudin(n, t);
    value = decimal(y.value, 12);
    extra = "gamma " + decimal(y.gamma, 15) + ", error " + decimal(y.error, 3);
  } else if (method == "lp") {
    auto r = lp_estimate(n, t, degree > 0 ? degree : t, grid);
    value = decimal(r.value, 12);
    extra = "d " + std::to_string(r.lp->degree) + ", N " + std::to_string(r.lp->grid) + ", epsilon " +
            decimal(r.lp->epsilon, 3) + ", G(1) " + decimal(r.lp->g_at_one, 15) + ", LP iterations " +
            std::to_string(r.lp->lp_iterations);
    if (c.format != "csv" && c.format != "jsonl") {
      extra += "\ncoefficients of Q_{2k}:";
      for (std::size_t k = 0; k < r.lp->coefficients.size(); ++k)
        extra += "\n  F_" + std::to_string(2 * (k + 1)) + " = " + decimal(r.lp->coefficients[k]);
    }
  } else {
    throw UsageError("unknown bound method '" + method + "'");
  }
  if (c.format == "csv") {
    out << "n,t,method,value,details\n" << n << "," << t << "," << method << "," << value << ",\"" << extra << "\"\n";
  } else if (c.format == "jsonl") {
    out << nlohmann::ordered_json{{"n", n}, {"t", t}, {"method", method}, {"value", value}, {"details", extra}}.dump()
        << "\n";
  } else {
    out << "bound(" << n << "," << t << ") " << method << ": " << value << "\n";
    if (!extra.empty()) out << extra << "\n";
  }
  return kOk;
}

int run_reproduce(const std::string& table, const ReproduceOptions& opt, const Common& c) {
  auto result = reproduce_table(table, opt);
  Sink sink(c.output);
  auto& out = sink.out();
  if (c.format == "csv") {
    render_csv(out, result);
  } else if (c.format == "jsonl") {
    render_jsonl(out, result);
  } else {
    render_markdown(out, result);
    out << "\n";
  }
  render_diff(c.output.empty() && c.format == "markdown" ? out : std::cerr, result);
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubature formulas and spherical designs from lattice shells"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--format", common.format, "Output format: markdown, csv or jsonl");
  app.add_option("-o,--output", common.output, "Output file");
  app.add_option("--threads", common.threads, "Worker threads (0 = all cores)");
  app.add_option("--seed", common.seed, "Seed for the random harmonic directions");

  auto* lat = app.add_subcommand("lattice", "Lattice queries");
  lat->require_subcommand(1);
  std::string lat_name, norm_text;
  int max_norm = 10;
  bool count_only = false;
  auto* info = lat->add_subcommand("info", "Gram matrix, level and minimum");
  info->add_option("name", lat_name)->required();
  auto* shell = lat->add_subcommand("shell", "Vectors of a given norm");
  shell->add_option("name", lat_name)->required();
  shell->add_option("norm", norm_text)->required();
  shell->add_flag("--count-only", count_only, "Stream and count without storing");
  auto* theta = lat->add_subcommand("theta", "Theta series by enumeration");
  theta->add_option("name", lat_name)->required();
  theta->add_option("--max-norm", max_norm)->check(CLI::PositiveNumber);

  auto* cub = app.add_subcommand("cubature", "Weight solves, verification and reduction");
  cub->require_subcommand(1);
  CubatureArgs ca;
  auto add_cub = [&](CLI::App* s, bool needs_set) {
    auto* o = s->add_option("--set", ca.set, "Lattice or NAME+dual");
    auto* sh = s->add_option("--shells", ca.shells, "Comma-separated norms");
    if (needs_set) {
      o->required();
      sh->required();
    }
    s->add_option("--strength", ca.strength, "Strength t");
    s->add_option("--group", ca.group, "Symmetry group (F4, F4T)");
    s->add_option("--pair-cap", ca.pair_cap, "Largest number of ordered pairs for direct verification");
    s->add_option("--count-budget", ca.count_budget, "Largest shell counted by enumeration");
    s->add_flag("--allow-merged-positivity", ca.allow_merged, "Accept nonpositive shell weights if merged nodes are positive");
  };
  auto* solve = cub->add_subcommand("solve", "Solve for the shell weights");
  add_cub(solve, true);
  solve->add_option("--method", ca.method, "modular (exact) or gram (floating)");
  solve->add_flag("--verify", ca.verify, "Assemble and verify directly");
  auto* ver = cub->add_subcommand("verify", "Verify a solved formula or a CSV export");
  add_cub(ver, false);
  ver->add_option("--input", ca.input, "Formula CSV written by solve");
  auto* red = cub->add_subcommand("reduce", "Caratheodory reduction of the support");
  add_cub(red, true);
  red->add_flag("--verify", ca.verify, "Verify before reducing");

  auto* bnd = app.add_subcommand("bounds", "Lower bounds for cubature sizes");
  int bn = 0, bt = 0, degree = 0, grid = 2000;
  std::string method = "delsarte";
  bnd->add_option("--n", bn, "Dimension")->required();
  bnd->add_option("--t", bt, "Strength")->required();
  bnd->add_option("--method", method, "delsarte, delsarte+1, B, yudin or lp");
  bnd->add_option("--degree", degree, "LP degree d (default t)");
  bnd->add_option("--grid", grid, "LP grid size N");

  auto* rep = app.add_subcommand("reproduce", "Reproduce a table and compare with its golden file");
  std::string table;
  ReproduceOptions ropt;
  rep->add_option("table", table, "4, 4b, 6, 7, 8, 9, 10, 11 or 12")->required();
  rep->add_flag("--allow-missing", ropt.allow_missing, "Skip rows whose lattice data is missing");
  rep->add_option("--pair-cap", ropt.pair_cap, "Largest direct verification");
  rep->add_option("--grid", ropt.lp_grid, "LP grid size N");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    check_format(common.format);
    if (lat->parsed()) {
      if (info->parsed()) return lattice_info(lat_name, common);
      if (shell->parsed()) return lattice_shell(lat_name, norm_text, count_only, common);
      return lattice_theta(lat_name, max_norm, common);
    }
    if (cub->parsed()) {
      if (solve->parsed()) return cubature_solve(ca, common, false);
      if (ver->parsed()) return cubature_verify(ca, common);
      return cubature_solve(ca, common, true);
    }
    if (bnd->parsed()) return run_bounds(bn, bt, method, degree, grid, common);
    ropt.threads = common.threads;
    ropt.seed = common.seed;
    return run_reproduce(table, ropt, common);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const MissingData& e) {
    std::cerr << "missing data: " << e.what() << "\n";
    return kMissing;
  } catch (const CatalogError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
}
