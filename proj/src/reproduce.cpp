#include "latcub/reproduce.hpp"

#include "latcub/bounds.hpp"
#include "latcub/catalog.hpp"
#include "latcub/cubature.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace latcub {

std::string BoundSpec::annotation() const {
  switch (method) {
    case Method::tight:
      return "T";
    case Method::delsarte_plus_one:
      return "D";
    case Method::lp:
      return (degree_at_least ? "LP>=" : "LP") + std::to_string(degree);
  }
  return "";
}

namespace {

using M = BoundSpec::Method;

BoundSpec tight() { return {M::tight, 0, false, false}; }
BoundSpec dplus() { return {M::delsarte_plus_one, 0, false, false}; }
BoundSpec lp(int d, bool at_least = false, bool degree_at_least = false) { return {M::lp, d, at_least, degree_at_least}; }

TableRowSpec row(int t, std::string label, std::string set, std::vector<int> shells, BoundSpec b,
                 std::string group = "") {
  TableRowSpec r;
  r.t = t;
  r.label = std::move(label);
  r.set = std::move(set);
  r.shells = std::move(shells);
  r.bound = b;
  r.group = std::move(group);
  return r;
}

TableRowSpec extremal(TableRowSpec r, int ell, int min_norm) {
  r.kind = RowKind::extremal;
  r.extremal_ell = ell;
  r.extremal_min = min_norm;
  return r;
}

TableRowSpec with_kind(TableRowSpec r, RowKind kind, std::string marker = "") {
  r.kind = kind;
  r.marker = std::move(marker);
  return r;
}

const char* kOddMarker = "out of scope (odd-lattice harmonic theta)";

std::vector<TableSpec> build_specs() {
  std::vector<TableSpec> t;
  t.push_back({"4", 4, "Cubature formulas for n=4", false,
               {row(5, "D4", "D4", {2}, dplus()), row(7, "D4∪D4'", "D4+dual", {2}, lp(5)),
                row(11, "D4∪D4'", "D4+dual", {2, 6}, lp(11), "F4T"),
                row(15, "D4∪D4'", "D4+dual", {2, 6, 10}, lp(22), "F4T")}});
  t.push_back({"4b", 4, "Best known cubature formulas for n=4", true,
               {with_kind(row(3, "root system A1^4", "cross-polytope", {}, tight()), RowKind::configuration),
                row(5, "root system D4", "D4", {2}, dplus()),
                with_kind(row(7, "literature design", "", {}, lp(5)), RowKind::literature),
                with_kind(row(9, "literature design (announced)", "", {}, lp(7)), RowKind::literature),
                with_kind(row(11, "vertices of the 600-cell", "600-cell", {}, lp(11)), RowKind::configuration),
                with_kind(row(19, "vertices of the 600-cell and the 120-cell", "", {}, lp(18, false, true)),
                          RowKind::literature)}});
  t.push_back({"6", 8, "Cubature formulas for n=8", false,
               {row(7, "KZ8", "E8", {2}, tight()), row(11, "KZ8", "E8", {2, 4}, lp(8)),
                row(13, "KZ8", "E8", {2, 6, 8}, lp(12)), row(15, "KZ8", "E8", {2, 4, 6, 8}, lp(16))}});
  t.push_back({"7", 12, "Cubature formulas for n=12", false,
               {row(5, "K12", "K12", {4}, dplus()), row(7, "K12∪K12'", "K12+dual", {4}, dplus()),
                row(9, "K12∪K12'", "K12+dual", {6}, lp(6)), row(11, "K12∪K12'", "K12+dual", {4, 6, 8}, lp(7))}});
  t.push_back({"8", 14, "Cubature formulas for n=14", false,
               {row(5, "Q14", "Q14", {4}, dplus()), row(7, "Q14∪Q14'", "Q14+dual", {4}, dplus()),
                row(9, "Q14∪Q14'", "Q14+dual", {4, 8}, lp(6)), row(11, "Q14∪Q14'", "Q14+dual", {4, 6, 8}, lp(7))}});
  t.push_back({"9", 16, "Cubature formulas for n=16", false,
               {row(7, "BW16", "BW16", {4}, dplus()), row(9, "BW16", "BW16", {4, 6}, dplus()),
                row(11, "BW16∪BW16'", "BW16+dual", {4, 6}, lp(7)),
                row(13, "BW16∪BW16'", "BW16+dual", {4, 6, 10}, lp(8, true))}});
  t.push_back({"10", 20, "Cubature formulas for n=20", false,
               {row(5, "N20", "N20_1", {4}, dplus()), row(7, "N20∪N20'", "N20_1+dual", {4}, dplus()),
                row(9, "N20∪N20'", "N20_1+dual", {4, 6}, dplus()),
                row(11, "N20∪N20'", "N20_1+dual", {4, 6, 8}, lp(7))}});
  t.push_back({"11", 23, "Cubature formulas for n=23", false,
               {row(7, "O23", "O23", {3}, tight()),
                with_kind(row(9, "O23", "O23", {3, 5}, dplus()), RowKind::out_of_scope, kOddMarker),
                with_kind(row(11, "O23", "O23", {3, 4, 6}, lp(7)), RowKind::out_of_scope, kOddMarker)}});
  t.push_back({"12", 24, "Cubature formulas for n=24", false,
               {extremal(row(5, "N24", "N24", {6}, dplus()), 3, 6),
                extremal(row(7, "N24∪N24'", "N24+dual", {6}, dplus()), 3, 6),
                row(11, "Λ24", "Leech", {4}, tight()), row(15, "Λ24", "Leech", {4, 6}, lp(9, true)),
                row(17, "Λ24", "Leech", {4, 6, 8}, lp(13, true)), row(19, "Λ24", "Leech", {4, 6, 8, 10}, lp(15, true))}});
  return t;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

struct ParsedBound {
  bool at_least = false;
  double value = 0;
  std::string annotation;
};

ParsedBound parse_bound(const std::string& text) {
  ParsedBound p;
  std::string s = text;
  if (s.rfind(">=", 0) == 0) {
    p.at_least = true;
    s = s.substr(2);
  }
  const auto open = s.find('(');
  const auto close = s.find(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw std::runtime_error("golden bound '" + text + "' lacks an annotation");
  p.value = std::stod(s.substr(0, open));
  p.annotation = s.substr(open + 1, close - open - 1);
  return p;
}

bool is_number(const std::string& s) { return !s.empty() && std::all_of(s.begin(), s.end(), ::isdigit); }

NodeSet configuration(const std::string& name) {
  NodeSet s;
  s.dim = 4;
  auto add = [&](std::array<double, 4> x) {
    s.coords.insert(s.coords.end(), x.begin(), x.end());
  };
  if (name == "cross-polytope") {
    for (int i = 0; i < 4; ++i)
      for (double sign : {1.0, -1.0}) {
        std::array<double, 4> x{};
        x[i] = sign;
        add(x);
      }
  } else if (name == "600-cell") {
    for (int i = 0; i < 4; ++i)
      for (double sign : {1.0, -1.0}) {
        std::array<double, 4> x{};
        x[i] = sign;
        add(x);
      }
    for (int m = 0; m < 16; ++m)
      add({m & 1 ? -0.5 : 0.5, m & 2 ? -0.5 : 0.5, m & 4 ? -0.5 : 0.5, m & 8 ? -0.5 : 0.5});
    const double phi = (1 + std::sqrt(5.0)) / 2;
    const std::array<double, 4> base = {phi / 2, 0.5, 1 / (2 * phi), 0};
    std::array<int, 4> perm = {0, 1, 2, 3};
    do {
      int inversions = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) inversions += perm[i] > perm[j];
      if (inversions % 2) continue;
      for (int m = 0; m < 8; ++m) {
        std::array<double, 3> signs = {m & 1 ? -1.0 : 1.0, m & 2 ? -1.0 : 1.0, m & 4 ? -1.0 : 1.0};
        std::array<double, 4> x{};
        for (int i = 0; i < 4; ++i) {
          const int k = perm[i];
          x[i] = k < 3 ? signs[k] * base[k] : 0.0;
        }
        add(x);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    throw std::invalid_argument("unknown configuration '" + name + "'");
  }
  const std::size_t count = s.coords.size() / 4;
  s.weights.assign(count, 1.0 / static_cast<double>(count));
  return s;
}

void compute_bound(RowResult& r, int n, const ReproduceOptions& opt) {
  const auto& b = r.spec.bound;
  switch (b.method) {
    case M::tight: {
      const Integer v = delsarte(n, r.spec.t);
      r.bound_value = v.get_d();
      r.bound = v.get_str() + " (T)";
      break;
    }
    case M::delsarte_plus_one: {
      const Integer v = delsarte_plus_one(n, r.spec.t);
      r.bound_value = v.get_d();
      r.bound = v.get_str() + " (D)";
      break;
    }
    case M::lp: {
      auto res = lp_estimate(n, r.spec.t, b.degree, opt.lp_grid);
      r.bound_value = res.value;
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.0f", std::ceil(res.value - 1e-9));
      r.bound = std::string(b.at_least ? ">=" : "") + buf + " (" + b.annotation() + ")";
      std::snprintf(buf, sizeof buf, "%.3f", res.value);
      r.messages.push_back("lp value " + std::string(buf) + ", epsilon " + std::to_string(res.lp->epsilon) +
                           ", grid " + std::to_string(res.lp->grid));
      break;
    }
  }
}

void compute_size(RowResult& r, std::size_t n, const ReproduceOptions& opt) {
  const auto& spec = r.spec;
  DefectOptions dopt;
  dopt.pair_cap = opt.pair_cap;
  dopt.threads = opt.threads;
  ProfileOptions popt;
  popt.count_budget = opt.count_budget;
  popt.enumeration.threads = opt.threads;
  popt.seed = opt.seed;

  auto verify_or_series = [&](const LatticeSet& set, const std::vector<int>& shells, const std::vector<Rational>& weights,
                              const Integer& size, const std::string& series_reason) {
    const double s = size.get_d();
    if (s > static_cast<double>(opt.node_cap) || s * s > static_cast<double>(opt.pair_cap)) {
      r.certification = "certified-by-series";
      r.messages.push_back(series_reason);
      return;
    }
    AssembleOptions aopt;
    aopt.node_cap = opt.node_cap;
    aopt.enumeration.threads = opt.threads;
    auto f = assemble(set, shells, weights, spec.t, aopt);
    if (Integer(static_cast<unsigned long>(f.size())) != size)
      throw CubatureError("assembled size " + std::to_string(f.size()) + " differs from " + size.get_str());
    auto rep = verify(f, spec.t, dopt);
    if (!rep.ran) {
      r.certification = "certified-by-series";
      r.messages.push_back(rep.message);
    } else if (rep.pass) {
      r.certification = "verified";
    } else {
      r.certification = "verification failed";
      r.status = RowStatus::mismatch;
      r.messages.push_back(rep.message);
    }
  };

  switch (spec.kind) {
    case RowKind::literature:
      r.size = r.golden ? r.golden->size : "";
      r.certification = "literature";
      return;
    case RowKind::out_of_scope:
      r.size = spec.marker;
      r.certification = "out of scope";
      r.status = RowStatus::out_of_scope;
      return;
    case RowKind::configuration: {
      auto nodes = configuration(spec.set);
      auto rep = strength_check(nodes, spec.t, dopt);
      r.size = std::to_string(nodes.size());
      r.certification = rep.pass ? "verified" : "verification failed";
      if (!rep.pass) r.status = RowStatus::mismatch;
      return;
    }
    case RowKind::extremal: {
      const bool with_dual = spec.set.size() > 5 && spec.set.substr(spec.set.size() - 5) == "+dual";
      const std::string id = with_dual ? spec.set.substr(0, spec.set.size() - 5) : spec.set;
      auto profile = extremal_profile(id, n, spec.extremal_ell, Rational(spec.extremal_min), with_dual, spec.shells);
      auto sol = solve_weights_modular(profile, spec.shells, spec.t, spec.group, opt.seed);
      if (!sol.feasible || !sol.residuals_zero()) {
        r.status = RowStatus::mismatch;
        r.size = sol.status;
        return;
      }
      Integer size = 0;
      for (const auto& c : sol.shell_sizes) size += c;
      r.size = size.get_str();
      r.certification = "certified-by-series";
      r.messages.push_back("lattice data absent; shell sizes and weights from the extremal theta series");
      return;
    }
    case RowKind::lattice:
      break;
  }

  LatticeSet set;
  try {
    set = parse_lattice_set(spec.set);
  } catch (const MissingData& e) {
    r.status = RowStatus::missing_data;
    r.size = "missing data";
    r.certification = "skipped";
    r.messages.push_back(e.what());
    return;
  }
  auto profile = set_profile(set, spec.shells, popt);
  check_shells(set, profile, spec.shells, popt.enumeration);
  const Integer size = distinct_size(set, profile, spec.shells, popt.enumeration);
  r.size = size.get_str();
  for (int m : spec.shells)
    if (profile.sources.at(m) == "series") r.messages.push_back("shell " + std::to_string(m) + " size from the fitted theta series");

  if (n % 2 == 1) {
    auto g = solve_weights_gram(set, spec.shells, spec.t);
    if (!g.feasible || spec.shells.size() != 1) {
      r.status = RowStatus::mismatch;
      r.messages.push_back("Gram solver: " + g.status);
      return;
    }
    Rational w(1);
    w /= profile.size(spec.shells.front());
    verify_or_series(set, spec.shells, {w}, size, "pair cap exceeded");
    return;
  }
  auto sol = solve_weights_modular(profile, spec.shells, spec.t, spec.group, opt.seed);
  const std::string series_reason =
      "direct verification exceeds the pair cap; weight equations hold exactly (zero rational residuals)";
  // A weight forced to exactly zero leaves a formula on the remaining shells.
  std::vector<int> support;
  std::vector<Rational> support_weights;
  bool negative = sol.weights.empty();
  for (std::size_t j = 0; j < sol.weights.size(); ++j) {
    if (sol.weights[j] < 0) negative = true;
    if (sol.weights[j] > 0) {
      support.push_back(spec.shells[j]);
      support_weights.push_back(sol.weights[j]);
    }
  }
  if (sol.status == "nonpositive weight" && !negative && !support.empty()) {
    if (!sol.residuals_zero()) throw CubatureError("nonzero residual in an exact solve");
    for (std::size_t j = 0; j < sol.weights.size(); ++j)
      if (sol.weights[j] == 0) r.messages.push_back("weight of shell " + std::to_string(spec.shells[j]) + " is exactly 0");
    const Integer support_size = distinct_size(set, profile, support, popt.enumeration);
    r.size = support_size.get_str();
    r.messages.push_back("formula supported on shells " + join(support) + " with " + r.size + " nodes");
    verify_or_series(set, support, support_weights, support_size, series_reason);
    return;
  }
  if (!sol.feasible) {
    r.size = sol.status;
    r.certification = "infeasible";
    for (std::size_t j = 0; j < sol.weights.size(); ++j)
      r.messages.push_back("W(" + std::to_string(spec.shells[j]) + ") = " + to_decimal(sol.weights[j], 6));
    return;
  }
  if (!sol.residuals_zero()) throw CubatureError("nonzero residual in an exact solve");
  verify_or_series(set, spec.shells, sol.weights, size, series_reason);
}

void compare(RowResult& r) {
  if (!r.golden) {
    r.status = RowStatus::mismatch;
    r.messages.push_back("no golden row");
    return;
  }
  const auto& g = *r.golden;
  bool diff = false;
  auto fail = [&](const std::string& m) {
    r.status = RowStatus::mismatch;
    r.messages.push_back(m);
  };
  if (g.t != r.spec.t) fail("golden strength " + std::to_string(g.t));
  if (g.shells != r.shells && r.spec.kind != RowKind::literature && r.spec.kind != RowKind::configuration)
    fail("golden shells " + g.shells);

  // size
  if (r.status != RowStatus::missing_data && r.spec.kind != RowKind::out_of_scope &&
      r.spec.kind != RowKind::literature && r.size != g.size) {
    if (!g.expected_size.empty() && r.size == g.expected_size) {
      diff = true;
      r.messages.push_back("size: printed " + g.size + ", computed " + r.size + " (documented)");
    } else {
      fail("size: printed " + g.size + ", computed " + r.size);
    }
  }

  // bound
  auto printed = parse_bound(g.bound);
  const auto& b = r.spec.bound;
  if (printed.annotation != b.annotation()) fail("bound annotation: printed " + printed.annotation);
  auto within = [&](double target, bool at_least) {
    if (b.method != M::lp) return r.bound_value == target;
    return at_least ? r.bound_value >= target - 2 : std::fabs(r.bound_value - target) <= 2;
  };
  if (!within(printed.value, printed.at_least)) {
    if (!g.expected_bound.empty() && within(parse_bound(g.expected_bound).value, false)) {
      diff = true;
      r.messages.push_back("bound: printed " + g.bound + ", computed " + r.bound + " (documented)");
    } else {
      fail("bound: printed " + g.bound + ", computed " + r.bound);
    }
  } else if (printed.at_least && r.bound_value > printed.value) {
    r.messages.push_back("bound: computed value exceeds the printed lower estimate " + g.bound);
  }
  if (is_number(r.size) && r.bound_value > std::stod(r.size) + 1e-9) fail("size below the computed bound");
  if (!g.note.empty()) r.messages.push_back("note: " + g.note);
  if (r.status == RowStatus::match && diff) r.status = RowStatus::documented_diff;
}

}  // namespace

const std::vector<TableSpec>& table_specs() {
  static const std::vector<TableSpec> specs = build_specs();
  return specs;
}

const TableSpec& table_spec(const std::string& id) {
  const std::string key = id == "4b-bounds" ? "4b" : id;
  for (const auto& t : table_specs())
    if (t.id == key) return t;
  throw std::invalid_argument("unknown table '" + id + "'");
}

std::vector<GoldenRow> read_golden(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingData("golden file " + path.string() + " not found");
  std::vector<GoldenRow> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    auto f = split_csv_line(line);
    if (f.size() != 8) throw std::runtime_error("golden file " + path.string() + ": expected 8 fields in '" + line + "'");
    GoldenRow g;
    g.t = std::stoi(f[0]);
    g.set = f[1];
    g.shells = f[2];
    g.size = f[3];
    g.bound = f[4];
    g.expected_size = f[5];
    g.expected_bound = f[6];
    g.note = f[7];
    rows.push_back(std::move(g));
  }
  return rows;
}

void write_golden(const std::filesystem::path& path, const std::vector<GoldenRow>& rows) {
  std::ofstream out(path);
  out << "strength,set,shells,size,bound,expected_size,expected_bound,note\n";
  for (const auto& g : rows)
    out << g.t << "," << csv_quote(g.set) << "," << csv_quote(g.shells) << "," << csv_quote(g.size) << ","
        << csv_quote(g.bound) << "," << csv_quote(g.expected_size) << "," << csv_quote(g.expected_bound) << ","
        << csv_quote(g.note) << "\n";
}

std::filesystem::path golden_path(const std::string& table_id) {
  return data_dir() / "golden" / ("table_" + table_spec(table_id).id + ".csv");
}

TableResult reproduce_table(const std::string& table_id, const ReproduceOptions& opt) {
  TableResult result;
  result.spec = table_spec(table_id);
  const auto golden = read_golden(golden_path(table_id));
  if (golden.size() != result.spec.rows.size())
    throw std::runtime_error("golden file for table " + result.spec.id + " has " + std::to_string(golden.size()) +
                             " rows, expected " + std::to_string(result.spec.rows.size()));
  bool mismatch = false, missing = false;
  for (std::size_t i = 0; i < result.spec.rows.size(); ++i) {
    RowResult r;
    r.spec = result.spec.rows[i];
    r.golden = golden[i];
    r.shells = result.spec.bounds_only ? "" : join(r.spec.shells);
    if (result.spec.bounds_only) r.shells = r.golden->shells;
    try {
      compute_size(r, static_cast<std::size_t>(result.spec.n), opt);
      compute_bound(r, result.spec.n, opt);
      if (r.status != RowStatus::mismatch) {
        const auto keep = r.status;
        compare(r);
        if (keep == RowStatus::missing_data || keep == RowStatus::out_of_scope)
          if (r.status != RowStatus::mismatch) r.status = keep;
      }
    } catch (const std::exception& e) {
      r.status = RowStatus::mismatch;
      r.messages.push_back(std::string("error: ") + e.what());
    }
    mismatch |= r.status == RowStatus::mismatch;
    missing |= r.status == RowStatus::missing_data;
    result.rows.push_back(std::move(r));
  }
  result.exit_code = mismatch ? 1 : (missing && !opt.allow_missing ? 3 : 0);
  return result;
}

std::string status_name(RowStatus s) {
  switch (s) {
    case RowStatus::match:
      return "match";
    case RowStatus::documented_diff:
      return "documented diff";
    case RowStatus::mismatch:
      return "MISMATCH";
    case RowStatus::missing_data:
      return "missing data";
    case RowStatus::out_of_scope:
      return "out of scope";
  }
  return "";
}

void render_markdown(std::ostream& out, const TableResult& table) {
  out << "### Table " << table.spec.id << ": " << table.spec.title << "\n\n";
  if (table.spec.bounds_only) {
    out << "| strength | best known cubature formula | size | bound | certification | status |\n";
    out << "|---|---|---|---|---|---|\n";
  } else {
    out << "| strength | set | shells | size | bound | certification | status |\n";
    out << "|---|---|---|---|---|---|---|\n";
  }
  for (const auto& r : table.rows) {
    out << "| " << r.spec.t << " | " << r.spec.label << " | ";
    if (!table.spec.bounds_only) out << r.shells << " | ";
    out << r.size << " | " << r.bound << " | " << r.certification << " | " << status_name(r.status) << " |\n";
  }
}

void render_csv(std::ostream& out, const TableResult& table) {
  out << "# table=" << table.spec.id << "\n";
  out << "strength,set,shells,size,bound,certification,status\n";
  for (const auto& r : table.rows)
    out << r.spec.t << "," << csv_quote(r.spec.label) << "," << csv_quote(r.shells) << "," << csv_quote(r.size) << ","
        << csv_quote(r.bound) << "," << csv_quote(r.certification) << "," << csv_quote(status_name(r.status)) << "\n";
}

void render_jsonl(std::ostream& out, const TableResult& table) {
  for (const auto& r : table.rows) {
    nlohmann::ordered_json j;
    j["table"] = table.spec.id;
    j["strength"] = r.spec.t;
    j["set"] = r.spec.label;
    j["shells"] = r.shells;
    j["size"] = r.size;
    j["bound"] = r.bound;
    j["certification"] = r.certification;
    j["status"] = status_name(r.status);
    j["messages"] = r.messages;
    out << j.dump() << "\n";
  }
}

void render_diff(std::ostream& out, const TableResult& table) {
  std::map<RowStatus, int> counts;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    ++counts[r.status];
    out << "row " << i + 1 << " (strength " << r.spec.t << "): " << status_name(r.status) << "\n";
    for (const auto& m : r.messages) out << "  " << m << "\n";
  }
  out << "table " << table.spec.id << ": " << counts[RowStatus::match] << " match, "
      << counts[RowStatus::documented_diff] << " documented diff, " << counts[RowStatus::mismatch] << " mismatch, "
      << counts[RowStatus::missing_data] << " missing data, " << counts[RowStatus::out_of_scope] << " out of scope\n";
}

}  // namespace latcub
