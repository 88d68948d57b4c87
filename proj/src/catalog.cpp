#include "latcub/catalog.hpp"

#include "latcub/constructions.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

namespace latcub {

namespace {

LatticeFacts facts(bool even, int ell, long det, long min, long kissing) {
  LatticeFacts f;
  f.even = even;
  f.ell = ell;
  f.det = Rational(det);
  f.min_norm = Rational(min);
  f.kissing = kissing;
  return f;
}

LatticePtr with_facts(const LatticePtr& l, LatticeFacts f) {
  return std::make_shared<Lattice>(l->name(), l->gram(), l->frame_basis(), l->scale2(), l->frame(), std::move(f));
}

LatticePtr form(const std::string& name, long a, long b, long c, int ell, long min, long kissing) {
  auto l = binary_form(name, a, b, c);
  return with_facts(l, facts(true, ell, a * c - b * b, min, kissing));
}

const std::map<std::string, std::function<LatticePtr()>>& builtins() {
  static const std::map<std::string, std::function<LatticePtr()>> table = {
      {"D4", make_d4},
      {"E8", make_e8},
      {"A2", make_a2},
      {"A4", make_a4},
      {"BW16", make_bw16_reed_muller},
      {"Leech", [] { return make_leech(golay_cyclic_generators()); }},
      {"L4_11", make_l4_level11},
      {"L0_5", make_l0_level5},
      {"F7", [] { return form("F7", 2, 1, 4, 7, 2, 2); }},
      {"F11", [] { return form("F11", 2, 1, 6, 11, 2, 2); }},
      {"F23a", [] { return form("F23a", 4, 1, 6, 23, 4, 2); }},
      {"F23b", [] { return form("F23b", 2, 1, 12, 23, 2, 2); }},
  };
  return table;
}

// Facts every data file of the given name must satisfy besides its own metadata.
const std::map<std::string, LatticeFacts>& expected_file_facts() {
  static const std::map<std::string, LatticeFacts> table = {
      {"K12", facts(true, 3, 729, 4, 756)},
      {"Q14", facts(true, 3, 2187, 4, 756)},
      {"BW16", facts(true, 2, 256, 4, 4320)},
      {"N20_1", facts(true, 2, 1024, 4, 3960)},
      {"N20_2", facts(true, 2, 1024, 4, 3960)},
      {"N20_3", facts(true, 2, 1024, 4, 3960)},
      {"N24", facts(true, 3, 531441, 6, 26208)},
      {"Leech", facts(true, 1, 1, 4, 196560)},
      {"O23", facts(false, 1, 1, 3, 4600)},
  };
  return table;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("LATCUB_DATA_DIR"); env && *env) return env;
  return LATCUB_DATA_DIR;
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : builtins()) names.push_back(k);
  for (const auto& [k, v] : expected_file_facts())
    if (!builtins().count(k)) names.push_back(k);
  return names;
}

bool is_data_file_lattice(const std::string& name) {
  return expected_file_facts().count(name) && !builtins().count(name);
}

LatticeFile read_lattice_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingData("lattice data file not found: " + path.string());
  LatticeFile file;
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      file.comments.push_back(trim(t.substr(1)));
      continue;
    }
    lines.push_back(t);
  }
  if (lines.empty()) throw CatalogError(path.string() + ": empty file");
  std::size_t n = 0;
  try {
    n = std::stoul(lines[0]);
  } catch (const std::exception&) {
    throw CatalogError(path.string() + ": first line must be the dimension");
  }
  if (n == 0 || lines.size() < n + 1) throw CatalogError(path.string() + ": truncated Gram matrix");
  RatMatrix raw(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::istringstream row(lines[i + 1]);
    for (std::size_t j = 0; j < n; ++j) {
      std::string tok;
      if (!(row >> tok)) throw CatalogError(path.string() + ": short row " + std::to_string(i + 1));
      raw(i, j) = parse_rational(tok);
    }
  }
  Rational divisor = 1;
  for (std::size_t k = n + 1; k < lines.size(); ++k) {
    auto eq = lines[k].find('=');
    if (eq == std::string::npos) throw CatalogError(path.string() + ": bad metadata line '" + lines[k] + "'");
    std::string key = trim(lines[k].substr(0, eq)), value = trim(lines[k].substr(eq + 1));
    if (key == "entries") {
      if (value == "gram") {
        divisor = 1;
      } else if (value == "2gram") {
        divisor = 2;
      } else {
        throw CatalogError(path.string() + ": entries must be gram or 2gram");
      }
    } else if (key == "det") {
      file.facts.det = parse_rational(value);
    } else if (key == "min") {
      file.facts.min_norm = parse_rational(value);
    } else if (key == "even") {
      file.facts.even = value == "1" || value == "true";
    } else if (key == "ell") {
      file.facts.ell = std::stoi(value);
    } else if (key == "theta") {
      std::istringstream parts(value);
      std::string item;
      while (std::getline(parts, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw CatalogError(path.string() + ": bad theta entry '" + item + "'");
        file.theta_head.emplace_back(std::stoi(item.substr(0, colon)), Integer(trim(item.substr(colon + 1))));
      }
    } else {
      throw CatalogError(path.string() + ": unknown metadata key '" + key + "'");
    }
  }
  file.gram = raw * (1 / divisor);
  for (const auto& [m, c] : file.theta_head)
    if (file.facts.min_norm && Rational(m) == *file.facts.min_norm) file.facts.kissing = c;
  return file;
}

void write_lattice_file(const std::filesystem::path& path, const Lattice& lattice,
                        const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw CatalogError("cannot write " + path.string());
  for (const auto& c : comments) out << "# " << c << "\n";
  const std::size_t n = lattice.dim();
  const bool half = !lattice.gram().is_integral();
  RatMatrix entries = lattice.gram() * (half ? Rational(2) : Rational(1));
  if (!entries.is_integral()) throw CatalogError("write_lattice_file: Gram matrix is not half-integral");
  out << n << "\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out << (j ? " " : "") << entries(i, j).get_str();
    out << "\n";
  }
  out << "entries=" << (half ? "2gram" : "gram") << "\n";
  out << "det=" << to_string(lattice.determinant()) << "\n";
  auto [min, count] = minimum(std::make_shared<Lattice>(lattice));
  out << "min=" << to_string(min) << "\n";
  out << "even=" << (lattice.is_even() ? 1 : 0) << "\n";
  if (lattice.facts().ell) out << "ell=" << *lattice.facts().ell << "\n";
  out << "theta=0:1," << to_string(min) << ":" << count.get_str() << "\n";
}

void validate_lattice(const Lattice& lattice, const LatticeFacts& f,
                      const std::vector<std::pair<int, Integer>>& theta_head) {
  const std::string who = "lattice " + lattice.name() + ": ";
  if (f.even && lattice.is_even() != *f.even)
    throw CatalogError(who + "evenness check failed (expected " + (*f.even ? "even" : "not even") + ")");
  if (f.det && lattice.determinant() != *f.det)
    throw CatalogError(who + "determinant check failed: " + to_string(lattice.determinant()) + " != " +
                       to_string(*f.det));
  if (!f.min_norm && !f.kissing && theta_head.empty()) return;
  auto ptr = std::make_shared<Lattice>(lattice);
  auto [min, count] = minimum(ptr);
  if (f.min_norm && min != *f.min_norm)
    throw CatalogError(who + "minimum check failed: " + to_string(min) + " != " + to_string(*f.min_norm));
  if (f.kissing && count != *f.kissing)
    throw CatalogError(who + "theta check failed: " + count.get_str() + " minimal vectors, expected " +
                       f.kissing->get_str());
  for (const auto& [m, c] : theta_head) {
    if (m == 0) {
      if (c != 1) throw CatalogError(who + "theta check failed: constant term must be 1");
      continue;
    }
    Integer got = Rational(m) == min ? count : count_shell(ptr, Rational(m));
    if (got != c)
      throw CatalogError(who + "theta check failed at norm " + std::to_string(m) + ": " + got.get_str() +
                         " != " + c.get_str());
  }
}

LatticePtr catalog_load(const std::string& name) {
  static std::mutex mutex;
  static std::map<std::string, LatticePtr> cache;
  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find(name); it != cache.end()) return it->second;
  LatticePtr result;
  if (auto b = builtins().find(name); b != builtins().end()) {
    result = b->second();
    validate_lattice(*result, result->facts());
  } else if (auto e = expected_file_facts().find(name); e != expected_file_facts().end()) {
    auto file = read_lattice_file(data_dir() / "lattices" / (name + ".txt"));
    LatticeFacts merged = file.facts;
    if (!merged.ell) merged.ell = e->second.ell;
    auto lattice = Lattice::from_gram(name, file.gram, merged);
    validate_lattice(*lattice, file.facts, file.theta_head);
    validate_lattice(*lattice, e->second);
    result = lattice;
  } else {
    throw CatalogError("unknown lattice '" + name + "'");
  }
  cache[name] = result;
  return result;
}

}  // namespace latcub
