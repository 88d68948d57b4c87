#pragma once

#include "latcub/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace latcub {

// How the bound column of a row is produced.
struct BoundSpec {
  enum class Method { tight, delsarte_plus_one, lp };
  Method method = Method::tight;
  int degree = 0;          // d for lp
  bool at_least = false;         // value printed as ">= v"
  bool degree_at_least = false;  // annotation printed as "LP>=d"

  std::string annotation() const;  // "T", "D", "LP5", "LP>=18"
};

// How the size column of a row is produced.
enum class RowKind {
  lattice,       // shells of a catalog lattice set
  extremal,      // shells of an extremal theta series (lattice data absent)
  configuration, // a fixed point configuration built in code
  literature,    // size quoted from the literature, bound only
  out_of_scope,  // marker row
};

struct TableRowSpec {
  int t = 0;
  std::string label;  // as displayed in the set column
  RowKind kind = RowKind::lattice;
  std::string set;    // catalog set spec, extremal id or configuration name
  std::vector<int> shells;
  std::string group;  // optional symmetry group for the modular solver
  BoundSpec bound;
  std::string marker;  // text for out_of_scope rows
  int extremal_ell = 0;  // level and minimum of the extremal series
  int extremal_min = 0;
};

struct TableSpec {
  std::string id;  // "4", "4b", "6", ..., "12"
  int n = 0;
  std::string title;
  bool bounds_only = false;  // set/shells columns hold a description
  std::vector<TableRowSpec> rows;
};

// Known table ids with their aliases ("4b-bounds" for "4b").
const std::vector<TableSpec>& table_specs();
const TableSpec& table_spec(const std::string& id);

// A row of a golden file: printed values plus optional documented diffs.
struct GoldenRow {
  int t = 0;
  std::string set;
  std::string shells;
  std::string size;   // digits, or a marker
  std::string bound;  // "21 (D)", ">=146153 (LP8)"
  std::string expected_size;   // documented computed value when it differs from the printed one
  std::string expected_bound;
  std::string note;
};

std::vector<GoldenRow> read_golden(const std::filesystem::path& path);
void write_golden(const std::filesystem::path& path, const std::vector<GoldenRow>& rows);
std::filesystem::path golden_path(const std::string& table_id);

struct ReproduceOptions {
  std::size_t pair_cap = 1'000'000'000;  // direct verification above this is replaced by the series certificate
  std::size_t node_cap = 5'000'000;
  std::uint64_t count_budget = 20'000'000;
  int lp_grid = 100'000;
  bool allow_missing = false;
  unsigned threads = 0;
  std::uint64_t seed = 1;
};

enum class RowStatus { match, documented_diff, mismatch, missing_data, out_of_scope };

struct RowResult {
  TableRowSpec spec;
  std::string shells;       // "2,6,10"
  std::string size;         // computed size, or a marker
  std::string certification; // "verified", "certified-by-series", "literature", ...
  std::string bound;        // rendered computed bound with annotation
  double bound_value = 0;
  std::optional<GoldenRow> golden;
  RowStatus status = RowStatus::match;
  std::vector<std::string> messages;
};

struct TableResult {
  TableSpec spec;
  std::vector<RowResult> rows;
  int exit_code = 0;  // 0 ok, 1 mismatch, 3 missing data
};

TableResult reproduce_table(const std::string& table_id, const ReproduceOptions& opt = {});

// Rendering: markdown pipe table, CSV, or one JSON record per row.
void render_markdown(std::ostream& out, const TableResult& table);
void render_csv(std::ostream& out, const TableResult& table);
void render_jsonl(std::ostream& out, const TableResult& table);
// Per-row comparison against the golden file and a summary line.
void render_diff(std::ostream& out, const TableResult& table);

std::string status_name(RowStatus s);

}  // namespace latcub
