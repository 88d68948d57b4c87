#pragma once

#include "latcub/lattice.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace latcub {

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a data-file lattice is not present in the data directory.
class MissingData : public CatalogError {
 public:
  using CatalogError::CatalogError;
};

// Data directory: $LATCUB_DATA_DIR if set, else the source-tree data/ folder.
std::filesystem::path data_dir();

std::vector<std::string> catalog_names();

// Loads and validates a catalog lattice; see the README for the name list.
LatticePtr catalog_load(const std::string& name);

// Lattices stored as Gram files (subset of catalog_names()).
bool is_data_file_lattice(const std::string& name);

struct LatticeFile {
  RatMatrix gram;
  LatticeFacts facts;
  std::vector<std::pair<int, Integer>> theta_head;  // (norm, count) pairs
  std::vector<std::string> comments;
};

LatticeFile read_lattice_file(const std::filesystem::path& path);

// Writes Gram entries (or 2*Gram when the Gram matrix is half-integral) and metadata.
void write_lattice_file(const std::filesystem::path& path, const Lattice& lattice,
                        const std::vector<std::string>& comments);

// Checks evenness, determinant, minimum and the first theta coefficients;
// throws CatalogError naming the failing check.
void validate_lattice(const Lattice& lattice, const LatticeFacts& facts,
                      const std::vector<std::pair<int, Integer>>& theta_head = {});

}  // namespace latcub
