// Regenerates data/lattices/*.txt. Usage: make_lattice_data [OUTDIR]
#include "latcub/catalog.hpp"
#include "latcub/constructions.hpp"

#include <filesystem>
#include <iostream>

using namespace latcub;

namespace {

LatticePtr gram_only(const std::string& name, const LatticePtr& l, int ell) {
  LatticeFacts f;
  f.ell = ell;
  return Lattice::from_gram(name, l->gram(), f);
}

void write(const std::filesystem::path& dir, const LatticePtr& l, const std::vector<std::string>& comments) {
  auto path = dir / (l->name() + ".txt");
  write_lattice_file(path, *l, comments);
  std::cout << "wrote " << path.string() << "\n";
}

std::string profile_string(const std::map<long, long>& p) {
  std::string s;
  for (const auto& [k, c] : p) s += (s.empty() ? "" : " ") + std::to_string(k) + ":" + std::to_string(c);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? std::filesystem::path(argv[1]) : data_dir() / "lattices";
  std::filesystem::create_directories(dir);

  write(dir, gram_only("K12", make_k12(), 3), {"K12 Coxeter-Todd lattice", "Eisenstein construction (make_k12)"});
  write(dir, gram_only("O23", make_o23(make_leech(golay_cyclic_generators())), 1),
        {"O23 shorter Leech lattice", "projection of the even sublattice of Leech orthogonal to a norm-4 vector"});

  std::vector<LatticePtr> a2(7, make_a2());
  auto q14 = neighbor_search(direct_sum("A2^7", a2), 2, 8, 1, "Q14");
  write(dir, gram_only("Q14", q14, 3), {"Q14 3-modular lattice of dimension 14", "2-neighbor search from A2^7, seed 1"});

  // N20: distinct classes in order of discovery, told apart by the minimal vector profile
  std::vector<LatticePtr> d4(5, make_d4());
  auto start = direct_sum("D4^5", d4);
  std::vector<std::map<long, long>> seen;
  for (std::uint64_t seed = 1; seed <= 40 && seen.size() < 3; ++seed) {
    auto l = neighbor_search(start, 3, 8, seed, "N20");
    if (minimum(l).first != 4) continue;
    auto profile = minimal_vector_profile(l);
    bool known = false;
    for (const auto& s : seen) known = known || s == profile;
    if (known) continue;
    seen.push_back(profile);
    const std::string name = "N20_" + std::to_string(seen.size());
    write(dir, gram_only(name, l, 2),
          {name + " 2-modular lattice of dimension 20", "3-neighbor search from D4^5, seed " + std::to_string(seed),
           "minimal vector profile " + profile_string(profile)});
  }
  std::cout << seen.size() << " N20 classes found\n";

  for (const auto& name : {"K12", "O23", "Q14", "N20_1", "N20_2", "N20_3"}) {
    try {
      catalog_load(name);
      std::cout << name << ": ok\n";
    } catch (const MissingData&) {
      std::cout << name << ": missing\n";
    }
  }
  return 0;
}
