#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hignn/errors.hpp"

namespace hignn::mol {

enum class BondOrder : uint8_t { Single = 1, Double = 2, Triple = 3, Aromatic = 4 };
enum class BondStereo : uint8_t { None = 0, Any = 1, E = 2, Z = 3 };
enum class Chirality : uint8_t { None = 0, CCW = 1, CW = 2 };  // CCW = '@'
enum class Hybridization : uint8_t { SP = 0, SP2, SP3, SP3D, SP3D2, Other };

int atomic_number(const std::string& symbol);           // -1 if unknown
const std::string& symbol_of(int atomic_number);
bool organic_subset(int z);

struct Atom {
  int z = 6;                 // atomic number
  bool aromatic = false;
  bool bracket = false;
  int8_t charge = 0;
  int8_t explicit_h = 0;     // from brackets
  int8_t implicit_h = 0;     // computed
  int8_t radicals = 0;
  Chirality chiral = Chirality::None;
  bool in_ring = false;

  int total_h() const { return explicit_h + implicit_h; }
};

struct Bond {
  int a = -1, b = -1;
  BondOrder order = BondOrder::Single;
  uint8_t kek_order = 1;     // kekulized order used for valence arithmetic
  bool in_ring = false;
  bool conjugated = false;
  BondStereo stereo = BondStereo::None;
  int stereo_ref_a = -1, stereo_ref_b = -1;  // lowest-index reference atoms
  int8_t direction = 0;      // parse-time: +1 up from a to b

  int other(int i) const { return a == i ? b : a; }
};

struct Molecule {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  std::vector<std::vector<int>> nbrs;        // atom -> incident bond ids
  std::vector<std::vector<int>> chiral_nbrs; // neighbor order at parse (-1 = bracket H)
  std::vector<std::vector<int>> rings;       // shortest cycles (atom ids)
  std::string source;
  std::vector<std::string> warnings;

  int n_atoms() const { return static_cast<int>(atoms.size()); }
  int n_bonds() const { return static_cast<int>(bonds.size()); }
  int degree(int i) const { return static_cast<int>(nbrs[i].size()); }
  const Bond* bond_between(int a, int b) const;
  Bond* bond_between(int a, int b);
  std::vector<int> neighbors(int i) const;
  int add_atom(Atom atom);
  int add_bond(int a, int b, BondOrder order);
};

Molecule parse_smiles(const std::string& smiles);
std::string canonical_smiles(const Molecule& m);
std::vector<int> canonical_ranks(const Molecule& m);

// induced subgraph with severed valence capped by hydrogens; ids need not
// be sorted (they are sorted internally); aromatic rings must stay whole
Molecule subgraph(const Molecule& m, const std::vector<int>& atom_ids);

// Bemis-Murcko framework atom set (rings + linkers + multiply-bonded
// attachments); empty for acyclic molecules
std::set<int> murcko_scaffold(const Molecule& m);
// canonical SMILES of the framework ("" when acyclic), the grouping key
// for scaffold splits
std::string scaffold_key(const Molecule& m);

Hybridization hybridization(const Molecule& m, int i);

}  // namespace hignn::mol
