#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hignn/mol.hpp"

namespace hignn::brics {

// one of the sixteen chemical environments; predicates are pure
struct BricsEnvironment {
  int id;                 // 1..16
  std::string label;      // "L1".."L16"
  std::string description;
  std::function<bool(const mol::Molecule&, int)> predicate;
};

const std::vector<BricsEnvironment>& environments();

struct BricsBond {
  int a = -1, b = -1;      // atom a matches env_a, atom b matches env_b
  int env_a = 0, env_b = 0;
};

struct FragmentSet {
  std::vector<std::vector<int>> fragments;  // sorted atom-id lists
  std::vector<BricsBond> cleaved;
};

// cleavable bonds with their environment pair, sorted by atom indices;
// a bond matching several pairs is recorded once with the first match in
// rule-table order
std::vector<BricsBond> brics_bonds(const mol::Molecule& m);

// cut every cleavable bond simultaneously; connected components become the
// fragments; an uncleavable molecule is its own single fragment
FragmentSet fragment(const mol::Molecule& m);

// canonical SMILES of each fragment (severed valence capped by hydrogens)
std::vector<std::string> fragment_smiles(const mol::Molecule& m,
                                         const FragmentSet& fs);

}  // namespace hignn::brics
