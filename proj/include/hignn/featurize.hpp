#pragma once

#include <vector>

#include "hignn/mol.hpp"

namespace hignn::feat {

// atom feature layout (fixed project-wide):
//   [0..15]  element one-hot {B,C,N,O,F,Si,P,S,Cl,As,Se,Br,Te,I,At,other}
//   [16..21] degree one-hot 0-5 (restricted to the featurized subset)
//   [22]     formal charge
//   [23]     radical electrons
//   [24..29] hybridization one-hot {SP,SP2,SP3,SP3D,SP3D2,other}
//   [30]     aromatic
//   [31..35] total-H one-hot 0-4
//   [36]     chiral center
//   [37..38] chirality CW / CCW
//   [39]     ring membership
// extras:
//   [40..44] pharmacophore {donor, acceptor, basic, acid, halogen}
//   [45]     scaffold membership
inline constexpr int kAtomDimBase = 40;
inline constexpr int kAtomDimExtras = 46;

// bond feature layout:
//   [0..3] order one-hot {single, double, triple, aromatic}
//   [4]    conjugated
//   [5]    in ring
//   [6..9] stereo one-hot {none, any, E, Z}
inline constexpr int kBondDim = 10;

struct GraphData {
  int n_atoms = 0;
  int atom_dim = 0;
  std::vector<double> x;            // n_atoms x atom_dim
  std::vector<int> edge_src;        // directed edges, both directions
  std::vector<int> edge_dst;
  std::vector<double> e;            // n_edges x kBondDim
  int n_edges() const { return static_cast<int>(edge_src.size()); }
};

// per-molecule pharmacophore flags (computed once, reused per atom)
struct Pharmacophores {
  std::vector<bool> donor, acceptor, basic, acid, halogen;
};
Pharmacophores pharmacophores(const mol::Molecule& m);

std::vector<double> atom_features(const mol::Molecule& m, int i, bool extras);
std::vector<double> bond_features(const mol::Molecule& m, const mol::Bond& b);

// Featurize the molecule or an induced subgraph. All perceived attributes
// come from the parent molecule; only the degree one-hot is restricted to
// the subset. subset empty = whole molecule. The full-atom subset is
// bit-identical to whole-molecule featurization.
GraphData featurize_graph(const mol::Molecule& m,
                          const std::vector<int>& subset, bool extras);

}  // namespace hignn::feat
