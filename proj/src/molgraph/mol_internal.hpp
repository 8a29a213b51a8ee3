#pragma once

#include <vector>

#include "hignn/mol.hpp"

namespace hignn::mol::detail {

// valence alternatives for a neutral/charged atom; empty = unconstrained
std::vector<int> allowed_valences(int z, int charge);

// does this aromatic atom take exactly one double bond in the kekule
// assignment? (explicit_h/charge/connectivity convention shared with the
// canonical writer)
bool needs_pi(const Molecule& m, int idx, int explicit_h, int charge);

void perceive_rings(Molecule& m);
void validate_aromatic(const Molecule& m);
void promote_kekule_rings(Molecule& m);
void demote_nonring_aromatic_bonds(Molecule& m);
void kekulize(Molecule& m);
void electron_check(const Molecule& m);
void assign_hydrogens(Molecule& m);
void perceive_ez(Molecule& m);
void perceive_conjugation(Molecule& m);

}  // namespace hignn::mol::detail
