#include "hignn/featurize.hpp"

#include <algorithm>

#include "hignn/errors.hpp"

namespace hignn::feat {

using mol::Atom;
using mol::Bond;
using mol::BondOrder;
using mol::BondStereo;
using mol::Chirality;
using mol::Molecule;

namespace {

int element_slot(int z) {
  switch (z) {
    case 5: return 0;   // B
    case 6: return 1;   // C
    case 7: return 2;   // N
    case 8: return 3;   // O
    case 9: return 4;   // F
    case 14: return 5;  // Si
    case 15: return 6;  // P
    case 16: return 7;  // S
    case 17: return 8;  // Cl
    case 33: return 9;  // As
    case 34: return 10; // Se
    case 35: return 11; // Br
    case 52: return 12; // Te
    case 53: return 13; // I
    case 85: return 14; // At
    default: return 15; // other
  }
}

bool has_double_o(const Molecule& m, int i) {
  for (int bi : m.nbrs[i]) {
    const Bond& b = m.bonds[bi];
    if (b.order == BondOrder::Double && m.atoms[b.other(i)].z == 8)
      return true;
  }
  return false;
}

bool is_amide_n(const Molecule& m, int i) {
  if (m.atoms[i].z != 7) return false;
  for (int bi : m.nbrs[i]) {
    const Bond& b = m.bonds[bi];
    if (b.order != BondOrder::Single) continue;
    int c = b.other(i);
    if (m.atoms[c].z == 6 && has_double_o(m, c)) return true;
  }
  return false;
}

void fill_atom_row(const Molecule& m, int i, bool extras, int degree,
                   const Pharmacophores& ph, const std::set<int>& scaffold,
                   double* row) {
  const Atom& a = m.atoms[i];
  const int dim = extras ? kAtomDimExtras : kAtomDimBase;
  std::fill(row, row + dim, 0.0);
  row[element_slot(a.z)] = 1.0;
  row[16 + std::min(degree, 5)] = 1.0;
  row[22] = static_cast<double>(a.charge);
  row[23] = static_cast<double>(a.radicals);
  row[24 + static_cast<int>(mol::hybridization(m, i))] = 1.0;
  row[30] = a.aromatic ? 1.0 : 0.0;
  row[31 + std::min(a.total_h(), 4)] = 1.0;
  row[36] = a.chiral != Chirality::None ? 1.0 : 0.0;
  row[37] = a.chiral == Chirality::CW ? 1.0 : 0.0;
  row[38] = a.chiral == Chirality::CCW ? 1.0 : 0.0;
  row[39] = a.in_ring ? 1.0 : 0.0;
  if (extras) {
    row[40] = ph.donor[i] ? 1.0 : 0.0;
    row[41] = ph.acceptor[i] ? 1.0 : 0.0;
    row[42] = ph.basic[i] ? 1.0 : 0.0;
    row[43] = ph.acid[i] ? 1.0 : 0.0;
    row[44] = ph.halogen[i] ? 1.0 : 0.0;
    row[45] = scaffold.count(i) ? 1.0 : 0.0;
  }
}

}  // namespace

Pharmacophores pharmacophores(const Molecule& m) {
  int n = m.n_atoms();
  Pharmacophores ph;
  ph.donor.assign(n, false);
  ph.acceptor.assign(n, false);
  ph.basic.assign(n, false);
  ph.acid.assign(n, false);
  ph.halogen.assign(n, false);
  for (int i = 0; i < n; ++i) {
    const Atom& a = m.atoms[i];
    int z = a.z;
    ph.halogen[i] = z == 9 || z == 17 || z == 35 || z == 53;
    bool n_or_o = z == 7 || z == 8;
    if (n_or_o && a.total_h() >= 1) ph.donor[i] = true;
    if (n_or_o && a.charge <= 0) {
      bool pyrrole_nh = z == 7 && a.aromatic && a.total_h() > 0;
      bool amide = z == 7 && is_amide_n(m, i);
      if (!pyrrole_nh && !amide) ph.acceptor[i] = true;
    }
    if (z == 7 && !a.aromatic && !is_amide_n(m, i)) {
      bool all_single = true;
      for (int bi : m.nbrs[i])
        if (m.bonds[bi].order != BondOrder::Single) all_single = false;
      if (all_single) ph.basic[i] = true;
    }
  }
  // acid groups: carboxylic C(=O)OH, sulfonic S(=O)(=O)OH, phosphonic
  // P(=O)(OH); flag the O and C members
  for (int i = 0; i < n; ++i) {
    const Atom& a = m.atoms[i];
    if (a.z != 6 && a.z != 16 && a.z != 15) continue;
    std::vector<int> dbl_o, oh;
    for (int bi : m.nbrs[i]) {
      const Bond& b = m.bonds[bi];
      int v = b.other(i);
      if (m.atoms[v].z != 8) continue;
      if (b.order == BondOrder::Double) dbl_o.push_back(v);
      if (b.order == BondOrder::Single &&
          (m.atoms[v].total_h() > 0 || m.atoms[v].charge < 0))
        oh.push_back(v);
    }
    bool group = false;
    if (a.z == 6 && !a.aromatic && dbl_o.size() == 1 && !oh.empty())
      group = true;
    if (a.z == 16 && dbl_o.size() >= 2 && !oh.empty()) group = true;
    if (a.z == 15 && !dbl_o.empty() && !oh.empty()) group = true;
    if (group) {
      if (a.z == 6) ph.acid[i] = true;
      for (int v : dbl_o) ph.acid[v] = true;
      for (int v : oh) ph.acid[v] = true;
    }
  }
  return ph;
}

std::vector<double> atom_features(const Molecule& m, int i, bool extras) {
  if (i < 0 || i >= m.n_atoms())
    throw DataError("atom index out of range");
  Pharmacophores ph = pharmacophores(m);
  std::set<int> scaffold = extras ? mol::murcko_scaffold(m) : std::set<int>{};
  std::vector<double> row(extras ? kAtomDimExtras : kAtomDimBase, 0.0);
  fill_atom_row(m, i, extras, m.degree(i), ph, scaffold, row.data());
  return row;
}

std::vector<double> bond_features(const Molecule& m, const Bond& b) {
  std::vector<double> row(kBondDim, 0.0);
  switch (b.order) {
    case BondOrder::Single: row[0] = 1.0; break;
    case BondOrder::Double: row[1] = 1.0; break;
    case BondOrder::Triple: row[2] = 1.0; break;
    case BondOrder::Aromatic: row[3] = 1.0; break;
  }
  row[4] = b.conjugated ? 1.0 : 0.0;
  row[5] = b.in_ring ? 1.0 : 0.0;
  switch (b.stereo) {
    case BondStereo::None: row[6] = 1.0; break;
    case BondStereo::Any: row[7] = 1.0; break;
    case BondStereo::E: row[8] = 1.0; break;
    case BondStereo::Z: row[9] = 1.0; break;
  }
  return row;
}

GraphData featurize_graph(const Molecule& m, const std::vector<int>& subset,
                          bool extras) {
  std::vector<int> ids(subset);
  if (ids.empty()) {
    ids.resize(m.n_atoms());
    for (int i = 0; i < m.n_atoms(); ++i) ids[i] = i;
  } else {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  }
  if (ids.empty()) throw DisconnectedSubset("empty atom subset");
  std::vector<int> local(m.n_atoms(), -1);
  for (size_t k = 0; k < ids.size(); ++k) local[ids[k]] = static_cast<int>(k);

  // connectivity of the induced subgraph
  {
    std::vector<bool> seen(ids.size(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    size_t reached = 1;
    while (!stack.empty()) {
      int u = ids[stack.back()];
      stack.pop_back();
      for (int bi : m.nbrs[u]) {
        int v = m.bonds[bi].other(u);
        if (local[v] >= 0 && !seen[local[v]]) {
          seen[local[v]] = true;
          ++reached;
          stack.push_back(local[v]);
        }
      }
    }
    if (reached != ids.size())
      throw DisconnectedSubset("subset induces a disconnected subgraph");
  }

  GraphData g;
  g.n_atoms = static_cast<int>(ids.size());
  g.atom_dim = extras ? kAtomDimExtras : kAtomDimBase;
  g.x.resize(static_cast<size_t>(g.n_atoms) * g.atom_dim);

  Pharmacophores ph = pharmacophores(m);
  std::set<int> scaffold = extras ? mol::murcko_scaffold(m) : std::set<int>{};

  for (size_t k = 0; k < ids.size(); ++k) {
    int i = ids[k];
    int deg = 0;
    for (int bi : m.nbrs[i])
      if (local[m.bonds[bi].other(i)] >= 0) ++deg;
    fill_atom_row(m, i, extras, deg, ph, scaffold, g.x.data() + k * g.atom_dim);
  }
  for (const Bond& b : m.bonds) {
    int la = local[b.a], lb = local[b.b];
    if (la < 0 || lb < 0) continue;
    auto row = bond_features(m, b);
    g.edge_src.push_back(la);
    g.edge_dst.push_back(lb);
    g.e.insert(g.e.end(), row.begin(), row.end());
    g.edge_src.push_back(lb);
    g.edge_dst.push_back(la);
    g.e.insert(g.e.end(), row.begin(), row.end());
  }
  return g;
}

}  // namespace hignn::feat
