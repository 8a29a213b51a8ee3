// BRICS retrosynthetic bond finding. The sixteen environments are
// hand-coded graph predicates; the compatibility table lists which label
// pairs cleave. L2 (planar amide-type nitrogen in the original rule set)
// is subsumed by the general amine definition L5 and owns no pairs. L7
// pairs cleave acyclic C=C double bonds, everything else acyclic single
// bonds.

#include "hignn/brics.hpp"

#include <algorithm>

namespace hignn::brics {

using mol::Atom;
using mol::Bond;
using mol::BondOrder;
using mol::Molecule;

namespace {

bool is(const Molecule& m, int i, int z, bool aromatic) {
  return m.atoms[i].z == z && m.atoms[i].aromatic == aromatic;
}

bool aliph(const Molecule& m, int i, int z) { return is(m, i, z, false); }

bool has_double_to(const Molecule& m, int i, int z) {
  for (int bi : m.nbrs[i]) {
    const Bond& b = m.bonds[bi];
    if (b.order == BondOrder::Double && m.atoms[b.other(i)].z == z)
      return true;
  }
  return false;
}

bool any_double(const Molecule& m, int i) {
  for (int bi : m.nbrs[i])
    if (m.bonds[bi].order == BondOrder::Double) return true;
  return false;
}

int count_double_o(const Molecule& m, int i) {
  int n = 0;
  for (int bi : m.nbrs[i]) {
    const Bond& b = m.bonds[bi];
    if (b.order == BondOrder::Double && m.atoms[b.other(i)].z == 8) ++n;
  }
  return n;
}

// acyclic single bond from i to an atom satisfying pred
template <typename F>
bool has_acyclic_single_to(const Molecule& m, int i, F pred) {
  for (int bi : m.nbrs[i]) {
    const Bond& b = m.bonds[bi];
    if (b.order == BondOrder::Single && !b.in_ring && pred(b.other(i)))
      return true;
  }
  return false;
}

bool l1(const Molecule& m, int i) {
  // [C;D3]([#0,#6,#7,#8])(=O)  acyl carbon
  if (!aliph(m, i, 6) || m.degree(i) != 3) return false;
  int o_dbl = -1;
  for (int bi : m.nbrs[i]) {
    const Bond& b = m.bonds[bi];
    if (b.order == BondOrder::Double && m.atoms[b.other(i)].z == 8) {
      o_dbl = b.other(i);
      break;
    }
  }
  if (o_dbl < 0) return false;
  for (int bi : m.nbrs[i]) {
    const Bond& b = m.bonds[bi];
    int v = b.other(i);
    if (v == o_dbl) continue;
    int z = m.atoms[v].z;
    if ((z == 6 || z == 7 || z == 8) && b.order == BondOrder::Single)
      return true;
  }
  return false;
}

bool amide_n(const Molecule& m, int i) {
  for (int bi : m.nbrs[i]) {
    const Bond& b = m.bonds[bi];
    if (b.order != BondOrder::Single) continue;
    int c = b.other(i);
    if (m.atoms[c].z == 6 && !m.atoms[c].aromatic && has_double_to(m, c, 8))
      return true;
  }
  return false;
}

bool l2(const Molecule& m, int i) {
  // planar amide nitrogen of the original rule inventory (no pairs)
  return aliph(m, i, 7) && !m.atoms[i].in_ring && m.degree(i) != 1 &&
         amide_n(m, i);
}

bool l3(const Molecule& m, int i) {
  // [O;D2]-;!@[#0,#6]
  return aliph(m, i, 8) && m.degree(i) == 2 &&
         has_acyclic_single_to(m, i, [&](int v) { return m.atoms[v].z == 6; });
}

bool l4(const Molecule& m, int i) {
  // [C;!D1;!$(C=*)]-;!@[#6]
  return aliph(m, i, 6) && m.degree(i) != 1 && !any_double(m, i) &&
         has_acyclic_single_to(m, i, [&](int v) { return m.atoms[v].z == 6; });
}

bool lactam_n(const Molecule& m, int i) {
  // [N;R]@[C;R]=O
  if (!m.atoms[i].in_ring) return false;
  for (int bi : m.nbrs[i]) {
    const Bond& b = m.bonds[bi];
    if (!b.in_ring) continue;
    int c = b.other(i);
    if (m.atoms[c].z == 6 && m.atoms[c].in_ring && !m.atoms[c].aromatic &&
        has_double_to(m, c, 8))
      return true;
  }
  return false;
}

bool l5(const Molecule& m, int i) {
  // [N;!D1;!$(N=*);!$(N-[!#6;!#16;!#0;!#1]);!$([N;R]@[C;R]=O)]
  if (!aliph(m, i, 7) || m.degree(i) == 1) return false;
  for (int bi : m.nbrs[i]) {
    const Bond& b = m.bonds[bi];
    if (b.order == BondOrder::Double) return false;
    if (b.order == BondOrder::Single) {
      int z = m.atoms[b.other(i)].z;
      if (z != 6 && z != 16) return false;
    }
  }
  return !lactam_n(m, i);
}

bool l6(const Molecule& m, int i) {
  // [C;D3;!R](=O)-;!@[#0,#6,#7,#8]
  if (!aliph(m, i, 6) || m.degree(i) != 3 || m.atoms[i].in_ring) return false;
  if (!has_double_to(m, i, 8)) return false;
  return has_acyclic_single_to(m, i, [&](int v) {
    int z = m.atoms[v].z;
    return z == 6 || z == 7 || z == 8;
  });
}

bool l7(const Molecule& m, int i) {
  // [C;D2,D3]-[#6]
  if (!aliph(m, i, 6)) return false;
  int d = m.degree(i);
  if (d != 2 && d != 3) return false;
  for (int bi : m.nbrs[i]) {
    const Bond& b = m.bonds[bi];
    if (b.order == BondOrder::Single && m.atoms[b.other(i)].z == 6)
      return true;
  }
  return false;
}

bool l8(const Molecule& m, int i) {
  // [C;!R;!D1;!$(C!-*)]
  if (!aliph(m, i, 6) || m.atoms[i].in_ring || m.degree(i) == 1) return false;
  for (int bi : m.nbrs[i])
    if (m.bonds[bi].order != BondOrder::Single) return false;
  return true;
}

bool l9(const Molecule& m, int i) {
  // [n;+0;$(n(:[c,n,o,s]):[c,n,o,s])]
  if (!is(m, i, 7, true) || m.atoms[i].charge != 0) return false;
  int count = 0;
  for (int bi : m.nbrs[i]) {
    const Bond& b = m.bonds[bi];
    if (b.order != BondOrder::Aromatic) continue;
    const Atom& v = m.atoms[b.other(i)];
    int z = v.z;
    if (v.aromatic && (z == 6 || z == 7 || z == 8 || z == 16)) ++count;
  }
  return count >= 2;
}

bool l10(const Molecule& m, int i) {
  // [N;R;$(N(@C(=O))@[C,N,O,S])]  lactam nitrogen
  if (!aliph(m, i, 7) || !m.atoms[i].in_ring) return false;
  int acyl = -1;
  for (int bi : m.nbrs[i]) {
    const Bond& b = m.bonds[bi];
    if (!b.in_ring || b.order != BondOrder::Single) continue;
    int c = b.other(i);
    if (m.atoms[c].z == 6 && !m.atoms[c].aromatic && has_double_to(m, c, 8)) {
      acyl = c;
      break;
    }
  }
  if (acyl < 0) return false;
  for (int bi : m.nbrs[i]) {
    const Bond& b = m.bonds[bi];
    if (!b.in_ring) continue;
    int v = b.other(i);
    if (v == acyl) continue;
    int z = m.atoms[v].z;
    if (!m.atoms[v].aromatic && (z == 6 || z == 7 || z == 8 || z == 16))
      return true;
  }
  return false;
}

bool l11(const Molecule& m, int i) {
  // [S;D2](-;!@[#0,#6])
  return aliph(m, i, 16) && m.degree(i) == 2 &&
         has_acyclic_single_to(m, i, [&](int v) { return m.atoms[v].z == 6; });
}

bool l12(const Molecule& m, int i) {
  // [S;D4]([#6,#0])(=O)(=O)  sulfonyl sulfur
  if (!aliph(m, i, 16) || m.degree(i) != 4) return false;
  if (count_double_o(m, i) < 2) return false;
  for (int bi : m.nbrs[i]) {
    const Bond& b = m.bonds[bi];
    if (b.order == BondOrder::Single && m.atoms[b.other(i)].z == 6)
      return true;
  }
  return false;
}

bool l13(const Molecule& m, int i) {
  // [C;$(C(-;@[C,N,O,S])-;@[N,O,S])]  ring carbon next to ring heteroatom
  if (!aliph(m, i, 6)) return false;
  int cnos = 0, nos = 0;
  for (int bi : m.nbrs[i]) {
    const Bond& b = m.bonds[bi];
    if (!b.in_ring || b.order != BondOrder::Single) continue;
    const Atom& v = m.atoms[b.other(i)];
    if (v.aromatic) continue;
    if (v.z == 6 || v.z == 7 || v.z == 8 || v.z == 16) ++cnos;
    if (v.z == 7 || v.z == 8 || v.z == 16) ++nos;
  }
  return nos >= 1 && cnos >= 2;
}

bool l14(const Molecule& m, int i) {
  // [c;$(c(:[c,n,o,s]):[n,o,s])]
  if (!is(m, i, 6, true)) return false;
  int any = 0, het = 0;
  for (int bi : m.nbrs[i]) {
    const Bond& b = m.bonds[bi];
    if (b.order != BondOrder::Aromatic) continue;
    const Atom& v = m.atoms[b.other(i)];
    if (!v.aromatic) continue;
    if (v.z == 6 || v.z == 7 || v.z == 8 || v.z == 16) ++any;
    if (v.z == 7 || v.z == 8 || v.z == 16) ++het;
  }
  return het >= 1 && any >= 2;
}

bool l15(const Molecule& m, int i) {
  // [C;$(C(-;@C)-;@C)]
  if (!aliph(m, i, 6)) return false;
  int c = 0;
  for (int bi : m.nbrs[i]) {
    const Bond& b = m.bonds[bi];
    if (!b.in_ring || b.order != BondOrder::Single) continue;
    const Atom& v = m.atoms[b.other(i)];
    if (!v.aromatic && v.z == 6) ++c;
  }
  return c >= 2;
}

bool l16(const Molecule& m, int i) {
  // [c;$(c(:c):c)]
  if (!is(m, i, 6, true)) return false;
  int c = 0;
  for (int bi : m.nbrs[i]) {
    const Bond& b = m.bonds[bi];
    if (b.order != BondOrder::Aromatic) continue;
    const Atom& v = m.atoms[b.other(i)];
    if (v.aromatic && v.z == 6) ++c;
  }
  return c >= 2;
}

struct Pair {
  int a, b;
  BondOrder order;
};

// priority order; first match wins for the recorded pair
const Pair kCompat[] = {
    {1, 3, BondOrder::Single},   {1, 5, BondOrder::Single},
    {1, 10, BondOrder::Single},  {3, 4, BondOrder::Single},
    {3, 13, BondOrder::Single},  {3, 14, BondOrder::Single},
    {3, 15, BondOrder::Single},  {3, 16, BondOrder::Single},
    {4, 5, BondOrder::Single},   {4, 11, BondOrder::Single},
    {5, 12, BondOrder::Single},  {5, 13, BondOrder::Single},
    {5, 15, BondOrder::Single},  {6, 13, BondOrder::Single},
    {6, 14, BondOrder::Single},  {6, 15, BondOrder::Single},
    {6, 16, BondOrder::Single},  {7, 7, BondOrder::Double},
    {8, 9, BondOrder::Single},   {8, 10, BondOrder::Single},
    {8, 13, BondOrder::Single},  {8, 14, BondOrder::Single},
    {8, 15, BondOrder::Single},  {8, 16, BondOrder::Single},
    {9, 13, BondOrder::Single},  {9, 14, BondOrder::Single},
    {9, 15, BondOrder::Single},  {9, 16, BondOrder::Single},
    {10, 13, BondOrder::Single}, {10, 14, BondOrder::Single},
    {10, 15, BondOrder::Single}, {10, 16, BondOrder::Single},
    {11, 13, BondOrder::Single}, {11, 14, BondOrder::Single},
    {11, 15, BondOrder::Single}, {11, 16, BondOrder::Single},
    {13, 14, BondOrder::Single}, {13, 15, BondOrder::Single},
    {13, 16, BondOrder::Single}, {14, 14, BondOrder::Single},
    {14, 15, BondOrder::Single}, {14, 16, BondOrder::Single},
    {15, 16, BondOrder::Single}, {16, 16, BondOrder::Single},
};

}  // namespace

const std::vector<BricsEnvironment>& environments() {
  static const std::vector<BricsEnvironment> envs = {
      {1, "L1", "acyl carbon of amide/ester", l1},
      {2, "L2", "acyclic amide nitrogen (subsumed by L5, no pairs)", l2},
      {3, "L3", "ether/ester oxygen", l3},
      {4, "L4", "aliphatic carbon linker", l4},
      {5, "L5", "amine nitrogen", l5},
      {6, "L6", "non-ring carbonyl carbon", l6},
      {7, "L7", "alkene carbon with carbon substituent", l7},
      {8, "L8", "acyclic saturated carbon", l8},
      {9, "L9", "aromatic nitrogen", l9},
      {10, "L10", "lactam nitrogen", l10},
      {11, "L11", "thioether sulfur", l11},
      {12, "L12", "sulfonyl sulfur", l12},
      {13, "L13", "ring carbon next to ring heteroatom", l13},
      {14, "L14", "heteroaromatic carbon", l14},
      {15, "L15", "carbocyclic ring carbon", l15},
      {16, "L16", "benzenoid aromatic carbon", l16},
  };
  return envs;
}

std::vector<BricsBond> brics_bonds(const Molecule& m) {
  const auto& envs = environments();
  auto match = [&](int label, int atom) {
    return envs[label - 1].predicate(m, atom);
  };
  std::vector<BricsBond> found;
  std::vector<bool> done(m.n_bonds(), false);
  for (const Pair& p : kCompat) {
    for (int bi = 0; bi < m.n_bonds(); ++bi) {
      const Bond& bond = m.bonds[bi];
      if (done[bi] || bond.in_ring || bond.order != p.order) continue;
      if (match(p.a, bond.a) && match(p.b, bond.b)) {
        done[bi] = true;
        found.push_back({bond.a, bond.b, p.a, p.b});
      } else if (match(p.a, bond.b) && match(p.b, bond.a)) {
        done[bi] = true;
        found.push_back({bond.b, bond.a, p.a, p.b});
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const BricsBond& x, const BricsBond& y) {
    auto kx = std::minmax(x.a, x.b), ky = std::minmax(y.a, y.b);
    return kx < ky;
  });
  return found;
}

FragmentSet fragment(const Molecule& m) {
  FragmentSet fs;
  fs.cleaved = brics_bonds(m);
  std::vector<bool> cut(m.n_bonds(), false);
  for (const auto& cb : fs.cleaved) {
    for (int bi : m.nbrs[cb.a])
      if (m.bonds[bi].other(cb.a) == cb.b) cut[bi] = true;
  }
  int n = m.n_atoms();
  std::vector<int> comp(n, -1);
  int c = 0;
  for (int start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    std::vector<int> stack{start};
    comp[start] = c;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int bi : m.nbrs[u]) {
        if (cut[bi]) continue;
        int v = m.bonds[bi].other(u);
        if (comp[v] < 0) {
          comp[v] = c;
          stack.push_back(v);
        }
      }
    }
    ++c;
  }
  fs.fragments.assign(c, {});
  for (int i = 0; i < n; ++i) fs.fragments[comp[i]].push_back(i);
  std::sort(fs.fragments.begin(), fs.fragments.end(),
            [](const auto& x, const auto& y) { return x[0] < y[0]; });
  return fs;
}

std::vector<std::string> fragment_smiles(const Molecule& m,
                                         const FragmentSet& fs) {
  std::vector<std::string> out;
  out.reserve(fs.fragments.size());
  for (const auto& f : fs.fragments)
    out.push_back(mol::canonical_smiles(mol::subgraph(m, f)));
  return out;
}

}  // namespace hignn::brics
