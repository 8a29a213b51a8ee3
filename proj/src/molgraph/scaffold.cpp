#include <vector>

#include "hignn/mol.hpp"

namespace hignn::mol {

std::set<int> murcko_scaffold(const Molecule& m) {
  int n = m.n_atoms();
  std::vector<bool> keep(n, true);
  std::vector<int> deg(n);
  for (int i = 0; i < n; ++i) deg[i] = m.degree(i);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      if (keep[i] && !m.atoms[i].in_ring && deg[i] <= 1) {
        keep[i] = false;
        changed = true;
        for (int v : m.neighbors(i))
          if (keep[v]) --deg[v];
      }
    }
  }
  bool any_ring = false;
  for (int i = 0; i < n; ++i)
    if (keep[i] && m.atoms[i].in_ring) any_ring = true;
  if (!any_ring) return {};
  // re-attach atoms multiply bonded to the framework
  bool added = true;
  while (added) {
    added = false;
    for (const auto& b : m.bonds) {
      if (b.order != BondOrder::Double && b.order != BondOrder::Triple)
        continue;
      if (keep[b.a] != keep[b.b]) {
        keep[keep[b.a] ? b.b : b.a] = true;
        added = true;
      }
    }
  }
  std::set<int> out;
  for (int i = 0; i < n; ++i)
    if (keep[i]) out.insert(i);
  return out;
}

std::string scaffold_key(const Molecule& m) {
  auto atoms = murcko_scaffold(m);
  if (atoms.empty()) return "";
  return canonical_smiles(
      subgraph(m, std::vector<int>(atoms.begin(), atoms.end())));
}

}  // namespace hignn::mol
