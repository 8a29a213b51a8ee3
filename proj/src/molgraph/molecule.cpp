#include "hignn/mol.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mol_internal.hpp"

namespace hignn::mol {

namespace {

const std::map<std::string, int>& element_table() {
  static const std::map<std::string, int> t = {
      {"H", 1},   {"He", 2},  {"Li", 3},  {"Be", 4},  {"B", 5},   {"C", 6},
      {"N", 7},   {"O", 8},   {"F", 9},   {"Ne", 10}, {"Na", 11}, {"Mg", 12},
      {"Al", 13}, {"Si", 14}, {"P", 15},  {"S", 16},  {"Cl", 17}, {"Ar", 18},
      {"K", 19},  {"Ca", 20}, {"Sc", 21}, {"Ti", 22}, {"V", 23},  {"Cr", 24},
      {"Mn", 25}, {"Fe", 26}, {"Co", 27}, {"Ni", 28}, {"Cu", 29}, {"Zn", 30},
      {"Ga", 31}, {"Ge", 32}, {"As", 33}, {"Se", 34}, {"Br", 35}, {"Kr", 36},
      {"Rb", 37}, {"Sr", 38}, {"Y", 39},  {"Zr", 40}, {"Nb", 41}, {"Mo", 42},
      {"Tc", 43}, {"Ru", 44}, {"Rh", 45}, {"Pd", 46}, {"Ag", 47}, {"Cd", 48},
      {"In", 49}, {"Sn", 50}, {"Sb", 51}, {"Te", 52}, {"I", 53},  {"Xe", 54},
      {"Cs", 55}, {"Ba", 56}, {"La", 57}, {"Gd", 64}, {"Pt", 78}, {"Au", 79},
      {"Hg", 80}, {"Tl", 81}, {"Pb", 82}, {"Bi", 83}, {"At", 85}, {"Ra", 88},
      {"U", 92}};
  return t;
}

}  // namespace

int atomic_number(const std::string& symbol) {
  auto it = element_table().find(symbol);
  return it == element_table().end() ? -1 : it->second;
}

const std::string& symbol_of(int z) {
  static std::map<int, std::string> rev = [] {
    std::map<int, std::string> r;
    for (const auto& [s, n] : element_table()) r[n] = s;
    return r;
  }();
  static const std::string unknown = "*";
  auto it = rev.find(z);
  return it == rev.end() ? unknown : it->second;
}

bool organic_subset(int z) {
  switch (z) {
    case 5: case 6: case 7: case 8: case 15: case 16:
    case 9: case 17: case 35: case 53:
      return true;
    default:
      return false;
  }
}

const Bond* Molecule::bond_between(int a, int b) const {
  for (int bi : nbrs[a])
    if (bonds[bi].other(a) == b) return &bonds[bi];
  return nullptr;
}

Bond* Molecule::bond_between(int a, int b) {
  for (int bi : nbrs[a])
    if (bonds[bi].other(a) == b) return &bonds[bi];
  return nullptr;
}

std::vector<int> Molecule::neighbors(int i) const {
  std::vector<int> out;
  out.reserve(nbrs[i].size());
  for (int bi : nbrs[i]) out.push_back(bonds[bi].other(i));
  return out;
}

int Molecule::add_atom(Atom atom) {
  atoms.push_back(atom);
  nbrs.emplace_back();
  chiral_nbrs.emplace_back();
  return n_atoms() - 1;
}

int Molecule::add_bond(int a, int b, BondOrder order) {
  if (a == b) throw SyntaxError("self bond");
  if (bond_between(a, b)) throw SyntaxError("duplicate bond");
  Bond bond;
  bond.a = a;
  bond.b = b;
  bond.order = order;
  bond.kek_order = order == BondOrder::Aromatic
                       ? 1
                       : static_cast<uint8_t>(order);
  bonds.push_back(bond);
  int bi = n_bonds() - 1;
  nbrs[a].push_back(bi);
  nbrs[b].push_back(bi);
  return bi;
}

namespace detail {

std::vector<int> allowed_valences(int z, int charge) {
  auto base = [&]() -> std::vector<int> {
    switch (z) {
      case 5: return {3};
      case 6: return {4};
      case 7: return {3, 5};
      case 8: return {2};
      case 15: return {3, 5};
      case 16: return {2, 4, 6};
      case 9: case 17: case 35: case 53: case 85: return {1};
      case 34: case 52: return {2, 4, 6};
      case 33: return {3, 5};
      case 14: return {4};
      default: return {};
    }
  }();
  if (base.empty()) return {};
  if (charge == 0) return base;
  if (z == 7 || z == 15 || z == 33)
    return {std::max(0, base[0] + charge)};
  if (z == 8 || z == 16 || z == 34 || z == 52) {
    if (charge > 0) {
      for (int& v : base) v = std::max(0, v + charge);
      return base;
    }
    return {std::max(0, base[0] + charge)};
  }
  if (z == 6) return {4 - std::abs(charge)};
  if (z == 5) return {3 - charge};
  return {std::max(0, base[0])};
}

bool needs_pi(const Molecule& m, int idx, int explicit_h, int charge) {
  bool exo_multiple = false;
  for (int bi : m.nbrs[idx]) {
    auto o = m.bonds[bi].order;
    if (o == BondOrder::Double || o == BondOrder::Triple) exo_multiple = true;
  }
  int conn = m.degree(idx) + explicit_h;
  int z = m.atoms[idx].z;
  if (z == 6) return !exo_multiple && charge == 0;
  if (z == 7 || z == 15 || z == 33) {
    if (charge == 0) return explicit_h == 0 && conn < 3;
    if (charge == 1) return !exo_multiple;
    return false;
  }
  if (z == 8 || z == 16 || z == 34 || z == 52) return charge == 1;
  if (z == 5) return false;
  throw AromaticityError("aromatic " + symbol_of(z) + " unsupported");
}

void perceive_rings(Molecule& m) {
  int n = m.n_atoms();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> bridge(m.n_bonds(), false);
  int timer = 0;
  struct Frame { int u, pe; size_t k; };
  for (int root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      bool advanced = false;
      while (f.k < m.nbrs[f.u].size()) {
        int bi = m.nbrs[f.u][f.k++];
        if (bi == f.pe) continue;
        int v = m.bonds[bi].other(f.u);
        if (disc[v] < 0) {
          disc[v] = low[v] = timer++;
          stack.push_back({v, bi, 0});
          advanced = true;
          break;
        }
        low[f.u] = std::min(low[f.u], disc[v]);
      }
      if (!advanced) {
        int u = f.u, pe = f.pe;
        stack.pop_back();
        if (!stack.empty()) {
          int p = stack.back().u;
          low[p] = std::min(low[p], low[u]);
          if (low[u] > disc[p]) bridge[pe] = true;
        }
      }
    }
  }
  for (int bi = 0; bi < m.n_bonds(); ++bi) m.bonds[bi].in_ring = !bridge[bi];
  for (auto& a : m.atoms) a.in_ring = false;
  for (auto& b : m.bonds)
    if (b.in_ring) {
      m.atoms[b.a].in_ring = true;
      m.atoms[b.b].in_ring = true;
    }

  // shortest cycle through each non-tree ring edge
  std::vector<bool> visited(n, false);
  std::set<int> tree_edges;
  for (int root = 0; root < n; ++root) {
    if (visited[root]) continue;
    visited[root] = true;
    std::vector<int> queue{root};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      for (int bi : m.nbrs[u]) {
        int v = m.bonds[bi].other(u);
        if (!visited[v]) {
          visited[v] = true;
          tree_edges.insert(bi);
          queue.push_back(v);
        }
      }
    }
  }
  std::set<std::vector<int>> rings;
  for (int bi = 0; bi < m.n_bonds(); ++bi) {
    if (tree_edges.count(bi) || !m.bonds[bi].in_ring) continue;
    const Bond& bond = m.bonds[bi];
    std::vector<int> prev(n, -1);
    prev[bond.a] = bond.a;
    std::vector<int> queue{bond.a};
    for (size_t qi = 0; qi < queue.size() && prev[bond.b] < 0; ++qi) {
      int u = queue[qi];
      for (int bj : m.nbrs[u]) {
        if (bj == bi) continue;
        int v = m.bonds[bj].other(u);
        if (prev[v] < 0) {
          prev[v] = u;
          queue.push_back(v);
        }
      }
    }
    if (prev[bond.b] < 0) continue;
    std::vector<int> path{bond.b};
    while (path.back() != bond.a) path.push_back(prev[path.back()]);
    size_t lo = 0;
    for (size_t k = 1; k < path.size(); ++k)
      if (path[k] < path[lo]) lo = k;
    std::rotate(path.begin(), path.begin() + lo, path.end());
    if (path.size() > 2 && path[1] > path.back())
      std::reverse(path.begin() + 1, path.end());
    rings.insert(path);
  }
  m.rings.assign(rings.begin(), rings.end());
  std::sort(m.rings.begin(), m.rings.end(),
            [](const auto& x, const auto& y) {
              if (x.size() != y.size()) return x.size() < y.size();
              return x < y;
            });
}

void validate_aromatic(const Molecule& m) {
  for (int i = 0; i < m.n_atoms(); ++i)
    if (m.atoms[i].aromatic && !m.atoms[i].in_ring)
      throw AromaticityError("aromatic atom " + std::to_string(i) +
                             " not in a ring");
}

void promote_kekule_rings(Molecule& m) {
  for (const auto& ring : m.rings) {
    if (ring.size() != 6) continue;
    bool ok = true;
    for (int i : ring) {
      const Atom& a = m.atoms[i];
      if (a.aromatic || (a.z != 6 && a.z != 7)) { ok = false; break; }
    }
    if (!ok) continue;
    std::vector<BondOrder> orders;
    for (size_t k = 0; k < 6 && ok; ++k) {
      const Bond* b = m.bond_between(ring[k], ring[(k + 1) % 6]);
      if (!b || (b->order != BondOrder::Single && b->order != BondOrder::Double))
        ok = false;
      else
        orders.push_back(b->order);
    }
    if (!ok) continue;
    for (size_t k = 0; k < 6; ++k)
      if (orders[k] == orders[(k + 1) % 6]) { ok = false; break; }
    if (!ok) continue;
    for (int i : ring) m.atoms[i].aromatic = true;
    for (size_t k = 0; k < 6; ++k) {
      Bond* b = m.bond_between(ring[k], ring[(k + 1) % 6]);
      b->kek_order = static_cast<uint8_t>(b->order);
      b->order = BondOrder::Aromatic;
    }
  }
}

void demote_nonring_aromatic_bonds(Molecule& m) {
  for (auto& b : m.bonds) {
    if (b.order == BondOrder::Aromatic && !b.in_ring) {
      if (m.atoms[b.a].aromatic && m.atoms[b.b].aromatic) {
        b.order = BondOrder::Single;
        b.kek_order = 1;
      } else {
        throw AromaticityError("aromatic bond outside ring");
      }
    }
  }
}

void kekulize(Molecule& m) {
  std::vector<int> arom_bonds;
  for (int bi = 0; bi < m.n_bonds(); ++bi)
    if (m.bonds[bi].order == BondOrder::Aromatic) arom_bonds.push_back(bi);
  if (arom_bonds.empty()) return;
  std::map<int, bool> need;
  for (int bi : arom_bonds) {
    for (int i : {m.bonds[bi].a, m.bonds[bi].b}) {
      if (!need.count(i))
        need[i] = needs_pi(m, i, m.atoms[i].explicit_h, m.atoms[i].charge);
    }
  }
  for (int bi : arom_bonds) m.bonds[bi].kek_order = 1;
  std::vector<int> todo;
  for (const auto& [i, req] : need)
    if (req) todo.push_back(i);
  std::sort(todo.begin(), todo.end());
  std::map<int, std::vector<std::pair<int, int>>> adj;
  for (int bi : arom_bonds) {
    const Bond& b = m.bonds[bi];
    adj[b.a].push_back({b.b, bi});
    adj[b.b].push_back({b.a, bi});
  }
  std::map<int, int> mate;
  for (int u : todo) mate[u] = -1;
  std::vector<int> chosen;

  // exact backtracking perfect matching over the needs-a-double atoms;
  // handles odd-cycle systems that bipartite matching would miss
  auto solve = [&](auto&& self, size_t k) -> bool {
    while (k < todo.size() && mate[todo[k]] >= 0) ++k;
    if (k == todo.size()) return true;
    int u = todo[k];
    for (auto [v, bi] : adj[u]) {
      if (!mate.count(v) || mate[v] >= 0) continue;
      mate[u] = v;
      mate[v] = u;
      chosen.push_back(bi);
      if (self(self, k + 1)) return true;
      chosen.pop_back();
      mate[u] = -1;
      mate[v] = -1;
    }
    return false;
  };
  if (!solve(solve, 0))
    throw AromaticityError("cannot kekulize aromatic system");
  for (int bi : chosen) m.bonds[bi].kek_order = 2;
}

void electron_check(const Molecule& m) {
  std::vector<int> ring_count(m.n_atoms(), 0);
  for (const auto& ring : m.rings)
    for (int i : ring) ++ring_count[i];
  for (const auto& ring : m.rings) {
    if (ring.size() != 5 && ring.size() != 6) continue;
    bool all_aromatic = true, fused = false;
    for (int i : ring) {
      if (!m.atoms[i].aromatic) all_aromatic = false;
      if (ring_count[i] > 1) fused = true;
    }
    if (!all_aromatic || fused) continue;
    int pi = 0;
    for (int i : ring) {
      const Atom& a = m.atoms[i];
      if (needs_pi(m, i, a.explicit_h, a.charge)) {
        pi += 1;
      } else {
        bool exo = false;
        for (int bi : m.nbrs[i]) {
          auto o = m.bonds[bi].order;
          if (o == BondOrder::Double || o == BondOrder::Triple) exo = true;
        }
        if (a.z == 6 && (exo || a.charge == 1)) pi += 0;
        else pi += 2;
      }
    }
    if (pi != 6)
      throw AromaticityError("ring has " + std::to_string(pi) +
                             " pi electrons");
  }
}

void assign_hydrogens(Molecule& m) {
  for (int i = 0; i < m.n_atoms(); ++i) {
    Atom& a = m.atoms[i];
    int bondsum = 0;
    for (int bi : m.nbrs[i]) bondsum += m.bonds[bi].kek_order;
    if (a.bracket) {
      a.implicit_h = 0;
      auto allowed = allowed_valences(a.z, a.charge);
      if (!allowed.empty()) {
        int total = bondsum + a.explicit_h;
        int fit = -1;
        for (int v : allowed)
          if (v >= total) { fit = v; break; }
        if (fit < 0)
          throw ValenceError("atom " + std::to_string(i) + " (" +
                             symbol_of(a.z) + ") valence " +
                             std::to_string(total) + " exceeds maximum");
        a.radicals = static_cast<int8_t>(fit - total);
      }
      continue;
    }
    auto allowed = allowed_valences(a.z, 0);
    int fit = -1;
    for (int v : allowed)
      if (v >= bondsum) { fit = v; break; }
    if (fit < 0)
      throw ValenceError("atom " + std::to_string(i) + " (" + symbol_of(a.z) +
                         ") bond order sum " + std::to_string(bondsum) +
                         " exceeds maximum");
    a.implicit_h = static_cast<int8_t>(fit - bondsum);
  }
}

void perceive_ez(Molecule& m) {
  for (auto& bond : m.bonds) {
    if (bond.order != BondOrder::Double) continue;
    int ref[2] = {-1, -1};
    int up[2] = {0, 0};
    int ends[2] = {bond.a, bond.b};
    for (int s = 0; s < 2; ++s) {
      for (int bi : m.nbrs[ends[s]]) {
        const Bond& nb = m.bonds[bi];
        if (&nb == &bond || nb.direction == 0) continue;
        up[s] = nb.a == ends[s] ? nb.direction : -nb.direction;
        ref[s] = nb.other(ends[s]);
        break;
      }
    }
    if (ref[0] < 0 || ref[1] < 0) continue;
    bool same_side = up[0] == up[1];
    int ra = -1, rb = -1;
    for (int v : m.neighbors(bond.a))
      if (v != bond.b && (ra < 0 || v < ra)) ra = v;
    for (int v : m.neighbors(bond.b))
      if (v != bond.a && (rb < 0 || v < rb)) rb = v;
    if (ra != ref[0]) same_side = !same_side;
    if (rb != ref[1]) same_side = !same_side;
    bond.stereo = same_side ? BondStereo::Z : BondStereo::E;
    bond.stereo_ref_a = ra;
    bond.stereo_ref_b = rb;
  }
}

void perceive_conjugation(Molecule& m) {
  int n = m.n_atoms();
  std::vector<bool> has_multiple(n, false);
  for (const auto& b : m.bonds) {
    if (b.order == BondOrder::Double || b.order == BondOrder::Triple ||
        b.order == BondOrder::Aromatic) {
      has_multiple[b.a] = true;
      has_multiple[b.b] = true;
    }
  }
  auto pi_capable = [&](int i) {
    if (m.atoms[i].aromatic || has_multiple[i]) return true;
    int z = m.atoms[i].z;
    if (z == 7 || z == 8 || z == 16) {
      for (int v : m.neighbors(i))
        if (has_multiple[v]) return true;  // lone pair next to a pi system
    }
    return false;
  };
  for (auto& b : m.bonds)
    b.conjugated = pi_capable(b.a) && pi_capable(b.b);
}

}  // namespace detail

Hybridization hybridization(const Molecule& m, int i) {
  const Atom& a = m.atoms[i];
  if (a.aromatic) return Hybridization::SP2;
  int doubles = 0, triples = 0;
  for (int bi : m.nbrs[i]) {
    if (m.bonds[bi].order == BondOrder::Double) ++doubles;
    if (m.bonds[bi].order == BondOrder::Triple) ++triples;
  }
  if (triples > 0 || doubles >= 2) return Hybridization::SP;
  if (doubles == 1) return Hybridization::SP2;
  if (a.z == 7 || a.z == 8 || a.z == 16) {
    // lone pair conjugated into an adjacent pi system
    for (int v : m.neighbors(i)) {
      for (int bi : m.nbrs[v]) {
        auto o = m.bonds[bi].order;
        if (o == BondOrder::Double || o == BondOrder::Triple ||
            o == BondOrder::Aromatic)
          return Hybridization::SP2;
      }
    }
  }
  int steric = m.degree(i) + a.total_h();
  if (steric <= 4) return Hybridization::SP3;
  if (steric == 5) return Hybridization::SP3D;
  if (steric == 6) return Hybridization::SP3D2;
  return Hybridization::Other;
}

}  // namespace hignn::mol
