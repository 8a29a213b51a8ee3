// Canonical SMILES writer. This is a line-by-line mirror of the Python
// oracle tooling (tools/pychem/canon.py): identical ranking, tie-breaking,
// traversal and stereo-direction rules, so the two implementations must
// produce byte-identical strings. Treat any divergence as a bug here or
// there, not as acceptable variation.

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <string>

#include "hignn/mol.hpp"
#include "mol_internal.hpp"

namespace hignn::mol {

namespace {

using Key = std::vector<long long>;

std::pair<std::vector<int>, int> dense(const std::vector<Key>& keys) {
  std::vector<Key> uniq(keys);
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  std::vector<int> ranks(keys.size());
  for (size_t i = 0; i < keys.size(); ++i) {
    ranks[i] = static_cast<int>(
        std::lower_bound(uniq.begin(), uniq.end(), keys[i]) - uniq.begin());
  }
  return {ranks, static_cast<int>(uniq.size())};
}

std::pair<std::vector<int>, int> refine(const Molecule& m,
                                        std::vector<int> ranks) {
  int n = m.n_atoms();
  int nclasses = 0;
  {
    std::set<int> u(ranks.begin(), ranks.end());
    nclasses = static_cast<int>(u.size());
  }
  while (true) {
    std::vector<Key> keys(n);
    for (int i = 0; i < n; ++i) {
      std::vector<std::pair<long long, long long>> nb;
      for (int bi : m.nbrs[i])
        nb.push_back({static_cast<long long>(m.bonds[bi].order),
                      ranks[m.bonds[bi].other(i)]});
      std::sort(nb.begin(), nb.end());
      Key k{ranks[i]};
      for (auto [o, r] : nb) {
        k.push_back(o);
        k.push_back(r);
      }
      keys[i] = std::move(k);
    }
    auto [next, c] = dense(keys);
    ranks = std::move(next);
    if (c == nclasses) return {ranks, c};
    nclasses = c;
  }
}

int simulated_bare_h(const Molecule& m, int i) {
  const Atom& a = m.atoms[i];
  int bondsum = 0;
  for (int bi : m.nbrs[i]) {
    const Bond& b = m.bonds[bi];
    bondsum += b.order == BondOrder::Aromatic ? 1 : b.kek_order;
  }
  if (a.aromatic && detail::needs_pi(m, i, 0, a.charge)) bondsum += 1;
  auto allowed = detail::allowed_valences(a.z, 0);
  if (allowed.empty()) return 0;
  for (int v : allowed)
    if (v >= bondsum) return v - bondsum;
  return -1;
}

int perm_parity(std::vector<int> a, const std::vector<int>& b) {
  // 0 if b is an even permutation of a
  int parity = 0;
  std::vector<int> cur(b);
  for (size_t i = 0; i < a.size(); ++i) {
    if (cur[i] != a[i]) {
      size_t j = i + 1;
      while (j < cur.size() && cur[j] != a[i]) ++j;
      std::swap(cur[i], cur[j]);
      parity ^= 1;
    }
  }
  return parity;
}

std::string lowercase(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::tolower(c));
  return out;
}

}  // namespace

std::vector<int> canonical_ranks(const Molecule& m) {
  int n = m.n_atoms();
  std::vector<Key> init(n);
  for (int i = 0; i < n; ++i) {
    const Atom& a = m.atoms[i];
    init[i] = {a.z,
               a.aromatic ? 1 : 0,
               a.charge + 16,
               a.total_h(),
               m.degree(i),
               a.in_ring ? 1 : 0};
  }
  auto [ranks, c] = dense(init);
  std::tie(ranks, c) = refine(m, ranks);
  while (c < n) {
    std::map<int, int> counts;
    for (int r : ranks) counts[r]++;
    int target = -1;
    for (const auto& [r, k] : counts)
      if (k > 1) { target = r; break; }
    int pick = -1;
    for (int i = 0; i < n; ++i)
      if (ranks[i] == target) { pick = i; break; }
    std::vector<Key> bumped(n);
    for (int i = 0; i < n; ++i)
      bumped[i] = {2LL * ranks[i] + (i == pick ? 0 : 1)};
    auto [b, _] = dense(bumped);
    std::tie(ranks, c) = refine(m, b);
  }
  return ranks;
}

namespace {

struct StereoDirs {
  std::map<int, int> dir;  // bond id -> +1 up from a to b
};

StereoDirs assign_stereo_dirs(const Molecule& m, const std::vector<int>& pos) {
  struct C {
    int key;
    int sb_a, end_a, sb_b, end_b;
    bool same;
  };
  std::vector<C> constraints;
  auto bond_id = [&](int x, int y) {
    for (int bi : m.nbrs[x])
      if (m.bonds[bi].other(x) == y) return bi;
    return -1;
  };
  auto canon_ref = [&](int end, int skip) {
    int best = -1;
    for (int v : m.neighbors(end)) {
      if (v == skip) continue;
      const Bond* b = m.bond_between(end, v);
      if (!b || b->order != BondOrder::Single) continue;
      if (best < 0 || pos[v] < pos[best]) best = v;
    }
    return best;
  };
  for (int bi = 0; bi < m.n_bonds(); ++bi) {
    const Bond& bond = m.bonds[bi];
    if (bond.order != BondOrder::Double || bond.stereo == BondStereo::None ||
        bond.stereo == BondStereo::Any)
      continue;
    bool same = bond.stereo == BondStereo::Z;
    int cra = canon_ref(bond.a, bond.b);
    int crb = canon_ref(bond.b, bond.a);
    if (cra < 0 || crb < 0) continue;
    if (cra != bond.stereo_ref_a) same = !same;
    if (crb != bond.stereo_ref_b) same = !same;
    int sb_a = bond_id(bond.a, cra);
    int sb_b = bond_id(bond.b, crb);
    int end_a = bond.a, end_b = bond.b;
    if (pos[end_b] < pos[end_a]) {
      std::swap(sb_a, sb_b);
      std::swap(end_a, end_b);
    }
    constraints.push_back(
        {std::min(pos[end_a], pos[end_b]), sb_a, end_a, sb_b, end_b, same});
  }
  std::stable_sort(constraints.begin(), constraints.end(),
                   [](const C& x, const C& y) { return x.key < y.key; });
  StereoDirs out;
  for (const auto& c : constraints) {
    if (c.sb_a == c.sb_b) continue;
    int s1 = m.bonds[c.sb_a].a == c.end_a ? 1 : -1;
    int s2 = m.bonds[c.sb_b].a == c.end_b ? 1 : -1;
    bool h1 = out.dir.count(c.sb_a), h2 = out.dir.count(c.sb_b);
    if (!h1 && !h2) {
      const Bond& sb = m.bonds[c.sb_a];
      out.dir[c.sb_a] = pos[sb.a] < pos[sb.b] ? 1 : -1;
      h1 = true;
    }
    if (h1 && !h2) {
      int u1 = s1 * out.dir[c.sb_a];
      out.dir[c.sb_b] = s2 * (c.same ? u1 : -u1);
    } else if (h2 && !h1) {
      int u2 = s2 * out.dir[c.sb_b];
      out.dir[c.sb_a] = s1 * (c.same ? u2 : -u2);
    }
  }
  return out;
}

std::string atom_token(const Molecule& m, int i,
                       const std::vector<int>& written_order) {
  const Atom& a = m.atoms[i];
  std::string sym = symbol_of(a.z);
  if (a.aromatic) sym = lowercase(sym);
  bool bare_ok = organic_subset(a.z) && a.charge == 0 &&
                 a.chiral == Chirality::None && a.radicals == 0 &&
                 simulated_bare_h(m, i) == a.total_h();
  if (bare_ok) return sym;
  std::string out = "[" + sym;
  if (a.chiral != Chirality::None) {
    Chirality tag = a.chiral;
    const auto& stored = m.chiral_nbrs[i];
    if (stored.size() == written_order.size() && stored.size() >= 3) {
      std::vector<int> s(stored), w(written_order);
      std::vector<int> ss(s), ws(w);
      std::sort(ss.begin(), ss.end());
      std::sort(ws.begin(), ws.end());
      if (ss == ws && perm_parity(s, w) == 1)
        tag = tag == Chirality::CCW ? Chirality::CW : Chirality::CCW;
    }
    out += tag == Chirality::CCW ? "@" : "@@";
  }
  int h = a.total_h();
  if (h == 1) out += "H";
  else if (h > 1) out += "H" + std::to_string(h);
  if (a.charge == 1) out += "+";
  else if (a.charge == -1) out += "-";
  else if (a.charge > 1) out += "+" + std::to_string(a.charge);
  else if (a.charge < -1) out += std::to_string(a.charge);
  out += "]";
  return out;
}

}  // namespace

std::string canonical_smiles(const Molecule& m) {
  int n = m.n_atoms();
  if (n == 0) return "";
  std::vector<int> ranks = canonical_ranks(m);
  int root = 0;
  for (int i = 1; i < n; ++i)
    if (ranks[i] < ranks[root]) root = i;

  std::vector<int> parent(n, -1);
  std::vector<std::vector<std::pair<int, int>>> children(n);
  std::vector<int> back_edges;
  std::vector<bool> visited(n, false);
  std::vector<int> pos(n, -1);
  std::vector<bool> edge_seen(m.n_bonds(), false);
  int counter = 0;

  std::function<void(int)> walk = [&](int u) {
    visited[u] = true;
    pos[u] = counter++;
    std::vector<std::pair<int, int>> order;
    for (int bi : m.nbrs[u])
      order.push_back({ranks[m.bonds[bi].other(u)], bi});
    std::sort(order.begin(), order.end());
    for (auto [_, bi] : order) {
      int v = m.bonds[bi].other(u);
      if (!visited[v]) {
        edge_seen[bi] = true;
        children[u].push_back({v, bi});
        parent[v] = u;
        walk(v);
      } else if (!edge_seen[bi]) {
        edge_seen[bi] = true;
        back_edges.push_back(bi);
      }
    }
  };
  walk(root);

  std::vector<std::vector<std::pair<int, int>>> back_open(n), back_close(n);
  for (int bi : back_edges) {
    const Bond& b = m.bonds[bi];
    int first = pos[b.a] < pos[b.b] ? b.a : b.b;
    int second = b.other(first);
    back_open[first].push_back({second, bi});
    back_close[second].push_back({first, bi});
  }
  for (int i = 0; i < n; ++i)
    std::sort(back_open[i].begin(), back_open[i].end(),
              [&](const auto& x, const auto& y) {
                return pos[x.first] < pos[y.first];
              });

  StereoDirs dirs = assign_stereo_dirs(m, pos);

  auto bond_symbol = [&](int bi, int prev, int cur) -> std::string {
    const Bond& bond = m.bonds[bi];
    if (bond.order == BondOrder::Triple) return "#";
    if (bond.order == BondOrder::Double) return "=";
    if (bond.order == BondOrder::Aromatic) return "";
    auto it = dirs.dir.find(bi);
    if (it != dirs.dir.end()) {
      int up_prev_cur = bond.a == prev ? it->second : -it->second;
      return up_prev_cur > 0 ? "/" : "\\";
    }
    if (m.atoms[bond.a].aromatic && m.atoms[bond.b].aromatic) return "-";
    return "";
  };

  std::priority_queue<int, std::vector<int>, std::greater<int>> free_digits;
  for (int d = 1; d < 100; ++d) free_digits.push(d);
  std::map<int, int> digit_of;
  std::string out;

  auto digit_str = [](int d) {
    return d < 10 ? std::to_string(d) : "%" + std::to_string(d);
  };

  std::function<void(int)> emit = [&](int u) {
    auto closings = back_close[u];
    std::sort(closings.begin(), closings.end(),
              [&](const auto& x, const auto& y) {
                return digit_of[x.second] < digit_of[y.second];
              });
    const auto& openings = back_open[u];
    std::vector<int> written_order;
    if (parent[u] >= 0) written_order.push_back(parent[u]);
    if (m.atoms[u].explicit_h > 0 && m.atoms[u].chiral != Chirality::None)
      written_order.push_back(-1);
    for (const auto& [v, bi] : closings) written_order.push_back(v);
    for (const auto& [v, bi] : openings) written_order.push_back(v);
    for (const auto& [v, bi] : children[u]) written_order.push_back(v);

    out += atom_token(m, u, written_order);
    for (const auto& [v, bi] : closings) {
      out += bond_symbol(bi, u, v);
      out += digit_str(digit_of[bi]);
      free_digits.push(digit_of[bi]);
      digit_of.erase(bi);
    }
    for (const auto& [v, bi] : openings) {
      digit_of[bi] = free_digits.top();
      free_digits.pop();
      out += digit_str(digit_of[bi]);
    }
    for (size_t k = 0; k < children[u].size(); ++k) {
      auto [v, bi] = children[u][k];
      bool last = k + 1 == children[u].size();
      if (!last) out += "(";
      out += bond_symbol(bi, u, v);
      emit(v);
      if (!last) out += ")";
    }
  };
  emit(root);
  return out;
}

Molecule subgraph(const Molecule& m, const std::vector<int>& atom_ids) {
  std::vector<int> ids(atom_ids);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<int> remap(m.n_atoms(), -1);
  Molecule sub;
  sub.source = m.source;
  for (int i : ids) {
    Atom a = m.atoms[i];
    a.explicit_h = 0;
    a.implicit_h = 0;
    a.chiral = Chirality::None;
    a.radicals = 0;
    remap[i] = sub.add_atom(a);
  }
  std::vector<int> cut_h(m.n_atoms(), 0);
  std::vector<bool> lost(m.n_atoms(), false);
  std::vector<int> src_bond;
  for (int bi = 0; bi < m.n_bonds(); ++bi) {
    const Bond& b = m.bonds[bi];
    bool ina = remap[b.a] >= 0, inb = remap[b.b] >= 0;
    if (ina && inb) {
      int nbi = sub.add_bond(remap[b.a], remap[b.b], b.order);
      sub.bonds[nbi].kek_order = b.kek_order;
      src_bond.push_back(bi);
    } else if (ina || inb) {
      int keep = ina ? b.a : b.b;
      cut_h[keep] += b.kek_order;
      lost[keep] = true;
    }
  }
  for (int i : ids) {
    const Atom& old = m.atoms[i];
    Atom& a = sub.atoms[remap[i]];
    a.explicit_h = static_cast<int8_t>(old.total_h() + cut_h[i]);
    if (old.chiral != Chirality::None && !lost[i]) {
      a.chiral = old.chiral;
      for (int x : m.chiral_nbrs[i])
        sub.chiral_nbrs[remap[i]].push_back(x >= 0 ? remap[x] : -1);
    }
  }
  detail::perceive_rings(sub);
  for (const auto& a : sub.atoms)
    if (a.aromatic && !a.in_ring)
      throw AromaticityError("subgraph broke an aromatic ring");
  for (size_t k = 0; k < src_bond.size(); ++k) {
    const Bond& ob = m.bonds[src_bond[k]];
    if (ob.order == BondOrder::Double && ob.stereo != BondStereo::None &&
        ob.stereo != BondStereo::Any && remap[ob.stereo_ref_a] >= 0 &&
        remap[ob.stereo_ref_b] >= 0) {
      sub.bonds[k].stereo = ob.stereo;
      sub.bonds[k].stereo_ref_a = remap[ob.stereo_ref_a];
      sub.bonds[k].stereo_ref_b = remap[ob.stereo_ref_b];
    }
  }
  return sub;
}

}  // namespace hignn::mol
