"""Canonical SMILES writer.

Ranking: Weisfeiler-Lehman refinement over (element, aromatic, charge,
total H, degree, ring flag), neighbor multisets tagged with bond order.
Remaining ties are broken by doubling all ranks and promoting the
lowest-input-index atom of the lowest tied class, then re-refining.

Output: DFS from the rank-0 atom, children in rank order. Ring-closure
bonds open at the endpoint written first; at each atom closings are
emitted before openings; bond symbols go on the closing side only.
Stereo bond directions are seeded in canonical (preorder) order.

The C++ writer implements the identical algorithm; string equality
between the two implementations is used as a test oracle, so every
deterministic choice here is contractual.
"""

import heapq
import sys

from .smiles import (Mol, Atom, ChemError, ELEMENTS, ORGANIC, SINGLE, DOUBLE,
                     TRIPLE, AROMATIC, allowed_valences, _needs_pi,
                     perceive_rings)


def _initial_key(mol, i):
    a = mol.atoms[i]
    return (ELEMENTS[a.symbol], 1 if a.aromatic else 0, a.charge + 16,
            a.total_h, mol.degree(i), 1 if a.in_ring else 0)


def _dense(keys):
    uniq = sorted(set(keys))
    lut = {k: r for r, k in enumerate(uniq)}
    return [lut[k] for k in keys], len(uniq)


def _refine(mol, ranks):
    n = len(mol.atoms)
    nclasses = len(set(ranks))
    while True:
        keys = []
        for i in range(n):
            nb = sorted((mol.bonds[bi].order, ranks[mol.bonds[bi].other(i)])
                        for bi in mol.nbrs[i])
            keys.append((ranks[i], tuple(nb)))
        ranks, c = _dense(keys)
        if c == nclasses:
            return ranks, c
        nclasses = c


def canonical_ranks(mol):
    n = len(mol.atoms)
    ranks, _ = _dense([_initial_key(mol, i) for i in range(n)])
    ranks, c = _refine(mol, ranks)
    while c < n:
        counts = {}
        for r in ranks:
            counts[r] = counts.get(r, 0) + 1
        target = min(r for r, k in counts.items() if k > 1)
        pick = min(i for i in range(n) if ranks[i] == target)
        bumped = []
        for i in range(n):
            bumped.append(2 * ranks[i] if i == pick else 2 * ranks[i] + 1)
        ranks, c = _refine(mol, _dense(bumped)[0])
    return ranks


def _simulated_bare_h(mol, i):
    """H count the parser would assign to a bare (no-bracket) token."""
    a = mol.atoms[i]
    bondsum = 0
    for bi in mol.nbrs[i]:
        b = mol.bonds[bi]
        bondsum += 1 if b.order == AROMATIC else b.kek_order
    if a.aromatic:
        probe = Atom(a.symbol, aromatic=True)
        probe.idx = i
        probe.explicit_h = 0
        probe.charge = a.charge
        if _needs_pi(mol, probe):
            bondsum += 1
    allowed = allowed_valences(a.symbol, 0)
    if allowed is None:
        return 0
    fit = [v for v in allowed if v >= bondsum]
    return (fit[0] - bondsum) if fit else -1


def _perm_parity(a, b):
    """0 if b is an even permutation of a, else 1."""
    b = list(b)
    parity = 0
    for i in range(len(a)):
        if b[i] != a[i]:
            j = b.index(a[i], i + 1)
            b[i], b[j] = b[j], b[i]
            parity ^= 1
    return parity


def _atom_token(mol, i, written_nbr_order):
    a = mol.atoms[i]
    sym = a.symbol.lower() if a.aromatic else a.symbol
    bare_ok = (a.symbol in ORGANIC and a.charge == 0 and a.chiral == 0
               and a.radicals == 0
               and _simulated_bare_h(mol, i) == a.total_h)
    if bare_ok:
        return sym
    out = "[" + sym
    if a.chiral:
        tag = a.chiral
        stored = list(a.chiral_nbrs)
        if len(stored) == len(written_nbr_order) and len(stored) >= 3 \
                and sorted(stored) == sorted(written_nbr_order):
            if _perm_parity(stored, written_nbr_order) == 1:
                tag = 3 - tag
        out += "@" if tag == 1 else "@@"
    h = a.total_h
    if h == 1:
        out += "H"
    elif h > 1:
        out += f"H{h}"
    if a.charge == 1:
        out += "+"
    elif a.charge == -1:
        out += "-"
    elif a.charge > 1:
        out += f"+{a.charge}"
    elif a.charge < -1:
        out += str(a.charge)
    out += "]"
    return out


def canonical_smiles(mol):
    n = len(mol.atoms)
    if n == 0:
        return ""
    ranks = canonical_ranks(mol)
    root = ranks.index(min(ranks))

    sys.setrecursionlimit(max(10000, 10 * n))
    parent = {root: None}
    children = {i: [] for i in range(n)}
    back_edges = []
    visited = [False] * n
    pos = [-1] * n
    counter = [0]
    edge_seen = set()

    def walk(u):
        visited[u] = True
        pos[u] = counter[0]
        counter[0] += 1
        for _, bi in sorted((ranks[mol.bonds[bi].other(u)], bi)
                            for bi in mol.nbrs[u]):
            v = mol.bonds[bi].other(u)
            if not visited[v]:
                edge_seen.add(bi)
                children[u].append((v, bi))
                parent[v] = u
                walk(v)
            elif bi not in edge_seen:
                edge_seen.add(bi)
                back_edges.append(bi)

    walk(root)

    back_open = {i: [] for i in range(n)}
    back_close = {i: [] for i in range(n)}
    for bi in back_edges:
        b = mol.bonds[bi]
        first, second = (b.a, b.b) if pos[b.a] < pos[b.b] else (b.b, b.a)
        back_open[first].append((second, bi))
        back_close[second].append((first, bi))
    for i in range(n):
        back_open[i].sort(key=lambda t: pos[t[0]])

    up_dirs = _assign_stereo_dirs(mol, pos)

    def bond_symbol(bond, prev, cur):
        if bond.order == TRIPLE:
            return "#"
        if bond.order == DOUBLE:
            return "="
        if bond.order == AROMATIC:
            return ""
        key = id(bond)
        if key in up_dirs:
            up_prev_cur = up_dirs[key] if bond.a == prev else -up_dirs[key]
            return "/" if up_prev_cur > 0 else "\\"
        if mol.atoms[bond.a].aromatic and mol.atoms[bond.b].aromatic:
            return "-"
        return ""

    free_digits = list(range(1, 100))
    heapq.heapify(free_digits)
    digit_of = {}
    out = []

    def digit_str(d):
        return str(d) if d < 10 else f"%{d:02d}"

    def emit(u):
        closings = sorted(back_close[u],
                          key=lambda t: digit_of.get(t[1], 1000))
        openings = back_open[u]
        written_order = []
        if parent.get(u) is not None:
            written_order.append(parent[u])
        if mol.atoms[u].explicit_h and mol.atoms[u].chiral:
            written_order.append(-1)
        written_order += [v for v, _ in closings]
        written_order += [v for v, _ in openings]
        written_order += [v for v, _ in children[u]]

        out.append(_atom_token(mol, u, written_order))
        for v, bi in closings:
            out.append(bond_symbol(mol.bonds[bi], u, v))
            out.append(digit_str(digit_of[bi]))
            heapq.heappush(free_digits, digit_of.pop(bi))
        for v, bi in openings:
            digit_of[bi] = heapq.heappop(free_digits)
            out.append(digit_str(digit_of[bi]))
        for k, (v, bi) in enumerate(children[u]):
            last = (k == len(children[u]) - 1)
            if not last:
                out.append("(")
            out.append(bond_symbol(mol.bonds[bi], u, v))
            emit(v)
            if not last:
                out.append(")")

    emit(root)
    return "".join(out)


def _assign_stereo_dirs(mol, pos):
    """Directions (+1 = up from bond.a to bond.b) for the reference single
    bonds of stereo double bonds. References are re-picked by canonical
    position and the whole assignment is seeded in canonical order, so
    equivalent inputs produce identical strings."""

    def canon_ref(end, skip):
        cands = [v for v in mol.neighbors(end) if v != skip
                 and mol.bond_between(end, v).order == SINGLE]
        if not cands:
            return None
        return min(cands, key=lambda v: pos[v])

    constraints = []
    for bond in mol.bonds:
        if bond.order != DOUBLE or bond.stereo is None:
            continue
        label, ra, rb = bond.stereo
        same = (label == "Z")
        cra = canon_ref(bond.a, bond.b)
        crb = canon_ref(bond.b, bond.a)
        if cra is None or crb is None:
            continue
        if cra != ra:
            same = not same
        if crb != rb:
            same = not same
        sb_a = mol.bond_between(bond.a, cra)
        sb_b = mol.bond_between(bond.b, crb)
        end_a, end_b = bond.a, bond.b
        if pos[end_b] < pos[end_a]:
            sb_a, sb_b, end_a, end_b = sb_b, sb_a, end_b, end_a
        key = min(pos[end_a], pos[end_b])
        constraints.append((key, sb_a, end_a, sb_b, end_b, same))
    constraints.sort(key=lambda t: t[0])
    dirs = {}

    def seed(sb):
        a_first = pos[sb.a] < pos[sb.b]
        dirs[id(sb)] = 1 if a_first else -1  # up from earlier-written end

    for _, sb_a, end_a, sb_b, end_b, same in constraints:
        if sb_a is sb_b:
            continue
        s1 = 1 if sb_a.a == end_a else -1
        s2 = 1 if sb_b.a == end_b else -1
        k1, k2 = id(sb_a), id(sb_b)
        if k1 not in dirs and k2 not in dirs:
            seed(sb_a)
        if k1 in dirs and k2 not in dirs:
            u1 = s1 * dirs[k1]
            dirs[k2] = s2 * (u1 if same else -u1)
        elif k2 in dirs and k1 not in dirs:
            u2 = s2 * dirs[k2]
            dirs[k1] = s1 * (u2 if same else -u2)
        else:
            u1, u2 = s1 * dirs[k1], s2 * dirs[k2]
            if (u1 == u2) != same:
                mol.warnings.append("conflicting stereo directions dropped")
    return dirs


def subgraph_mol(mol, atom_ids):
    """Induced subgraph with severed valence capped by hydrogens. Aromatic
    rings must be kept whole by the caller. Chirality is dropped on atoms
    that lost a neighbor; double-bond stereo is dropped if a reference
    neighbor was cut."""
    ids = sorted(set(atom_ids))
    idset = set(ids)
    sub = Mol()
    sub.source = mol.source
    remap = {}
    for i in ids:
        old = mol.atoms[i]
        a = Atom(old.symbol, old.aromatic, old.bracket)
        a.charge = old.charge
        remap[i] = sub.add_atom(a)
    cut_h = {i: 0 for i in ids}
    lost = {i: False for i in ids}
    sub_bond_src = []
    for bond in mol.bonds:
        ina, inb = bond.a in idset, bond.b in idset
        if ina and inb:
            bi = sub.add_bond(remap[bond.a], remap[bond.b], bond.order)
            sub.bonds[bi].kek_order = bond.kek_order
            sub_bond_src.append(bond)
        elif ina or inb:
            keep = bond.a if ina else bond.b
            cut_h[keep] += bond.kek_order
            lost[keep] = True
    for i in ids:
        old = mol.atoms[i]
        a = sub.atoms[remap[i]]
        a.explicit_h = old.total_h + cut_h[i]
        a.implicit_h = 0
        if old.chiral and not lost[i]:
            a.chiral = old.chiral
            a.chiral_nbrs = [remap[x] if x >= 0 else -1
                             for x in old.chiral_nbrs]
    perceive_rings(sub)
    for atom in sub.atoms:
        if atom.aromatic and not atom.in_ring:
            raise ChemError("AromaticityError",
                            "subgraph broke an aromatic ring")
    for bi, src in enumerate(sub_bond_src):
        if src.stereo is not None and src.order == DOUBLE:
            label, ra, rb = src.stereo
            if ra in idset and rb in idset:
                sub.bonds[bi].stereo = (label, remap[ra], remap[rb])
    return sub


def mols_isomorphic(m1, m2):
    """Attributed graph isomorphism (element, aromatic, charge, total H,
    bond orders). Backtracking with signature pruning; corpus molecules
    are small enough for exact search."""
    if len(m1.atoms) != len(m2.atoms) or len(m1.bonds) != len(m2.bonds):
        return False

    def sig(m, i):
        a = m.atoms[i]
        return (a.symbol, a.aromatic, a.charge, a.total_h, m.degree(i))

    from collections import Counter
    if Counter(sig(m1, i) for i in range(len(m1.atoms))) != \
       Counter(sig(m2, i) for i in range(len(m2.atoms))):
        return False
    n = len(m1.atoms)
    mapping = [-1] * n
    used = [False] * n
    # order atoms so each next atom touches the mapped part when possible
    order = []
    seen = [False] * n
    for start in sorted(range(n), key=lambda i: -m1.degree(i)):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        while stack:
            u = stack.pop()
            order.append(u)
            for v in sorted(m1.neighbors(u)):
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)

    def feasible(i, j):
        if sig(m1, i) != sig(m2, j):
            return False
        for bi in m1.nbrs[i]:
            v = m1.bonds[bi].other(i)
            if mapping[v] >= 0:
                ob = m2.bond_between(j, mapping[v])
                if ob is None or ob.order != m1.bonds[bi].order:
                    return False
        return True

    def rec(k):
        if k == n:
            return True
        i = order[k]
        for j in range(n):
            if used[j]:
                continue
            if feasible(i, j):
                mapping[i] = j
                used[j] = True
                if rec(k + 1):
                    return True
                mapping[i] = -1
                used[j] = False
        return False

    return rec(0)
