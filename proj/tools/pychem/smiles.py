"""SMILES parser: organic subset + bracket atoms, ring closures (incl. %nn),
branches, bond symbols -=#:/\\, dot-disconnection (largest component kept).

Aromatic input is trusted after validation (ring membership, pi-electron
count on isolated 5/6-rings, kekulizability). Kekule-written 6-rings of
alternating C/N are promoted to aromatic. Implicit hydrogens follow default
valences over kekulized bond orders.
"""

import re

ORGANIC = {"B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"}
AROMATIC_OK = {"B", "C", "N", "O", "P", "S", "Se", "As"}

ELEMENTS = {
    "H": 1, "He": 2, "Li": 3, "Be": 4, "B": 5, "C": 6, "N": 7, "O": 8,
    "F": 9, "Ne": 10, "Na": 11, "Mg": 12, "Al": 13, "Si": 14, "P": 15,
    "S": 16, "Cl": 17, "Ar": 18, "K": 19, "Ca": 20, "Sc": 21, "Ti": 22,
    "V": 23, "Cr": 24, "Mn": 25, "Fe": 26, "Co": 27, "Ni": 28, "Cu": 29,
    "Zn": 30, "Ga": 31, "Ge": 32, "As": 33, "Se": 34, "Br": 35, "Kr": 36,
    "Rb": 37, "Sr": 38, "Y": 39, "Zr": 40, "Nb": 41, "Mo": 42, "Tc": 43,
    "Ru": 44, "Rh": 45, "Pd": 46, "Ag": 47, "Cd": 48, "In": 49, "Sn": 50,
    "Sb": 51, "Te": 52, "I": 53, "Xe": 54, "Cs": 55, "Ba": 56, "La": 57,
    "Gd": 64, "Pt": 78, "Au": 79, "Hg": 80, "Tl": 81, "Pb": 82, "Bi": 83,
    "At": 85, "Ra": 88, "U": 92,
}

MASSES = {
    "H": 1.008, "B": 10.81, "C": 12.011, "N": 14.007, "O": 15.999,
    "F": 18.998, "Si": 28.085, "P": 30.974, "S": 32.06, "Cl": 35.45,
    "As": 74.922, "Se": 78.971, "Br": 79.904, "Te": 127.60, "I": 126.904,
    "Na": 22.990, "K": 39.098, "Li": 6.94, "Ca": 40.078, "Mg": 24.305,
}

# default valence alternatives for neutral atoms
VALENCES = {
    "B": [3], "C": [4], "N": [3, 5], "O": [2], "P": [3, 5], "S": [2, 4, 6],
    "F": [1], "Cl": [1], "Br": [1], "I": [1],
}

SINGLE, DOUBLE, TRIPLE, AROMATIC = 1, 2, 3, 4


class ChemError(ValueError):
    def __init__(self, kind, msg):
        super().__init__(f"{kind}: {msg}")
        self.kind = kind


def allowed_valences(symbol, charge):
    base = VALENCES.get(symbol)
    if base is None:
        return None  # unconstrained (metals etc.)
    if charge == 0:
        return base
    if symbol in ("N", "P"):
        return [max(0, base[0] + charge)]
    if symbol in ("O", "S", "Se", "Te"):
        return [max(0, v + charge) for v in base] if charge > 0 else [max(0, base[0] + charge)]
    if symbol == "C":
        return [4 - abs(charge)]
    if symbol == "B":
        return [3 - charge]
    return [max(0, base[0])]


class Atom:
    __slots__ = ("symbol", "aromatic", "charge", "explicit_h", "implicit_h",
                 "isotope", "chiral", "chiral_nbrs", "bracket", "idx",
                 "in_ring", "radicals")

    def __init__(self, symbol, aromatic=False, bracket=False):
        self.symbol = symbol
        self.aromatic = aromatic
        self.bracket = bracket
        self.charge = 0
        self.explicit_h = 0
        self.implicit_h = 0
        self.isotope = 0
        self.chiral = 0          # 0 none, 1 @ (ccw), 2 @@ (cw)
        self.chiral_nbrs = []    # neighbor ids in SMILES encounter order; -1 = bracket H
        self.idx = -1
        self.in_ring = False
        self.radicals = 0

    @property
    def total_h(self):
        return self.explicit_h + self.implicit_h


class Bond:
    __slots__ = ("a", "b", "order", "kek_order", "in_ring", "direction",
                 "stereo")

    def __init__(self, a, b, order):
        self.a = a
        self.b = b
        self.order = order
        self.kek_order = order if order != AROMATIC else SINGLE
        self.in_ring = False
        self.direction = 0   # +1: "up" from a to b ('/'), -1: down ('\')
        self.stereo = None   # ("E"|"Z", ref_a_nbr, ref_b_nbr) on double bonds

    def other(self, i):
        return self.b if self.a == i else self.a


class Mol:
    def __init__(self):
        self.atoms = []
        self.bonds = []
        self.nbrs = []       # atom idx -> list of bond indices
        self.rings = []      # list of atom-index tuples (shortest cycles)
        self.source = ""
        self.warnings = []

    def add_atom(self, atom):
        atom.idx = len(self.atoms)
        self.atoms.append(atom)
        self.nbrs.append([])
        return atom.idx

    def add_bond(self, a, b, order):
        if a == b:
            raise ChemError("SyntaxError", "self bond")
        for bi in self.nbrs[a]:
            if self.bonds[bi].other(a) == b:
                raise ChemError("SyntaxError", "duplicate bond")
        bond = Bond(a, b, order)
        self.bonds.append(bond)
        self.nbrs[a].append(len(self.bonds) - 1)
        self.nbrs[b].append(len(self.bonds) - 1)
        return len(self.bonds) - 1

    def bond_between(self, a, b):
        for bi in self.nbrs[a]:
            if self.bonds[bi].other(a) == b:
                return self.bonds[bi]
        return None

    def degree(self, i):
        return len(self.nbrs[i])

    def neighbors(self, i):
        return [self.bonds[bi].other(i) for bi in self.nbrs[i]]


_BRACKET_RE = re.compile(
    r"^(?P<iso>\d+)?(?P<sym>[A-Z][a-z]?|b|c|n|o|p|s|se|as)"
    r"(?P<chi>@@|@)?(?P<h>H\d*)?(?P<chg>\+\d+|-\d+|\++|-+)?(?::\d+)?$"
)


def _parse_bracket(body):
    m = _BRACKET_RE.match(body)
    if not m:
        raise ChemError("SyntaxError", f"bad bracket atom [{body}]")
    sym = m.group("sym")
    aromatic = sym[0].islower()
    symbol = sym[0].upper() + sym[1:] if aromatic else sym
    if symbol not in ELEMENTS:
        raise ChemError("SyntaxError", f"unknown element {symbol}")
    if aromatic and symbol not in AROMATIC_OK:
        raise ChemError("SyntaxError", f"element {symbol} cannot be aromatic")
    atom = Atom(symbol, aromatic=aromatic, bracket=True)
    atom.isotope = int(m.group("iso")) if m.group("iso") else 0
    if m.group("chi"):
        atom.chiral = 2 if m.group("chi") == "@@" else 1
    h = m.group("h")
    if h:
        atom.explicit_h = int(h[1:]) if len(h) > 1 else 1
    chg = m.group("chg")
    if chg:
        if chg[0] == "+" and chg.strip("+") == "":
            atom.charge = len(chg)
        elif chg[0] == "-" and chg.strip("-") == "":
            atom.charge = -len(chg)
        else:
            atom.charge = int(chg)
    return atom


def _tokenize_build(s):
    mol = Mol()
    mol.source = s
    prev = -1
    pending = None          # (order, direction)
    stack = []
    ring_map = {}           # digit -> (atom, pending, position)
    i, n = 0, len(s)

    def attach(cur):
        nonlocal prev, pending
        if prev >= 0:
            order, direction = pending if pending else (None, 0)
            a, b = mol.atoms[prev], mol.atoms[cur]
            if order is None:
                order = AROMATIC if (a.aromatic and b.aromatic) else SINGLE
            bi = mol.add_bond(prev, cur, order)
            mol.bonds[bi].direction = direction
            a.chiral_nbrs.append(cur)
            b.chiral_nbrs.append(prev)
        pending = None
        prev = cur

    while i < n:
        ch = s[i]
        if ch == "[":
            j = s.find("]", i)
            if j < 0:
                raise ChemError("SyntaxError", "unterminated bracket")
            atom = _parse_bracket(s[i + 1:j])
            cur = mol.add_atom(atom)
            attach(cur)
            if atom.explicit_h:
                atom.chiral_nbrs.append(-1)  # bracket H slot
            i = j + 1
        elif ch.isalpha() or ch == "*":
            sym = None
            if s[i:i + 2] in ("Cl", "Br"):
                sym = s[i:i + 2]
                i += 2
            elif ch in "BCNOPSFI":
                sym = ch
                i += 1
            elif ch in "bcnops":
                sym = ch.upper()
                i += 1
                atom = Atom(sym, aromatic=True)
                cur = mol.add_atom(atom)
                attach(cur)
                continue
            else:
                raise ChemError("SyntaxError", f"bad token '{ch}' at {i}")
            atom = Atom(sym)
            cur = mol.add_atom(atom)
            attach(cur)
        elif ch.isdigit() or ch == "%":
            if prev < 0:
                raise ChemError("SyntaxError", "ring closure before any atom")
            if ch == "%":
                if i + 2 >= n or not s[i + 1:i + 3].isdigit():
                    raise ChemError("SyntaxError", "bad %nn ring closure")
                num = int(s[i + 1:i + 3])
                i += 3
            else:
                num = int(ch)
                i += 1
            if num in ring_map:
                other, opending = ring_map.pop(num)
                if other == prev:
                    raise ChemError("SyntaxError", "ring closure to self")
                o1 = opending[0] if opending else None
                o2 = pending[0] if pending else None
                if o1 is not None and o2 is not None and o1 != o2:
                    raise ChemError("SyntaxError", "ring closure bond mismatch")
                order = o1 if o1 is not None else o2
                a, b = mol.atoms[other], mol.atoms[prev]
                if order is None:
                    order = AROMATIC if (a.aromatic and b.aromatic) else SINGLE
                bi = mol.add_bond(other, prev, order)
                d1 = opending[1] if opending else 0
                d2 = pending[1] if pending else 0
                if d1 and d2 and d1 != -d2:
                    raise ChemError("SyntaxError", "ring closure direction mismatch")
                mol.bonds[bi].direction = d1 if d1 else -d2
                # the closure occupies the digit's position in each atom's
                # neighbor order: the reserved slot on the opening side
                for k, v in enumerate(a.chiral_nbrs):
                    if v == -2 - num:
                        a.chiral_nbrs[k] = prev
                        break
                b.chiral_nbrs.append(other)
                pending = None
            else:
                ring_map[num] = (prev, pending)
                mol.atoms[prev].chiral_nbrs.append(-2 - num)  # reserve slot
                pending = None
        elif ch in "-=#:":
            if pending is not None:
                raise ChemError("SyntaxError", "two bond symbols in a row")
            pending = ({"-": SINGLE, "=": DOUBLE, "#": TRIPLE, ":": AROMATIC}[ch], 0)
            i += 1
        elif ch == "/":
            pending = (SINGLE, 1)
            i += 1
        elif ch == "\\":
            pending = (SINGLE, -1)
            i += 1
        elif ch == "(":
            if prev < 0:
                raise ChemError("SyntaxError", "branch before any atom")
            stack.append(prev)
            i += 1
        elif ch == ")":
            if not stack:
                raise ChemError("SyntaxError", "unmatched ')'")
            prev = stack.pop()
            i += 1
        elif ch == ".":
            if pending is not None or stack:
                raise ChemError("SyntaxError", "misplaced '.'")
            prev = -1
            i += 1
        elif ch.isspace():
            break
        else:
            raise ChemError("SyntaxError", f"bad character '{ch}' at {i}")

    if stack:
        raise ChemError("SyntaxError", "unmatched '('")
    if ring_map:
        raise ChemError("UnclosedRing",
                        f"dangling ring closure {sorted(ring_map)}")
    if not mol.atoms:
        raise ChemError("SyntaxError", "empty SMILES")
    return mol


def _largest_component(mol):
    n = len(mol.atoms)
    comp = [-1] * n
    c = 0
    for start in range(n):
        if comp[start] >= 0:
            continue
        stack = [start]
        comp[start] = c
        while stack:
            u = stack.pop()
            for v in mol.neighbors(u):
                if comp[v] < 0:
                    comp[v] = c
                    stack.append(v)
        c += 1
    if c == 1:
        return mol
    sizes = [0] * c
    for x in comp:
        sizes[x] += 1
    keep = max(range(c), key=lambda k: (sizes[k], -min(i for i in range(n) if comp[i] == k)))
    mol.warnings.append(f"kept largest of {c} components ({sizes[keep]} atoms)")
    return extract_atoms(mol, [i for i in range(n) if comp[i] == keep],
                         copy_warnings=mol.warnings)


def extract_atoms(mol, atom_ids, copy_warnings=None):
    """Induced subgraph on atom_ids (parse-time helper; no H fixing)."""
    sub = Mol()
    sub.source = mol.source
    if copy_warnings:
        sub.warnings = copy_warnings
    remap = {}
    for i in atom_ids:
        old = mol.atoms[i]
        a = Atom(old.symbol, old.aromatic, old.bracket)
        a.charge, a.explicit_h, a.isotope = old.charge, old.explicit_h, old.isotope
        a.chiral = old.chiral
        remap[i] = sub.add_atom(a)
    for bond in mol.bonds:
        if bond.a in remap and bond.b in remap:
            bi = sub.add_bond(remap[bond.a], remap[bond.b], bond.order)
            sub.bonds[bi].kek_order = bond.kek_order
            sub.bonds[bi].direction = bond.direction
    for i in atom_ids:
        sub.atoms[remap[i]].chiral_nbrs = [
            remap.get(x, -1) if x >= 0 else x for x in mol.atoms[i].chiral_nbrs]
    return sub


def perceive_rings(mol):
    n = len(mol.atoms)
    # bridges via iterative DFS lowlink
    disc = [-1] * n
    low = [0] * n
    bridge = [False] * len(mol.bonds)
    timer = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        stack = [(root, -1, iter(mol.nbrs[root]))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            u, pe, it = stack[-1]
            advanced = False
            for bi in it:
                if bi == pe:
                    continue
                v = mol.bonds[bi].other(u)
                if disc[v] < 0:
                    disc[v] = low[v] = timer
                    timer += 1
                    stack.append((v, bi, iter(mol.nbrs[v])))
                    advanced = True
                    break
                else:
                    low[u] = min(low[u], disc[v])
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[u])
                    if low[u] > disc[p]:
                        bridge[pe] = True
        # done component
    for bi, bond in enumerate(mol.bonds):
        bond.in_ring = not bridge[bi]
    # isolated bonds in trees are bridges; mark atoms
    for atom in mol.atoms:
        atom.in_ring = False
    for bond in mol.bonds:
        if bond.in_ring:
            mol.atoms[bond.a].in_ring = True
            mol.atoms[bond.b].in_ring = True
    # shortest cycle through each non-tree edge -> ring list
    rings = set()
    seen_edges = set()
    parent = [-1] * n
    order = []
    visited = [False] * n
    tree_edges = set()
    for root in range(n):
        if visited[root]:
            continue
        visited[root] = True
        queue = [root]
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            for bi in mol.nbrs[u]:
                v = mol.bonds[bi].other(u)
                if not visited[v]:
                    visited[v] = True
                    parent[v] = u
                    tree_edges.add(bi)
                    queue.append(v)
    for bi, bond in enumerate(mol.bonds):
        if bi in tree_edges or not bond.in_ring:
            continue
        ring = _shortest_cycle(mol, bond)
        if ring:
            rings.add(tuple(ring))
    mol.rings = sorted(rings, key=lambda r: (len(r), r))


def _shortest_cycle(mol, bond):
    # BFS from bond.a to bond.b avoiding the bond itself
    n = len(mol.atoms)
    prev = [-1] * n
    prev[bond.a] = bond.a
    queue = [bond.a]
    qi = 0
    while qi < len(queue):
        u = queue[qi]
        qi += 1
        if u == bond.b:
            break
        for bi in mol.nbrs[u]:
            if mol.bonds[bi] is bond:
                continue
            v = mol.bonds[bi].other(u)
            if prev[v] < 0:
                prev[v] = u
                queue.append(v)
    if prev[bond.b] < 0:
        return None
    path = [bond.b]
    while path[-1] != bond.a:
        path.append(prev[path[-1]])
    lo = min(range(len(path)), key=lambda k: path[k])
    path = path[lo:] + path[:lo]
    if len(path) > 2 and path[1] > path[-1]:
        path = [path[0]] + path[1:][::-1]
    return path


def _promote_kekule_rings(mol):
    # 6-rings of C/N with alternating single/double -> aromatic
    for ring in mol.rings:
        if len(ring) != 6:
            continue
        atoms = [mol.atoms[i] for i in ring]
        if any(a.aromatic or a.symbol not in ("C", "N") for a in atoms):
            continue
        orders = []
        ok = True
        for k in range(6):
            bond = mol.bond_between(ring[k], ring[(k + 1) % 6])
            if bond is None or bond.order not in (SINGLE, DOUBLE):
                ok = False
                break
            orders.append(bond.order)
        if not ok:
            continue
        alt = all(orders[k] != orders[(k + 1) % 6] for k in range(6))
        if not alt:
            continue
        for a in atoms:
            a.aromatic = True
        for k in range(6):
            bond = mol.bond_between(ring[k], ring[(k + 1) % 6])
            bond.kek_order = bond.order
            bond.order = AROMATIC


def _demote_nonring_aromatic_bonds(mol):
    for bond in mol.bonds:
        if bond.order == AROMATIC and not bond.in_ring:
            a, b = mol.atoms[bond.a], mol.atoms[bond.b]
            if a.aromatic and b.aromatic:
                bond.order = SINGLE
                bond.kek_order = SINGLE
            else:
                raise ChemError("AromaticityError",
                                "aromatic bond outside ring")


def _needs_pi(mol, atom):
    """Does this aromatic atom need exactly one double bond in the kekule
    assignment? Returns True/False; raises if atom cannot be aromatic."""
    exo_double = any(
        mol.bonds[bi].order in (DOUBLE, TRIPLE)
        for bi in mol.nbrs[atom.idx])
    conn = mol.degree(atom.idx) + atom.explicit_h
    sym, q = atom.symbol, atom.charge
    if sym == "C":
        if exo_double or q != 0:
            return False
        return True
    if sym in ("N", "P", "As"):
        if q == 0:
            if atom.explicit_h > 0 or conn >= 3:
                return False
            return True
        if q == 1:
            return not exo_double
        return False  # anions contribute the lone pair
    if sym in ("O", "S", "Se", "Te"):
        return q == 1
    if sym == "B":
        return False
    raise ChemError("AromaticityError", f"aromatic {sym} unsupported")


def _kekulize(mol):
    """Assign kek_order for aromatic bonds: find a perfect matching over the
    atoms that need one double bond. Exact backtracking; aromatic systems in
    molecules are small, and this handles odd-cycle systems (azulene) that a
    bipartite matcher would miss."""
    arom_bonds = [bi for bi, b in enumerate(mol.bonds) if b.order == AROMATIC]
    if not arom_bonds:
        return
    need = {}
    for bi in arom_bonds:
        for i in (mol.bonds[bi].a, mol.bonds[bi].b):
            if i not in need:
                need[i] = _needs_pi(mol, mol.atoms[i])
    for bi in arom_bonds:
        mol.bonds[bi].kek_order = SINGLE
    todo = sorted(i for i, req in need.items() if req)
    adj = {i: [] for i in need}
    for bi in arom_bonds:
        b = mol.bonds[bi]
        adj[b.a].append((b.b, bi))
        adj[b.b].append((b.a, bi))
    pos = {u: k for k, u in enumerate(todo)}
    mate = {u: -1 for u in todo}
    chosen = []

    def solve(k):
        while k < len(todo) and mate[todo[k]] >= 0:
            k += 1
        if k == len(todo):
            return True
        u = todo[k]
        for v, bi in adj[u]:
            if v not in pos or mate[v] >= 0:
                continue
            mate[u], mate[v] = v, u
            chosen.append(bi)
            if solve(k + 1):
                return True
            chosen.pop()
            mate[u], mate[v] = -1, -1
        return False

    if not solve(0):
        raise ChemError("AromaticityError", "cannot kekulize aromatic system")
    for bi in chosen:
        mol.bonds[bi].kek_order = DOUBLE


def _electron_check(mol):
    ring_count = [0] * len(mol.atoms)
    for ring in mol.rings:
        for i in ring:
            ring_count[i] += 1
    for ring in mol.rings:
        if len(ring) not in (5, 6):
            continue
        atoms = [mol.atoms[i] for i in ring]
        if not all(a.aromatic for a in atoms):
            continue
        if any(ring_count[i] > 1 for i in ring):
            continue  # fused systems: trust kekulization
        pi = 0
        for a in atoms:
            if _needs_pi(mol, a):
                pi += 1
            else:
                exo_double = any(mol.bonds[bi].order in (DOUBLE, TRIPLE)
                                 for bi in mol.nbrs[a.idx])
                if a.symbol == "C" and exo_double:
                    pi += 0
                elif a.symbol == "C" and a.charge == 1:
                    pi += 0
                else:
                    pi += 2
        if pi != 6:
            raise ChemError("AromaticityError",
                            f"ring {ring} has {pi} pi electrons")


def _assign_hydrogens(mol):
    for atom in mol.atoms:
        bondsum = 0
        for bi in mol.nbrs[atom.idx]:
            bondsum += mol.bonds[bi].kek_order
        if atom.bracket:
            atom.implicit_h = 0
            allowed = allowed_valences(atom.symbol, atom.charge)
            if allowed is not None:
                total = bondsum + atom.explicit_h
                fit = [v for v in allowed if v >= total]
                if not fit:
                    raise ChemError(
                        "ValenceError",
                        f"atom {atom.idx} ({atom.symbol}{atom.charge:+d}) "
                        f"valence {total} exceeds {max(allowed)}")
                atom.radicals = fit[0] - total
            continue
        allowed = allowed_valences(atom.symbol, 0)
        fit = [v for v in allowed if v >= bondsum]
        if not fit:
            raise ChemError("ValenceError",
                            f"atom {atom.idx} ({atom.symbol}) bond order sum "
                            f"{bondsum} exceeds {max(allowed)}")
        atom.implicit_h = fit[0] - bondsum


def _validate_aromatic(mol):
    for atom in mol.atoms:
        if atom.aromatic and not atom.in_ring:
            raise ChemError("AromaticityError",
                            f"aromatic atom {atom.idx} not in a ring")


def _perceive_ez(mol):
    for bond in mol.bonds:
        if bond.order != DOUBLE:
            continue
        refs = []
        for end in (bond.a, bond.b):
            found = None
            for bi in mol.nbrs[end]:
                nb = mol.bonds[bi]
                if nb is bond or nb.direction == 0:
                    continue
                # direction normalized as "up from nb.a to nb.b"
                up_away = nb.direction if nb.a == end else -nb.direction
                found = (nb.other(end), up_away)
                break
            refs.append(found)
        if refs[0] is None or refs[1] is None:
            continue
        (na, ua), (nb_, ub) = refs
        # "up away from both ends" puts the references on opposite sides
        same_side = (ua == ub)
        # normalize the stored references to the lowest-index neighbor on
        # each side; swapping a reference flips the side
        ref_a = min(x for x in mol.neighbors(bond.a) if x != bond.b)
        ref_b = min(x for x in mol.neighbors(bond.b) if x != bond.a)
        if ref_a != na:
            same_side = not same_side
        if ref_b != nb_:
            same_side = not same_side
        bond.stereo = ("Z" if same_side else "E", ref_a, ref_b)


def parse_smiles(s):
    if not s or not s.strip():
        raise ChemError("SyntaxError", "empty SMILES")
    mol = _tokenize_build(s.strip())
    mol = _largest_component(mol)
    perceive_rings(mol)
    _validate_aromatic(mol)
    _promote_kekule_rings(mol)
    _demote_nonring_aromatic_bonds(mol)
    _kekulize(mol)
    _electron_check(mol)
    _assign_hydrogens(mol)
    _perceive_ez(mol)
    # drop chiral marks that have no meaning (fewer than 3 neighbors)
    for atom in mol.atoms:
        if atom.chiral and mol.degree(atom.idx) + (1 if atom.explicit_h else 0) < 3:
            atom.chiral = 0
    return mol
