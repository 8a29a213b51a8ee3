"""BRICS retrosynthetic bond finding and single-pass fragmentation.

Sixteen chemical environments L1..L16. L2 (the planar amide-type nitrogen
of the original rule set) is subsumed by the general amine definition L5,
so it owns no compatibility pairs; it is still registered to keep the rule
inventory complete. L7 cleaves acyclic C=C double bonds; every other pair
cleaves acyclic single bonds.
"""

from .smarts import Matcher
from .smiles import SINGLE, DOUBLE

ENVIRONS = {
    "L1": "[C;D3]([#0,#6,#7,#8])(=O)",
    "L2": "[N;!R;!D1;$(N-C=O)]",
    "L3": "[O;D2]-;!@[#0,#6]",
    "L4": "[C;!D1;!$(C=*)]-;!@[#6]",
    "L5": "[N;!D1;!$(N=*);!$(N-[!#6;!#16;!#0;!#1]);!$([N;R]@[C;R]=O)]",
    "L6": "[C;D3;!R](=O)-;!@[#0,#6,#7,#8]",
    "L7": "[C;D2,D3]-[#6]",
    "L8": "[C;!R;!D1;!$(C!-*)]",
    "L9": "[n;+0;$(n(:[c,n,o,s]):[c,n,o,s])]",
    "L10": "[N;R;$(N(@C(=O))@[C,N,O,S])]",
    "L11": "[S;D2](-;!@[#0,#6])",
    "L12": "[S;D4]([#6,#0])(=O)(=O)",
    "L13": "[C;$(C(-;@[C,N,O,S])-;@[N,O,S])]",
    "L14": "[c;$(c(:[c,n,o,s]):[n,o,s])]",
    "L15": "[C;$(C(-;@C)-;@C)]",
    "L16": "[c;$(c(:c):c)]",
}

# compatibility pairs in priority order; a bond matched by several pairs is
# recorded once with the first match
COMPAT = [
    (1, 3, SINGLE), (1, 5, SINGLE), (1, 10, SINGLE),
    (3, 4, SINGLE), (3, 13, SINGLE), (3, 14, SINGLE), (3, 15, SINGLE),
    (3, 16, SINGLE),
    (4, 5, SINGLE), (4, 11, SINGLE),
    (5, 12, SINGLE), (5, 13, SINGLE), (5, 15, SINGLE),
    (6, 13, SINGLE), (6, 14, SINGLE), (6, 15, SINGLE), (6, 16, SINGLE),
    (7, 7, DOUBLE),
    (8, 9, SINGLE), (8, 10, SINGLE), (8, 13, SINGLE), (8, 14, SINGLE),
    (8, 15, SINGLE), (8, 16, SINGLE),
    (9, 13, SINGLE), (9, 14, SINGLE), (9, 15, SINGLE), (9, 16, SINGLE),
    (10, 13, SINGLE), (10, 14, SINGLE), (10, 15, SINGLE), (10, 16, SINGLE),
    (11, 13, SINGLE), (11, 14, SINGLE), (11, 15, SINGLE), (11, 16, SINGLE),
    (13, 14, SINGLE), (13, 15, SINGLE), (13, 16, SINGLE),
    (14, 14, SINGLE), (14, 15, SINGLE), (14, 16, SINGLE),
    (15, 16, SINGLE),
    (16, 16, SINGLE),
]

_matcher = Matcher()


def _env_match(mol, atom_idx, label):
    return _matcher.match_rooted(mol, atom_idx, ENVIRONS[label])


def find_brics_bonds(mol):
    """[( (a, b), (li, lj) )] where atom a matches Lli and b matches Llj;
    sorted by (min, max) atom index. Each bond appears at most once, tagged
    with the first matching pair in COMPAT order."""
    done = set()
    found = []
    for li, lj, btype in COMPAT:
        la, lb = f"L{li}", f"L{lj}"
        for bond in mol.bonds:
            if bond.in_ring or bond.order != btype:
                continue
            key = (min(bond.a, bond.b), max(bond.a, bond.b))
            if key in done:
                continue
            if _env_match(mol, bond.a, la) and _env_match(mol, bond.b, lb):
                done.add(key)
                found.append(((bond.a, bond.b), (li, lj)))
            elif _env_match(mol, bond.b, la) and _env_match(mol, bond.a, lb):
                done.add(key)
                found.append(((bond.b, bond.a), (li, lj)))
    found.sort(key=lambda t: (min(t[0]), max(t[0])))
    return found


def fragment_atoms(mol):
    """Cut every BRICS bond simultaneously; fragments are the connected
    components, each a sorted atom-id list, ordered by smallest member."""
    cuts = find_brics_bonds(mol)
    cut_keys = {(min(a, b), max(a, b)) for (a, b), _ in cuts}
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
            for bi in mol.nbrs[u]:
                bond = mol.bonds[bi]
                v = bond.other(u)
                if (min(u, v), max(u, v)) in cut_keys:
                    continue
                if comp[v] < 0:
                    comp[v] = c
                    stack.append(v)
        c += 1
    frags = [[] for _ in range(c)]
    for i in range(n):
        frags[comp[i]].append(i)
    frags.sort(key=lambda f: f[0])
    return frags, cuts
