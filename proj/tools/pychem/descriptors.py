"""Structure-derived descriptors used by the dataset label generators."""

from .smiles import MASSES, SINGLE, DOUBLE, TRIPLE

HALOGENS = {"F", "Cl", "Br", "I"}


def _has_double_o(mol, i):
    for bi in mol.nbrs[i]:
        b = mol.bonds[bi]
        if b.order == DOUBLE and mol.atoms[b.other(i)].symbol == "O":
            return True
    return False


def mol_weight(mol):
    w = 0.0
    for a in mol.atoms:
        w += MASSES.get(a.symbol, 50.0)
        w += 1.008 * a.total_h
    return w


def atom_logp(mol, i):
    """Additive contribution, anchored to measured logP of small probes
    (hexadecane, benzene, ethanol, ether, acetic acid, aniline, pyridine)."""
    a = mol.atoms[i]
    s = a.symbol
    if a.charge != 0:
        if s == "N" and _has_double_o(mol, i):
            return -0.10  # nitro nitrogen
        return -1.50
    if s == "C":
        if a.aromatic:
            return 0.35
        if _has_double_o(mol, i):
            return -0.10
        return 0.45
    if s == "N":
        if a.aromatic:
            return -1.15
        for v in mol.neighbors(i):
            if mol.atoms[v].symbol == "C" and _has_double_o(mol, v):
                return -1.40  # amide nitrogen
        return -1.25
    if s == "O":
        if a.aromatic:
            return -0.10
        carbonyl_nbr = any(mol.atoms[v].symbol == "C" and _has_double_o(mol, v)
                           for v in mol.neighbors(i))
        if mol.degree(i) == 1 and not a.total_h:
            return -0.25  # =O
        if a.total_h > 0:
            return -0.30 if carbonyl_nbr else -1.20
        return -0.25 if carbonyl_nbr else -0.90
    if s == "S":
        if a.aromatic:
            return 0.40
        if _has_double_o(mol, i):
            return -1.30
        return 0.20
    return {"F": 0.12, "Cl": 0.68, "Br": 0.88, "I": 1.12,
            "P": -0.50, "B": 0.10}.get(s, 0.0)


def logp_est(mol):
    return sum(atom_logp(mol, i) for i in range(len(mol.atoms)))


def rotatable_bonds(mol):
    n = 0
    triple = set()
    for b in mol.bonds:
        if b.order == TRIPLE:
            triple.add(b.a)
            triple.add(b.b)
    for b in mol.bonds:
        if b.order != SINGLE or b.in_ring:
            continue
        if mol.degree(b.a) < 2 or mol.degree(b.b) < 2:
            continue
        if b.a in triple or b.b in triple:
            continue
        n += 1
    return n


def aromatic_proportion(mol):
    na = sum(1 for a in mol.atoms if a.aromatic)
    return na / len(mol.atoms)


def hbd(mol):
    return sum(1 for a in mol.atoms
               if a.symbol in ("N", "O") and a.total_h > 0)


def hba(mol):
    return sum(1 for a in mol.atoms if a.symbol in ("N", "O"))


def halogen_count(mol):
    return sum(1 for a in mol.atoms if a.symbol in HALOGENS)
