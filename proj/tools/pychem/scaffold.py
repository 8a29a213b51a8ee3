"""Bemis-Murcko framework: ring systems plus connecting linkers, keeping
atoms attached to the framework by double/triple bonds (so extraction
stays kekulizable). Acyclic molecules have an empty framework."""

from .canon import canonical_smiles, subgraph_mol
from .smiles import DOUBLE, TRIPLE


def murcko_atoms(mol):
    n = len(mol.atoms)
    keep = [True] * n
    deg = [mol.degree(i) for i in range(n)]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            if keep[i] and not mol.atoms[i].in_ring and deg[i] <= 1:
                keep[i] = False
                changed = True
                for v in mol.neighbors(i):
                    if keep[v]:
                        deg[v] -= 1
    if not any(keep[i] and mol.atoms[i].in_ring for i in range(n)):
        return set()
    # re-attach atoms multiply bonded to the framework
    added = True
    while added:
        added = False
        for bond in mol.bonds:
            if bond.order not in (DOUBLE, TRIPLE):
                continue
            ka, kb = keep[bond.a], keep[bond.b]
            if ka != kb:
                keep[bond.a if not ka else bond.b] = True
                added = True
    return {i for i in range(n) if keep[i]}


def scaffold_key(mol):
    atoms = murcko_atoms(mol)
    if not atoms:
        return ""
    return canonical_smiles(subgraph_mol(mol, atoms))
