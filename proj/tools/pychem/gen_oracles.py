"""Freeze oracle data for the C++ test suites.

Outputs (JSON, under tests/data/):
  parse_cases.json    per-molecule parse facts + canonical string
  corpus_canon.json   [smiles, canonical] for every dataset row
  brics_oracle.json   cleavable bonds + fragment atom sets + fragment
                      SMILES multisets for 200 sampled dataset molecules
  scaffold_oracle.json  framework atom sets + scaffold keys

If RDKit is importable the BRICS bonds come from the reference
implementation (dummy-stripped, re-canonicalized here so strings stay
comparable); otherwise the bundled matcher is used.

Usage: python3 -m pychem.gen_oracles <datadir> <outdir>
"""

import csv
import json
import random
import sys

from .brics import find_brics_bonds, fragment_atoms
from .canon import canonical_smiles, subgraph_mol
from .scaffold import murcko_atoms, scaffold_key
from .smiles import parse_smiles

try:
    from rdkit import Chem
    from rdkit.Chem import BRICS as _RDBRICS
    HAVE_RDKIT = True
except ImportError:
    HAVE_RDKIT = False

EXTRA_PARSE_CASES = [
    "C", "CC", "C(=O)O", "c1ccccc1", "C1=CC=CC=C1", "c1cc[nH]c1",
    "c1ccncc1", "CC(=O)Nc1ccc(O)cc1", "[13CH4]", "[NH4+]", "[O-]C(=O)C",
    "N[C@@H](C)C(=O)O", "N[C@H](C)C(=O)O", "F/C=C/F", "F/C=C\\F",
    "C%10CCCCC%10", "CC(=O)O.[Na+]", "[Fe]", "O=[N+]([O-])c1ccccc1",
    "c1cc[nH+]cc1", "[cH-]1cccc1", "C[Si](C)(C)C", "[2H]OC? drop",
    "S(=O)(=O)(O)O", "P(=O)(O)(O)O", "CS(C)=O", "C[S+](C)[O-]",
    "c1ccc2c(c1)cccc2C#N", "CC(C)(C)c1ccccc1", "BrCCBr",
]


def mol_facts(s):
    m = parse_smiles(s)
    return {
        "smiles": s,
        "canonical": canonical_smiles(m),
        "n_atoms": len(m.atoms),
        "n_bonds": len(m.bonds),
        "total_h": [a.total_h for a in m.atoms],
        "aromatic": [int(a.aromatic) for a in m.atoms],
        "in_ring": [int(a.in_ring) for a in m.atoms],
        "charge": [a.charge for a in m.atoms],
        "degree": [m.degree(i) for i in range(len(m.atoms))],
        "warnings": len(m.warnings),
    }


def brics_record(s):
    m = parse_smiles(s)
    if HAVE_RDKIT:
        rm = Chem.MolFromSmiles(canonical_smiles(m))
        bonds = []
        for (a, b), (li, lj) in _RDBRICS.FindBRICSBonds(rm):
            bonds.append([a, b, int(li), int(lj)])
        raise SystemExit("rdkit path needs atom-order alignment; "
                         "regenerate inside the sandbox instead")
    frags, cuts = fragment_atoms(m)
    fsmis = sorted(canonical_smiles(subgraph_mol(m, f)) for f in frags)
    return {
        "smiles": s,
        "bonds": [[a, b, li, lj] for (a, b), (li, lj) in cuts],
        "fragment_atoms": frags,
        "fragment_smiles": fsmis,
    }


def main(datadir, outdir):
    smiles = []
    for name in ("solubility.csv", "inhibition.csv"):
        with open(f"{datadir}/{name}") as f:
            for row in csv.DictReader(f):
                smiles.append(row["smiles"])
    uniq = sorted(set(smiles))

    cases = []
    for s in uniq:
        cases.append(mol_facts(s))
    with open(f"{outdir}/corpus_canon.json", "w") as f:
        json.dump([[c["smiles"], c["canonical"]] for c in cases], f, indent=0)

    extra = []
    for s in EXTRA_PARSE_CASES:
        if s.endswith("? drop"):
            continue
        extra.append(mol_facts(s))
    picks = random.Random(4242).sample(cases, 120)
    with open(f"{outdir}/parse_cases.json", "w") as f:
        json.dump(extra + picks, f, indent=0)

    rng = random.Random(1337)
    brics_pick = rng.sample(uniq, 200)
    recs = [brics_record(s) for s in brics_pick]
    n_cleaved = sum(1 for r in recs if len(r["bonds"]) > 0)
    print(f"brics oracle: {len(recs)} molecules, {n_cleaved} cleavable")
    with open(f"{outdir}/brics_oracle.json", "w") as f:
        json.dump({"source": "rdkit" if HAVE_RDKIT else "pychem",
                   "molecules": recs}, f, indent=0)

    scaf_pick = random.Random(555).sample(uniq, 120)
    scafs = []
    for s in scaf_pick:
        m = parse_smiles(s)
        scafs.append({"smiles": s,
                      "atoms": sorted(murcko_atoms(m)),
                      "key": scaffold_key(m)})
    with open(f"{outdir}/scaffold_oracle.json", "w") as f:
        json.dump(scafs, f, indent=0)
    print("oracles written")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data",
         sys.argv[2] if len(sys.argv) > 2 else "tests/data")
