"""Generate the bundled desk-scale datasets.

The structures are real (or realistically enumerated) molecules; the
labels are synthetic but structure-derived so models must learn from the
graph: log-solubility via the Delaney-style estimator over computed
descriptors plus deterministic noise, and a binary lipophilicity-driven
activity label with deterministic flips.

Usage: python3 -m pychem.make_datasets <outdir>
"""

import csv
import hashlib
import random
import sys

from .canon import canonical_smiles
from .corpus import NAMED, TEMPLATES, RGROUPS, ACID_PARTS, TAIL_PARTS
from .descriptors import (aromatic_proportion, hba, hbd, logp_est,
                          mol_weight, rotatable_bonds)
from .smiles import parse_smiles, ChemError


def _seed_for(s):
    return int.from_bytes(hashlib.sha256(s.encode()).digest()[:8], "big")


def build_corpus():
    raw = list(NAMED)
    rng = random.Random(20240611)
    for t in TEMPLATES:
        picks = rng.sample(RGROUPS, 16)
        for r in picks:
            raw.append(t.replace("{R}", r))
    for a in ACID_PARTS:
        for b in TAIL_PARTS:
            raw.append(f"{a}C(=O)O{b}")   # esters
    rng2 = random.Random(777)
    for a in rng2.sample(ACID_PARTS, 6):
        for b in rng2.sample(TAIL_PARTS, 6):
            raw.append(f"{a}C(=O)N{b}")   # secondary amides
            raw.append(f"{a}O{b}")        # ethers
    seen = set()
    out = []
    bad = 0
    for s in raw:
        try:
            m = parse_smiles(s)
            c = canonical_smiles(m)
            m2 = parse_smiles(c)
            if canonical_smiles(m2) != c:
                raise ChemError("SyntaxError", "unstable canonical")
        except ChemError as e:
            print(f"corpus: dropped {s!r}: {e}", file=sys.stderr)
            bad += 1
            continue
        if c in seen:
            continue
        seen.add(c)
        out.append(s)
    if bad:
        print(f"corpus: {bad} entries dropped", file=sys.stderr)
    return out


def log_solubility(mol, smiles):
    logp = logp_est(mol)
    mw = mol_weight(mol)
    rb = rotatable_bonds(mol)
    ap = aromatic_proportion(mol)
    rng = random.Random(_seed_for("sol:" + smiles))
    return (0.16 - 0.63 * logp - 0.0062 * mw + 0.066 * rb - 0.74 * ap
            + rng.gauss(0.0, 0.35))


def activity_score(mol):
    return (0.58 * logp_est(mol) + 0.22 * hba(mol) - 0.47 * hbd(mol)
            + 0.011 * mol_weight(mol)
            - 0.95 * aromatic_proportion(mol))


def main(outdir):
    corpus = build_corpus()
    print(f"corpus size: {len(corpus)}")
    rng = random.Random(90125)

    # regression set
    sol_smiles = sorted(corpus)
    rng.shuffle(sol_smiles)
    sol_smiles = sol_smiles[:1000]
    with open(f"{outdir}/solubility.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["smiles", "logS"])
        for s in sol_smiles:
            y = log_solubility(parse_smiles(s), s)
            w.writerow([s, f"{y:.4f}"])

    # classification set: median split on the activity score, then
    # deterministic 7% label flips
    cls_smiles = sorted(corpus)
    rng.shuffle(cls_smiles)
    cls_smiles = cls_smiles[:1100]
    scores = {s: activity_score(parse_smiles(s)) for s in cls_smiles}
    med = sorted(scores.values())[len(scores) // 2]
    with open(f"{outdir}/inhibition.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["smiles", "active"])
        for s in cls_smiles:
            y = 1 if scores[s] > med else 0
            if random.Random(_seed_for("flip:" + s)).random() < 0.07:
                y = 1 - y
            w.writerow([s, y])
    print("wrote solubility.csv and inhibition.csv")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data")
