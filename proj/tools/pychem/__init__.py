"""Self-contained cheminformatics helpers used for test-oracle generation.

Pure stdlib. Implements a SMILES dialect (organic subset + brackets), ring
and aromaticity perception, kekulization, canonical output, a SMARTS subset
matcher, BRICS fragmentation and simple descriptors. Independent of the C++
library so the two can be cross-checked.
"""

from .smiles import Mol, Atom, Bond, parse_smiles, ChemError
from .canon import canonical_smiles, subgraph_mol
from .brics import find_brics_bonds, fragment_atoms
from .scaffold import murcko_atoms, scaffold_key
