"""Molecule corpus for the bundled desk-scale datasets: named real-world
structures plus scaffold-template enumeration. Every SMILES is validated
(parse + canonical round-trip) at generation time."""

NAMED = [
    "C", "CC", "CCC", "CCCC", "CC(C)C", "CCCCC", "CCCCCC", "CCCCCCC",
    "CCCCCCCC", "C1CC1", "C1CCC1", "C1CCCC1", "C1CCCCC1", "CC1CCCCC1",
    "C1CCC2CCCCC2C1", "CO", "CCO", "CC(C)O", "CC(C)(C)O", "OCCO",
    "OCC(O)CO", "CCOCC", "C1CCOC1", "C1COCCO1", "CC(C)=O", "CCC(C)=O",
    "CC=O", "OC=O", "CC(=O)O", "CCC(=O)O", "CCCC(=O)O", "OC(=O)C(=O)O",
    "CCOC(C)=O", "COC(C)=O", "CC(N)=O", "CN(C)C=O", "CS(C)=O", "CC#N",
    "C[N+](=O)[O-]", "ClC(Cl)Cl", "ClCCl", "ClC(Cl)(Cl)Cl", "COC(C)(C)C",
    "CCNCC", "CCN(CC)CC", "NCCO", "NC(N)=O", "NC(N)=S", "CSC", "CCS",
    "C=CC", "C=CCC", "C=C(C)C=C", "C=CC=C", "C#C", "C#CC", "C=CCO",
    "C=CC=O", "C=CC(=O)O", "C=COC(C)=O",
    "c1ccccc1", "Cc1ccccc1", "Cc1ccccc1C", "Cc1cccc(C)c1", "Cc1ccc(C)cc1",
    "CCc1ccccc1", "C=Cc1ccccc1", "Oc1ccccc1", "COc1ccccc1", "Nc1ccccc1",
    "CNc1ccccc1", "CN(C)c1ccccc1", "O=Cc1ccccc1", "CC(=O)c1ccccc1",
    "OC(=O)c1ccccc1", "COC(=O)c1ccccc1", "NC(=O)c1ccccc1", "N#Cc1ccccc1",
    "O=[N+]([O-])c1ccccc1", "Clc1ccccc1", "Brc1ccccc1", "Fc1ccccc1",
    "Ic1ccccc1", "OCc1ccccc1", "NCc1ccccc1", "OC(=O)Cc1ccccc1",
    "OC(=O)/C=C/c1ccccc1", "Oc1ccccc1O", "Oc1cccc(O)c1", "Oc1ccc(O)cc1",
    "Cc1ccc(O)cc1", "Oc1ccc(cc1)[N+](=O)[O-]", "Oc1ccc(Cl)cc1Cl",
    "Oc1c(Cl)c(Cl)c(Cl)c(Cl)c1Cl", "O=C(c1ccccc1)c1ccccc1",
    "c1ccc(-c2ccccc2)cc1", "C(c1ccccc1)c1ccccc1", "O(c1ccccc1)c1ccccc1",
    "c1ccc(Nc2ccccc2)cc1", "c1ccc2ccccc2c1", "Oc1cccc2ccccc12",
    "Nc1ccc2ccccc2c1", "c1ccc2cc3ccccc3cc2c1", "C1Cc2ccccc2C1",
    "C1CCc2ccccc2C1", "c1ccncc1", "Cc1ccccn1", "Cc1cccnc1", "c1cncnc1",
    "c1cnccn1", "c1ccnnc1", "c1cc[nH]c1", "Cn1cccc1", "c1ccoc1", "c1ccsc1",
    "Cc1cccs1", "c1c[nH]cn1", "Cn1ccnc1", "c1cc[nH]n1", "c1cscn1",
    "c1ccc2[nH]ccc2c1", "c1ccc2ncccc2c1", "c1ccc2cnccc2c1",
    "c1ccc2[nH]cnc2c1", "c1ccc2occc2c1", "c1ccc2sccc2c1", "c1ccc2ocnc2c1",
    "c1ccc2scnc2c1", "c1ccc2c(c1)[nH]c1ccccc12", "c1ncc2[nH]cnc2n1",
    "Cn1c(=O)c2c(ncn2C)n(C)c1=O", "Cn1c(=O)c2[nH]cnc2n(C)c1=O",
    "Cn1cnc2c1c(=O)[nH]c(=O)n2C", "O=c1cc[nH]c(=O)[nH]1",
    "Cc1c[nH]c(=O)[nH]c1=O", "Nc1cc[nH]c(=O)n1", "Nc1ncnc2[nH]cnc12",
    "Nc1nc2[nH]cnc2c(=O)[nH]1", "NC(=O)c1cccnc1", "OC(=O)c1cccnc1",
    "NNC(=O)c1ccncc1", "Cc1ncc(CO)c(CO)c1O",
    "CC(=O)Oc1ccccc1C(=O)O", "CC(=O)Nc1ccc(O)cc1", "CCOc1ccc(NC(C)=O)cc1",
    "CC(C)Cc1ccc(C(C)C(=O)O)cc1", "COc1ccc2cc(C(C)C(=O)O)ccc2c1",
    "CC(C(=O)O)c1cccc(C(=O)c2ccccc2)c1",
    "OC(=O)Cc1ccccc1Nc1c(Cl)cccc1Cl", "Cc1cccc(C)c1Nc1ccccc1C(=O)O",
    "CCOC(=O)c1ccc(N)cc1", "CCN(CC)CCOC(=O)c1ccc(N)cc1",
    "CCN(CC)CC(=O)Nc1c(C)cccc1C", "CN1CCCC1c1cccnc1", "CNC(C)C(O)c1ccccc1",
    "CC(N)Cc1ccccc1", "CNC(C)Cc1ccccc1",
    "CCC1(c2ccccc2)C(=O)NC(=O)NC1=O", "CCC1(CC)C(=O)NC(=O)NC1=O",
    "CN1c2ccc(Cl)cc2C(c2ccccc2)=NCC1=O",
    "CC(C)(C)NCC(O)c1ccc(O)c(CO)c1",
    "CC(C)NCC(O)COc1ccc(CC(N)=O)cc1", "CC(C)NCC(O)COc1cccc2ccccc12",
    "COCCc1ccc(OCC(O)CNC(C)C)cc1", "O=c1ccc2ccccc2o1", "O=c1ccoc2ccccc12",
    "Nc1ccc(S(N)(=O)=O)cc1", "Nc1ccc(S(=O)(=O)Nc2ncccn2)cc1",
    "CCCNC(=O)NS(=O)(=O)c1ccc(Cl)cc1", "CCCCNC(=O)NS(=O)(=O)c1ccc(C)cc1",
    "NS(=O)(=O)c1cc(C(=O)O)c(NCc2ccco2)cc1Cl",
    "Cc1ncc([N+](=O)[O-])n1CCO", "COc1cc(Cc2cnc(N)nc2N)cc(OC)c1OC",
    "CC(CS)C(=O)N1CCCC1C(=O)O",
    "CN1C2CCC1CC(OC(=O)C(CO)c1ccccc1)C2",
    "COC(=O)C1C(OC(=O)c2ccccc2)CC2CCC1N2C",
    "COc1ccc(Cc2nccc3cc(OC)c(OC)cc23)cc1OC",
    "COc1ccc2[nH]cc(CCNC(C)=O)c2c1", "NCCc1c[nH]c2ccc(O)cc12",
    "NC(Cc1c[nH]c2ccccc12)C(=O)O", "NC(Cc1ccc(O)cc1)C(=O)O",
    "NC(Cc1ccccc1)C(=O)O", "CC(C)CC(N)C(=O)O", "CC(C)C(N)C(=O)O",
    "CC(N)C(=O)O", "NCC(=O)O", "NC(CO)C(=O)O", "NC(CS)C(=O)O",
    "CSCCC(N)C(=O)O", "NCCCCC(N)C(=O)O", "NC(CCC(=O)O)C(=O)O",
    "NC(CC(=O)O)C(=O)O", "NC(Cc1c[nH]cn1)C(=O)O", "OC(=O)C1CCCN1",
    "OCC1OC(O)C(O)C(O)C1O", "OC(=O)CC(O)(CC(=O)O)C(=O)O",
    "OC(C(O)C(=O)O)C(=O)O", "OC(CC(=O)O)C(=O)O", "OC(=O)CCC(=O)O",
    "OC(=O)CCCCC(=O)O", "OC(=O)/C=C/C(=O)O", "OC(=O)/C=C\\C(=O)O",
    "CC(O)C(=O)O", "CC(=O)C(=O)O",
    "CC(C)CCCC(C)C1CCC2C1(C)CCC1C2CC=C2CC(O)CCC21C",
    "CC12CCC3C(CCC4=CC(=O)CCC43C)C1CCC2O",
    "CC12CCC3c4ccc(O)cc4CCC3C1CCC2O",
    "CC(=O)C1CCC2C1(C)CCC1C2CCC2=CC(=O)CCC12C",
    "CC1CCC(C(C)C)C(O)C1", "CC1(C)C2CCC1(C)C(=O)C2",
    "CC1=CCC(CC1)C(=C)C", "CC1=CCC2CC1C2(C)C", "COc1cc(C=O)ccc1O",
    "C=CCc1ccc(O)c(OC)c1", "C=CCc1ccc2OCOc2c1", "COc1ccc(/C=C/C)cc1",
    "O=C/C=C/c1ccccc1", "OC(=O)/C=C/c1ccc(O)cc1",
    "COc1cc(/C=C/C(=O)O)ccc1O", "Oc1ccc(/C=C/c2cc(O)cc(O)c2)cc1",
    "C(=C/c1ccccc1)\\c1ccccc1", "O=C(/C=C/c1ccccc1)c1ccccc1",
    "CCN(CC)C(=O)c1cccc(C)c1", "CCNc1nc(Cl)nc(NC(C)C)n1",
    "CCNc1nc(Cl)nc(NCC)n1", "CC(C)Nc1nc(Cl)nc(NC(C)C)n1",
    "COc1nc(NC(C)C)nc(NC(C)C)n1", "CN(C)C(=O)Nc1ccc(Cl)c(Cl)c1",
    "CON(C)C(=O)Nc1ccc(Cl)c(Cl)c1", "CN(C)C(=O)Nc1ccc(Cl)cc1",
    "CN(C)C(=O)Nc1ccccc1", "CNC(=O)Oc1cccc2ccccc12",
    "CNC(=O)Oc1cccc2c1OC(C)(C)C2",
    "CCOP(=S)(OCC)Oc1ccc(cc1)[N+](=O)[O-]",
    "CCOP(=S)(OCC)Oc1nc(Cl)c(Cl)cc1Cl", "OC(=O)COc1ccc(Cl)cc1Cl",
    "Cc1cc(Cl)ccc1OCC(=O)O", "COc1c(Cl)ccc(Cl)c1C(=O)O",
    "OC(=O)Cc1cccc2ccccc12", "Oc1ccc(-c2ccccc2)cc1",
    "Clc1ccc(-c2ccc(Cl)cc2)cc1", "CC(C)(c1ccc(O)cc1)c1ccc(O)cc1",
    "OC(=O)c1ccccc1C(=O)O", "OC(=O)c1ccc(C(=O)O)cc1",
    "COC(=O)c1ccccc1C(=O)OC", "CCCCOC(=O)c1ccccc1C(=O)OCCCC",
    "O=C(OCc1ccccc1)c1ccccc1", "COC(=O)c1ccccc1O", "NC(=O)c1ccccc1O",
    "Clc1ccc(C(c2ccc(Cl)cc2)C(Cl)(Cl)Cl)cc1",
    "ClC1C(Cl)C(Cl)C(Cl)C(Cl)C1Cl",
    "CC(=O)[O-].[Na+]", "[O-]C(=O)c1ccccc1.[Na+]", "C[N+](C)(C)CCO",
    "C[N+](C)(C)CC(=O)[O-]", "C[N+](C)(C)C.[Cl-]", "CCN.Cl",
    "c1cc[nH+]cc1.[Cl-]", "CC(C)Cc1ccc([C@@H](C)C(=O)O)cc1",
    "N[C@@H](Cc1ccc(O)c(O)c1)C(=O)O", "N[C@@H](C)C(=O)O",
    "C/C=C/C", "C/C=C\\C", "CC/C=C(\\C)CC", "ClC/C=C/CCl",
    "CCCCCCCCCC", "CCCCCCCCCCCC", "CCCCCCCCCCCCCC", "CCCCCCCCCCCCCCCC",
    "CCCCCCCCC(=O)O", "CCCCCCCCCCCC(=O)O", "CCCCCCCCCCCCCCCC(=O)O",
    "CCCCCCCCOC(C)=O", "CCCCCCCCCCOC(=O)CCCCC", "CCCCCCCCCCCCO",
    "c1ccc2cc3cc4ccccc4cc3cc2c1", "Clc1c(Cl)c(Cl)c(Cl)c(Cl)c1Cl",
    "ClC(Cl)=C(c1ccc(Cl)cc1)c1ccc(Cl)cc1",
    "Clc1cc(Cl)c(cc1Cl)-c1cc(Cl)c(Cl)cc1Cl",
    "CC(C)=CCCC(C)=CCCC(C)=CCCC=C(C)CCC=C(C)CCC=C(C)C",
    "c1ccc(cc1)-c1ccc(cc1)-c1ccccc1", "CCCCCCCCc1ccccc1",
    "CCCCCCCCCCc1ccc(O)cc1", "BrC(Br)Br", "FC(F)(F)C(F)(F)F",
    "OCC(O)C(O)C(O)C(O)CO", "OCC(O)C(O)C(O)CO", "OCC(O)C(O)CO",
    "OC1C(O)C(O)C(O)C(O)C1O", "NCCS(=O)(=O)O", "NCC(O)CO",
    "OCCNCCO", "OCCN(CCO)CCO", "OCC(=O)O", "OC(=O)CC(=O)O", "NC=O",
    "CNC(N)=O", "OCCOCCO", "OCCOCCOCCO", "NCCN", "NCCCN", "NCCNCCN",
    "CC(=O)NC(C)=O", "OCC(N)C(=O)O.Cl", "OC(=O)CN(CC(=O)O)CC(=O)O",
]

# Templates: {R} marks the substitution site. Template ring digits are 1/2;
# R-groups that contain a ring use digit 9 so open digits never collide.
TEMPLATES = [
    "c1ccc({R})cc1", "Cc1ccc({R})cc1", "COc1ccc({R})cc1",
    "Clc1ccc({R})cc1", "Oc1ccc({R})cc1", "Fc1ccc({R})cc1",
    "Cc1cccc({R})c1", "c1ccc2cc({R})ccc2c1",
    "c1ccc(-c2ccc({R})cc2)cc1", "c1cc({R})cnc1", "c1cc({R})ccn1",
    "c1cnc({R})nc1", "c1ccc({R})o1", "c1ccc({R})s1", "Cn1ccc({R})c1",
    "c1ccc2[nH]cc({R})c2c1", "c1ccc2nc({R})ccc2c1",
    "c1ccc2[nH]c({R})nc2c1", "c1ccc2sc({R})nc2c1",
    "C1CCN({R})CC1", "CN1CCN({R})CC1", "O1CCN({R})CC1",
    "C1CCC({R})CC1", "Cn1ccc({R})n1",
    "CC(=O)Nc1ccc({R})cc1", "NS(=O)(=O)c1ccc({R})cc1",
    "NC(=O)c1ccc({R})cc1", "OCc1ccc({R})cc1", "O=Cc1ccc({R})cc1",
    "OC(=O)c1ccc({R})cc1", "N#Cc1ccc({R})cc1",
    "O=[N+]([O-])c1ccc({R})cc1", "Nc1ccc({R})cc1",
    "c1ccc2c(c1)oc({R})c2", "CSc1ccc({R})cc1", "c1ccc2cc({R})oc2c1",
]

RGROUPS = [
    "C", "CC", "CCC", "CCCC", "C(C)C", "C(C)(C)C", "CC(C)C", "O", "OC",
    "OCC", "OC(C)C", "N", "NC", "N(C)C", "NCC", "F", "Cl", "Br", "I",
    "C#N", "C=C", "C#C", "CO", "CN", "C(F)(F)F", "C(=O)O", "C(=O)OC",
    "C(=O)OCC", "C(=O)N", "C(=O)NC", "C(=O)C", "C=O", "NC(=O)C",
    "OC(=O)C", "SC", "S(=O)(=O)N", "S(=O)(=O)C", "[N+](=O)[O-]",
    "N9CCOCC9", "N9CCCCC9", "CCl", "CCO", "OCC(=O)O", "CNC(C)=O",
]

# acyclic functional-group families: acid part attaches via its last atom,
# tail parts via their first atom
ACID_PARTS = ["C", "CC", "CCC", "CC(C)C", "CCCCC", "c1ccccc1",
              "Cc1ccccc1", "CCCC", "C=C"]
TAIL_PARTS = ["C", "CC", "CCC", "CCCC", "CC(C)C", "CCCCC", "CCCCCC",
              "CCO", "CCc1ccccc1", "Cc1ccccc1"]
