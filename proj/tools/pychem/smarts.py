"""Minimal SMARTS matcher covering the primitives used by the BRICS
environment table: element (aliphatic/aromatic), #n, D<n>, H<n>, R, charge,
'*', recursive $(...), '!' negation, ',' OR, ';'/'&' AND, bond expressions
- = # : ~ @ with '!' and ';', and branches. No ring-closure digits."""

from .smiles import ELEMENTS, SINGLE, DOUBLE, TRIPLE, AROMATIC, ChemError

TWO_LETTER = ("Cl", "Br", "Se", "Si", "As", "Te", "Na", "Li", "Mg", "Ca")


class AtomExpr:
    # ors: list of ands; each and: list of (negate, prim, arg)
    def __init__(self, ors):
        self.ors = ors

    def eval(self, mol, i, matcher):
        a = mol.atoms[i]
        for ands in self.ors:
            ok = True
            for neg, prim, arg in ands:
                v = _prim_eval(mol, i, a, prim, arg, matcher)
                if neg:
                    v = not v
                if not v:
                    ok = False
                    break
            if ok:
                return True
        return False


def _prim_eval(mol, i, a, prim, arg, matcher):
    if prim == "elem_ali":
        return a.symbol == arg and not a.aromatic
    if prim == "elem_aro":
        return a.symbol == arg and a.aromatic
    if prim == "anum":
        return ELEMENTS.get(a.symbol, -1) == arg
    if prim == "degree":
        return mol.degree(i) == arg
    if prim == "hcount":
        return a.total_h == arg
    if prim == "ring":
        return a.in_ring
    if prim == "charge":
        return a.charge == arg
    if prim == "any":
        return True
    if prim == "rec":
        return matcher.match_rooted(mol, i, arg)
    raise ChemError("SyntaxError", f"smarts primitive {prim}")


class BondExpr:
    def __init__(self, terms):
        self.terms = terms  # [(negate, kind)]; empty = default single|aromatic

    def eval(self, bond):
        if not self.terms:
            return bond.order in (SINGLE, AROMATIC)
        for neg, kind in self.terms:
            v = _bond_eval(bond, kind)
            if neg:
                v = not v
            if not v:
                return False
        return True


def _bond_eval(bond, kind):
    if kind == "-":
        return bond.order == SINGLE
    if kind == "=":
        return bond.order == DOUBLE
    if kind == "#":
        return bond.order == TRIPLE
    if kind == ":":
        return bond.order == AROMATIC
    if kind == "~":
        return True
    if kind == "@":
        return bond.in_ring
    raise ChemError("SyntaxError", f"smarts bond {kind}")


class Pattern:
    def __init__(self):
        self.atoms = []          # AtomExpr
        self.edges = []          # (pa, pb, BondExpr)
        self.adj = []            # pa -> [(pb, edge_idx)]

    def add_atom(self, expr):
        self.atoms.append(expr)
        self.adj.append([])
        return len(self.atoms) - 1

    def add_edge(self, pa, pb, bexpr):
        self.edges.append((pa, pb, bexpr))
        k = len(self.edges) - 1
        self.adj[pa].append((pb, k))
        self.adj[pb].append((pa, k))


class _Parser:
    def __init__(self, s):
        self.s = s
        self.i = 0

    def peek(self):
        return self.s[self.i] if self.i < len(self.s) else ""

    def take(self):
        c = self.peek()
        self.i += 1
        return c

    def number(self, default=None):
        j = self.i
        while self.i < len(self.s) and self.s[self.i].isdigit():
            self.i += 1
        if j == self.i:
            return default
        return int(self.s[j:self.i])

    def parse(self):
        pat = Pattern()
        prev = -1
        stack = []
        pending = None
        while self.i < len(self.s):
            c = self.peek()
            if c == "(":
                self.take()
                stack.append(prev)
            elif c == ")":
                self.take()
                prev = stack.pop()
            elif c in "-=#:~@!;":
                pending = self.parse_bond()
            else:
                expr = self.parse_atom()
                cur = pat.add_atom(expr)
                if prev >= 0:
                    pat.add_edge(prev, cur, pending or BondExpr([]))
                pending = None
                prev = cur
        if stack:
            raise ChemError("SyntaxError", "smarts: unbalanced parens")
        return pat

    def parse_bond(self):
        terms = []
        neg = False
        while self.i < len(self.s):
            c = self.peek()
            if c == "!":
                self.take()
                neg = True
            elif c in "-=#:~@":
                self.take()
                terms.append((neg, c))
                neg = False
            elif c == ";":
                self.take()
            else:
                break
        return BondExpr(terms)

    def parse_atom(self):
        c = self.peek()
        if c == "[":
            self.take()
            expr = self.parse_atom_expr()
            if self.take() != "]":
                raise ChemError("SyntaxError", "smarts: expected ]")
            return expr
        # bare atom
        if self.s[self.i:self.i + 2] in TWO_LETTER:
            sym = self.take() + self.take()
            return AtomExpr([[(False, "elem_ali", sym)]])
        c = self.take()
        if c == "*":
            return AtomExpr([[(False, "any", None)]])
        if c.isupper():
            return AtomExpr([[(False, "elem_ali", c)]])
        if c.islower():
            return AtomExpr([[(False, "elem_aro", c.upper())]])
        raise ChemError("SyntaxError", f"smarts: bad atom '{c}'")

    def parse_atom_expr(self):
        ors = []
        ands = []
        neg = False
        while self.i < len(self.s):
            c = self.peek()
            if c == "]":
                break
            if c == ",":
                self.take()
                ors.append(ands)
                ands = []
                continue
            if c in ";&":
                self.take()
                continue
            if c == "!":
                self.take()
                neg = True
                continue
            prim = self.parse_prim()
            ands.append((neg, prim[0], prim[1]))
            neg = False
        ors.append(ands)
        return AtomExpr(ors)

    def parse_prim(self):
        c = self.peek()
        if c == "#":
            self.take()
            return ("anum", self.number())
        if c == "$":
            self.take()
            if self.take() != "(":
                raise ChemError("SyntaxError", "smarts: expected ( after $")
            depth = 1
            j = self.i
            while self.i < len(self.s) and depth:
                ch = self.take()
                if ch == "(":
                    depth += 1
                elif ch == ")":
                    depth -= 1
            inner = self.s[j:self.i - 1]
            return ("rec", _Parser(inner).parse())
        if c == "D":
            self.take()
            return ("degree", self.number(1))
        if c == "H":
            self.take()
            return ("hcount", self.number(1))
        if c == "R":
            self.take()
            return ("ring", None)
        if c == "+":
            self.take()
            extra = 0
            while self.peek() == "+":
                self.take()
                extra += 1
            num = self.number(None)
            return ("charge", num if num is not None else 1 + extra)
        if c == "-":
            self.take()
            extra = 0
            while self.peek() == "-":
                self.take()
                extra += 1
            num = self.number(None)
            return ("charge", -(num if num is not None else 1 + extra))
        if c == "*":
            self.take()
            return ("any", None)
        if self.s[self.i:self.i + 2] in TWO_LETTER:
            return ("elem_ali", self.take() + self.take())
        ch = self.take()
        if ch.isupper():
            return ("elem_ali", ch)
        if ch.islower():
            return ("elem_aro", ch.upper())
        raise ChemError("SyntaxError", f"smarts: bad primitive '{ch}'")


class Matcher:
    def __init__(self):
        self.cache = {}

    def compile(self, smarts):
        if smarts not in self.cache:
            self.cache[smarts] = _Parser(smarts).parse()
        return self.cache[smarts]

    def match_rooted(self, mol, atom_idx, pattern):
        """Pattern atom 0 maps to atom_idx; injective backtracking over the
        rest of the pattern."""
        if isinstance(pattern, str):
            pattern = self.compile(pattern)
        n = len(pattern.atoms)
        if not pattern.atoms[0].eval(mol, atom_idx, self):
            return False
        mapping = {0: atom_idx}
        used = {atom_idx}

        def rec(done_edges):
            # next pattern edge with exactly one mapped endpoint
            for k, (pa, pb, bexpr) in enumerate(pattern.edges):
                if k in done_edges:
                    continue
                if pa in mapping and pb in mapping:
                    bond = mol.bond_between(mapping[pa], mapping[pb])
                    if bond is None or not bexpr.eval(bond):
                        return False
                    return rec(done_edges | {k})
                if pa in mapping or pb in mapping:
                    src, dst = (pa, pb) if pa in mapping else (pb, pa)
                    u = mapping[src]
                    for bi in mol.nbrs[u]:
                        bond = mol.bonds[bi]
                        v = bond.other(u)
                        if v in used or not bexpr.eval(bond):
                            continue
                        if not pattern.atoms[dst].eval(mol, v, self):
                            continue
                        mapping[dst] = v
                        used.add(v)
                        if rec(done_edges | {k}):
                            return True
                        del mapping[dst]
                        used.discard(v)
                    return False
            return True

        return rec(frozenset())
