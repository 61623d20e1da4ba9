"""Two-term complexes of projectives up to homotopy.

An object is ``X^-1 --x--> X^0`` with both terms sums of indecomposable
projectives.  Morphisms are chain maps modulo homotopy; the extension group
is E(X, Y) = Hom(X^-1, Y^0) / (Hom(X^0, Y^0) x + y Hom(X^-1, Y^-1)).

Inflations are tested exactly: a chain map f: X -> Y is an inflation iff
(-x, f^-1): X^-1 -> X^0 + Y^-1 is a split monomorphism, which for maps of
projectives means injective on tops.  The cone is then the cokernel of that
split mono mapped to Y^0.
"""

from collections import Counter
from functools import lru_cache

from .linalg import nullspace, rank, reduce_vector, rref, transpose
from .modules import (
    cokernel,
    decompose,
    kernel,
    nakayama_morphism,
    presentation_data,
    projmap_morphism,
)
from .projective import HomBasis, ProjMap, block


class TwoTermComplex:
    __slots__ = ("alg", "m1", "m0", "d", "_key", "_hash")

    def __init__(self, alg, m1, m0, d=None):
        self.alg = alg
        self.m1 = tuple(m1)
        self.m0 = tuple(m0)
        if d is None:
            d = ProjMap.zero(alg, self.m1, self.m0)
        if d.src != self.m1 or d.tgt != self.m0:
            raise ValueError("differential does not match the terms")
        self.d = d
        self._key = None
        self._hash = None

    def key(self):
        if self._key is None:
            ent = tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self.d.entries.items()))
            self._key = (self.m1, self.m0, ent)
        return self._key

    def __eq__(self, other):
        return isinstance(other, TwoTermComplex) and other.alg is self.alg and other.key() == self.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.alg), self.key()))
        return self._hash

    def mult(self, verts):
        c = Counter(verts)
        return tuple(c[v] for v in self.alg.vertices)

    @property
    def mult_m1(self):
        return self.mult(self.m1)

    @property
    def mult_0(self):
        return self.mult(self.m0)

    @property
    def size(self):
        return len(self.m1) + len(self.m0)

    def is_zero(self):
        return not self.m1 and not self.m0

    def g_vector(self):
        return tuple(a - b for a, b in zip(self.mult_0, self.mult_m1))

    def is_minimal(self):
        return self.d.is_radical()

    def __repr__(self):
        return f"TwoTermComplex({list(self.m1)} -> {list(self.m0)}; {self.d!r})"

    def to_json(self):
        F = self.alg.field
        blocks = []
        for (t, s), x in sorted(self.d.entries.items()):
            for k in sorted(x, key=lambda k: self.alg.path_basis[k].key()):
                blocks.append({"from": s, "to": t, "path": str(self.alg.path_basis[k]), "coeff": F.fmt(x[k])})
        return {
            "mult_m1": list(self.mult_m1),
            "mult_0": list(self.mult_0),
            "m1": list(self.m1),
            "m0": list(self.m0),
            "differential": blocks,
        }

    @classmethod
    def from_json(cls, alg, data):
        F = alg.field
        ent = {}
        for b in data["differential"]:
            p = alg.path(b["path"])
            for k, c in alg.reduce(p).items():
                acc = ent.setdefault((b["to"], b["from"]), {})
                acc[k] = F.norm(acc.get(k, 0) + F.parse(b["coeff"]) * c)
        return cls(alg, data["m1"], data["m0"], ProjMap(alg, data["m1"], data["m0"], ent))


def stalk(alg, verts):
    """The complex 0 -> P (projective in degree 0)."""
    return TwoTermComplex(alg, (), verts)


def shift(alg, verts):
    """The complex P -> 0, i.e. P[1]."""
    return TwoTermComplex(alg, verts, ())


def zero_complex(alg):
    return TwoTermComplex(alg, (), ())


def direct_sum(parts, alg=None):
    if not parts:
        return zero_complex(alg)
    alg = parts[0].alg
    d = block(alg, [X.m1 for X in parts], [X.m0 for X in parts], {(i, i): X.d for i, X in enumerate(parts)})
    return TwoTermComplex(alg, d.src, d.tgt, d)


def parse_complex(alg, text):
    """Parse 'P1 + P2 -> P3 : [[a, b]]' style literals.

    The differential is a list of rows (one per degree-0 summand), each a list
    of algebra elements (one per degree -1 summand).  A 1x1 differential may be
    written without brackets, and an omitted differential means zero.
    """
    import re

    head, _, body = text.partition(":")
    if "->" not in head:
        raise ValueError("complex literal needs '->'")
    left, right = head.split("->")

    def terms(s):
        s = s.strip()
        if s in ("", "0"):
            return ()
        out = []
        for t in s.split("+"):
            m = re.fullmatch(r"\s*P(\d+)\s*", t)
            if not m or int(m.group(1)) not in alg.vpos:
                raise ValueError(f"bad projective term {t.strip()!r}")
            out.append(int(m.group(1)))
        return tuple(out)

    m1, m0 = terms(left), terms(right)
    body = body.strip()
    ent = {}
    if body:
        if not body.startswith("["):
            body = f"[[{body}]]"
        rows = re.findall(r"\[([^\[\]]*)\]", body[1:-1])
        if len(rows) != len(m0):
            raise ValueError("differential needs one row per degree-0 summand")
        for t, row in enumerate(rows):
            cells = [c.strip() for c in row.split(",")]
            if len(cells) != len(m1):
                raise ValueError("differential needs one column per degree -1 summand")
            for s, cell in enumerate(cells):
                x = alg.parse_elem(cell)
                for k in x:
                    p = alg.path_basis[k]
                    if p.source != m1[s] or p.target != m0[t]:
                        raise ValueError(f"entry {cell!r} is not a map P{m1[s]} -> P{m0[t]}")
                if x:
                    ent[(t, s)] = x
    return TwoTermComplex(alg, m1, m0, ProjMap(alg, m1, m0, ent))


# ---------------------------------------------------------------- minimize

def _unit_inverse(alg, lam, v):
    """Inverse of a unit c e_v + n in the local ring e_v Lambda e_v."""
    F = alg.field
    ev = alg.e[v]
    c = lam[ev]
    ci = F.inv(c)
    n = {k: F.norm(-a * ci) for k, a in lam.items() if k != ev}
    out = {ev: F.one}
    term = {ev: F.one}
    for _ in range(alg.nilpotency_degree):
        term = alg.elem_mul(term, n)
        if not term:
            break
        for k, a in term.items():
            out[k] = F.norm(out.get(k, 0) + a)
    return {k: F.norm(a * ci) for k, a in out.items() if F.norm(a * ci)}


def minimize(X):
    """Strip contractible summands P = P until every entry is radical."""
    alg = X.alg
    F = alg.field
    d = X.d
    while True:
        T = d.top()
        hit = None
        for t, row in enumerate(T):
            for s, c in enumerate(row):
                if c:
                    hit = (t, s)
                    break
            if hit:
                break
        if hit is None:
            return TwoTermComplex(alg, d.src, d.tgt, d)
        t, s = hit
        v = d.src[s]
        lam = d[(t, s)]
        inv = _unit_inverse(alg, lam, v)
        ent = {(i, i): {alg.e[w]: F.one} for i, w in enumerate(d.tgt)}
        for u in range(len(d.tgt)):
            mu = d[(u, s)]
            if u != t and mu:
                eps = alg.elem_mul(inv, mu)
                ent[(u, t)] = {k: F.norm(-a) for k, a in eps.items()}
        d = d.then(ProjMap(alg, d.tgt, d.tgt, ent))
        ent = {(i, i): {alg.e[w]: F.one} for i, w in enumerate(d.src)}
        for s2 in range(len(d.src)):
            nu = d[(t, s2)]
            if s2 != s and nu:
                phi = alg.elem_mul(nu, inv)
                ent[(s, s2)] = {k: F.norm(-a) for k, a in phi.items()}
        d = ProjMap(alg, d.src, d.src, ent).then(d)
        keep_s = [i for i in range(len(d.src)) if i != s]
        keep_t = [i for i in range(len(d.tgt)) if i != t]
        d = d.restrict(keep_s, keep_t)


# ---------------------------------------------------------------- morphisms

class ChainMap:
    __slots__ = ("src", "tgt", "f1", "f0")

    def __init__(self, src, tgt, f1=None, f0=None):
        alg = src.alg
        self.src = src
        self.tgt = tgt
        self.f1 = f1 if f1 is not None else ProjMap.zero(alg, src.m1, tgt.m1)
        self.f0 = f0 if f0 is not None else ProjMap.zero(alg, src.m0, tgt.m0)

    def then(self, other):
        return ChainMap(self.src, other.tgt, self.f1.then(other.f1), self.f0.then(other.f0))

    def __add__(self, other):
        return ChainMap(self.src, self.tgt, self.f1 + other.f1, self.f0 + other.f0)

    def scale(self, c):
        return ChainMap(self.src, self.tgt, self.f1.scale(c), self.f0.scale(c))

    def is_chain_map(self):
        return self.src.d.then(self.f0) == self.f1.then(self.tgt.d)

    def __repr__(self):
        return f"ChainMap(f1={self.f1!r}, f0={self.f0!r})"


def identity_map(X):
    alg = X.alg
    return ChainMap(X, X, ProjMap.identity(alg, X.m1), ProjMap.identity(alg, X.m0))


class HomK:
    """Hom in the homotopy category: chain maps modulo null-homotopic ones."""

    def __init__(self, X, Y):
        alg = X.alg
        F = alg.field
        self.X, self.Y = X, Y
        self.b1 = HomBasis(alg, X.m1, Y.m1)
        self.b0 = HomBasis(alg, X.m0, Y.m0)
        cod = HomBasis(alg, X.m1, Y.m0)
        n1, n0 = len(self.b1), len(self.b0)
        n = n1 + n0
        self.n = n
        if n == 0:
            self.cycles, self.bound, self.bpiv, self.reps = [], [], [], []
            return
        A1 = self.b1.linear(lambda p: p.then(Y.d), cod)
        A0 = self.b0.linear(lambda p: X.d.then(p), cod)
        rows = [[F.norm(-a) for a in r1] + list(r0) for r1, r0 in zip(A1, A0)] if len(cod) else []
        self.cycles = nullspace(rows, n, F)
        hb = HomBasis(alg, X.m0, Y.m1)
        gens = []
        for i in range(len(hb)):
            h = hb.unit(i)
            gens.append(self.b1.vector(X.d.then(h)) + self.b0.vector(h.then(Y.d)))
        self.bound, self.bpiv = rref([g for g in gens if any(g)], n, F)
        ech, piv = [list(r) for r in self.bound], list(self.bpiv)
        reps = []
        for z in self.cycles:
            r = reduce_vector(ech, piv, z, F)
            if any(r):
                reps.append(z)
                ech, piv = rref(ech + [r], n, F)
        self.reps = reps

    @property
    def dim(self):
        return len(self.reps)

    def to_map(self, vec):
        n1 = len(self.b1)
        return ChainMap(self.X, self.Y, self.b1.map(vec[:n1]), self.b0.map(vec[n1:]))

    def vector(self, f):
        return self.b1.vector(f.f1) + self.b0.vector(f.f0)

    def basis(self):
        return [self.to_map(v) for v in self.reps]

    def normal_form(self, f):
        """Canonical representative of the homotopy class (reduced echelon coordinates)."""
        return reduce_vector(self.bound, self.bpiv, self.vector(f), self.X.alg.field)

    def is_null_homotopic(self, f):
        return not any(self.normal_form(f))

    def combine(self, coeffs):
        F = self.X.alg.field
        vec = [F.zero] * self.n
        for c, r in zip(coeffs, self.reps):
            if c:
                vec = [F.norm(a + c * b) for a, b in zip(vec, r)]
        return self.to_map(vec)

    def cycle_maps(self):
        return [self.to_map(v) for v in self.cycles]


@lru_cache(maxsize=200000)
def hom_k(X, Y):
    return HomK(X, Y)


class ExtSpace:
    def __init__(self, X, Y):
        alg = X.alg
        F = alg.field
        self.X, self.Y = X, Y
        self.basis_h = HomBasis(alg, X.m1, Y.m0)
        n = len(self.basis_h)
        gens = []
        b0 = HomBasis(alg, X.m0, Y.m0)
        for i in range(len(b0)):
            gens.append(self.basis_h.vector(X.d.then(b0.unit(i))))
        b1 = HomBasis(alg, X.m1, Y.m1)
        for i in range(len(b1)):
            gens.append(self.basis_h.vector(b1.unit(i).then(Y.d)))
        self.sub, self.piv = rref([g for g in gens if any(g)], n, F) if n else ([], [])
        pset = set(self.piv)
        self.reps = []
        for j in range(n):
            if j not in pset:
                v = [F.zero] * n
                v[j] = F.one
                self.reps.append(v)

    @property
    def dim(self):
        return len(self.reps)

    def basis(self):
        return [self.basis_h.map(v) for v in self.reps]

    def combine(self, coeffs):
        F = self.X.alg.field
        vec = [F.zero] * len(self.basis_h)
        for c, r in zip(coeffs, self.reps):
            if c:
                vec = [F.norm(a + c * b) for a, b in zip(vec, r)]
        return self.basis_h.map(vec)

    def is_zero_class(self, h):
        return not any(reduce_vector(self.sub, self.piv, self.basis_h.vector(h), self.X.alg.field))


@lru_cache(maxsize=200000)
def ext1(X, Y):
    return ExtSpace(X, Y)


def middle_term(h, X, Z):
    """Middle term of the conflation X -> Y -> Z with class h: Z^-1 -> X^0."""
    alg = X.alg
    d = block(alg, [X.m1, Z.m1], [X.m0, Z.m0], {(0, 0): X.d, (0, 1): h, (1, 1): Z.d})
    Y = TwoTermComplex(alg, d.src, d.tgt, d)
    incl = ChainMap(
        X, Y,
        block(alg, [X.m1], [X.m1, Z.m1], {(0, 0): ProjMap.identity(alg, X.m1)}),
        block(alg, [X.m0], [X.m0, Z.m0], {(0, 0): ProjMap.identity(alg, X.m0)}),
    )
    proj = ChainMap(
        Y, Z,
        block(alg, [X.m1, Z.m1], [Z.m1], {(0, 1): ProjMap.identity(alg, Z.m1)}),
        block(alg, [X.m0, Z.m0], [Z.m0], {(0, 1): ProjMap.identity(alg, Z.m0)}),
    )
    return Y, incl, proj


# ---------------------------------------------------------------- conflations

def _independent_rows(T, ncols, F):
    """Indices of rows of T forming a basis of its row space."""
    if not T:
        return []
    _, piv = rref(transpose(T, ncols), len(T), F)
    return piv


def is_inflation(f):
    """Exact inflation test; see the module docstring."""
    X, Y = f.src, f.tgt
    alg = X.alg
    s = block(alg, [X.m1], [X.m0, Y.m1], {(0, 0): -X.d, (1, 0): f.f1})
    T = s.top()
    return rank(T, len(X.m1), alg.field) == len(X.m1) if X.m1 else True


def cone(f, check=True):
    """Cone of an inflation f: X -> Y, as a (not necessarily minimal) two-term complex.

    Returns None when f is not an inflation, i.e. the cone does not live in
    degrees [-1, 0].
    """
    X, Y = f.src, f.tgt
    alg = X.alg
    F = alg.field
    s = block(alg, [X.m1], [X.m0, Y.m1], {(0, 0): -X.d, (1, 0): f.f1})
    T = s.top()
    if X.m1 and rank(T, len(X.m1), F) != len(X.m1):
        return None
    piv = set(_independent_rows(T, len(X.m1), F)) if X.m1 else set()
    rest = [i for i in range(len(s.tgt)) if i not in piv]
    u = block(alg, [X.m0, Y.m1], [Y.m0], {(0, 0): f.f0, (0, 1): Y.d})
    du = u.restrict(rest, None)
    return TwoTermComplex(alg, du.src, du.tgt, du)


def is_deflation(g):
    B, Z = g.src, g.tgt
    alg = B.alg
    u = block(alg, [B.m0, Z.m1], [Z.m0], {(0, 0): g.f0, (0, 1): Z.d})
    T = u.top()
    ncols = len(u.src)
    return rank(T, ncols, alg.field) == len(Z.m0) if Z.m0 else True


def cocone(g):
    """Cocone of a deflation g: B -> Z, or None if g is not a deflation."""
    B, Z = g.src, g.tgt
    alg = B.alg
    F = alg.field
    u = block(alg, [B.m0, Z.m1], [Z.m0], {(0, 0): g.f0, (0, 1): Z.d})
    T = u.top()
    ncols = len(u.src)
    if Z.m0:
        R, piv = rref(T, ncols, F)
        if len(piv) != len(Z.m0):
            return None
    else:
        piv = []
    rest = [i for i in range(ncols) if i not in set(piv)]
    d1 = block(alg, [B.m1], [B.m0, Z.m1], {(0, 0): -B.d, (1, 0): g.f1})
    dr = d1.restrict(None, rest)
    return TwoTermComplex(alg, dr.src, dr.tgt, dr)


# ---------------------------------------------------------------- cohomology

def h0(X):
    """H^0(X) = coker(x) as a module."""
    Q, _ = cokernel(projmap_morphism(X.alg, X.d))
    return Q


def h_minus1_nu(X):
    """H^-1(nu X) = ker(nu x) as a module."""
    K, _ = kernel(nakayama_morphism(X.alg, X.d))
    return K


def minimal_projective_presentation(M):
    v1, v0, d = presentation_data(M)
    return TwoTermComplex(M.alg, v1, v0, d)


def g_vector(X):
    return X.g_vector()


def euler_pairing(g, d):
    """<g, d> with <[P_j], [S_i]> = delta_ij."""
    if len(g) != len(d):
        raise ValueError("pairing of vectors of different lengths")
    return sum(a * b for a, b in zip(g, d))


def decompose_complex(X, universe=None, seed=0):
    """Indecomposable summands of X.

    With a complex universe the result is {member name: multiplicity};
    otherwise a list of (indecomposable complex, multiplicity) built from the
    decomposition of H^0 plus shifted projectives.
    """
    if universe is not None:
        return universe.multiplicities(X)
    alg = X.alg
    Xm = minimize(X)
    M = h0(Xm)
    parts = []
    left1 = Counter(Xm.m1)
    for N, k in decompose(M, seed=seed):
        P = minimal_projective_presentation(N)
        parts.append((P, k))
        for v in P.m1:
            left1[v] -= k
    if any(c < 0 for c in left1.values()):
        raise ValueError("inconsistent decomposition")
    for v in alg.vertices:
        if left1[v]:
            parts.append((shift(alg, (v,)), left1[v]))
    return parts


# ---------------------------------------------------------------- universe

class ComplexUniverse:
    """The indecomposables of K_Lambda built from a module universe.

    Every indecomposable two-term complex is either the minimal presentation
    of an indecomposable module or a shifted indecomposable projective, so a
    complete module universe gives a complete complex universe.  Names: "P1"
    for the stalk 0 -> P1, "pres(S2)" for presentations of non-projective
    modules, "P1[1]" for shifts.
    """

    def __init__(self, modules):
        from .modules import is_projective

        self.alg = alg = modules.alg
        self.modules = modules
        stalks, pres = [], []
        self.h0_name = {}
        for name, M in modules.members:
            X = minimal_projective_presentation(M)
            cname = name if is_projective(M) else f"pres({name})"
            (stalks if is_projective(M) else pres).append((cname, X))
            self.h0_name[cname] = name
        shifts = [(f"P{v}[1]", shift(alg, (v,))) for v in alg.vertices]
        for cname, _ in shifts:
            self.h0_name[cname] = None
        self.members = stalks + shifts + pres
        self.names = [n for n, _ in self.members]
        self.by_name = dict(self.members)
        self.pos = {n: i for i, n in enumerate(self.names)}
        self.module_name = {m: c for c, m in self.h0_name.items() if m is not None}
        self._g = {n: X.g_vector() for n, X in self.members}

    @property
    def complete(self):
        return self.modules.complete

    @property
    def status(self):
        return self.modules.status

    def __iter__(self):
        return iter(self.names)

    def __len__(self):
        return len(self.members)

    def __getitem__(self, name):
        try:
            return self.by_name[name]
        except KeyError:
            raise KeyError(f"unknown complex id {name!r}") from None

    def g_vector(self, name):
        return self._g[name]

    def hom_dim(self, a, b):
        return hom_k(self[a], self[b]).dim

    def ext_dim(self, a, b):
        return ext1(self[a], self[b]).dim

    def sort(self, names):
        return sorted(names, key=self.pos.__getitem__)

    def stalks(self):
        return [f"P{v}" for v in self.alg.vertices]

    def shifts(self):
        return [f"P{v}[1]" for v in self.alg.vertices]

    def multiplicities(self, X):
        """Decomposition of X as {member name: multiplicity}."""
        from .universe import IncompleteUniverseError

        Xm = minimize(X)
        out = {}
        left1 = Counter(Xm.m1)
        left0 = Counter(Xm.m0)
        if Xm.m0:
            for mname, k in self.modules.multiplicities(h0(Xm)).items():
                cname = self.module_name[mname]
                out[cname] = k
                P = self[cname]
                for v in P.m1:
                    left1[v] -= k
                for v in P.m0:
                    left0[v] -= k
        if any(left0.values()) or any(c < 0 for c in left1.values()):
            raise IncompleteUniverseError("complex does not match the decomposition of its cohomology")
        for v in self.alg.vertices:
            if left1[v]:
                out[f"P{v}[1]"] = left1[v]
        return out

    def names_of(self, X):
        return self.sort(self.multiplicities(X))

    def identify(self, X):
        m = self.multiplicities(X)
        if len(m) != 1 or next(iter(m.values())) != 1:
            raise ValueError("complex is not indecomposable")
        return next(iter(m))

    def sum_of(self, names):
        return direct_sum([self[n] for n in names], self.alg)

    def resolve(self, token):
        """Look up a member by id; module ids resolve to their presentation."""
        if token in self.by_name:
            return token
        if token in self.module_name:
            return self.module_name[token]
        raise KeyError(f"unknown object id {token!r}")
