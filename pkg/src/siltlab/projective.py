"""Maps between finite direct sums of indecomposable projectives.

A sum is a tuple of vertices ``(v_1, ..., v_k)`` standing for
P_{v_1} + ... + P_{v_k}.  A map ``src -> tgt`` is a matrix whose entry
``(t, s)`` is an element of e_{src[s]} Lambda e_{tgt[t]}: the summand
P_{src[s]} goes to P_{tgt[t]} by right multiplication with that element.
Entries are sparse dicts {basis index: coeff}; the matrix itself is a dict
keyed by (t, s) holding only nonzero entries.
"""

class ProjMap:
    __slots__ = ("alg", "src", "tgt", "entries")

    def __init__(self, alg, src, tgt, entries=None):
        self.alg = alg
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.entries = {k: v for k, v in (entries or {}).items() if v}

    @classmethod
    def zero(cls, alg, src, tgt):
        return cls(alg, src, tgt, {})

    @classmethod
    def identity(cls, alg, verts):
        return cls(alg, verts, verts, {(i, i): {alg.e[v]: alg.field.one} for i, v in enumerate(verts)})

    def __getitem__(self, key):
        return self.entries.get(key, {})

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        return (
            isinstance(other, ProjMap)
            and self.src == other.src
            and self.tgt == other.tgt
            and self.entries == other.entries
        )

    def __repr__(self):
        body = ", ".join(f"({t},{s}): {self.alg.fmt_elem(x)}" for (t, s), x in sorted(self.entries.items()))
        return f"ProjMap({list(self.src)} -> {list(self.tgt)}; {body})"

    def then(self, other):
        """The composite ``other o self`` (first self, then other)."""
        assert self.tgt == other.src, "composition of incompatible maps"
        alg = self.alg
        F = alg.field
        by_src = {}
        for (u, t), y in other.entries.items():
            by_src.setdefault(t, []).append((u, y))
        out = {}
        for (t, s), x in self.entries.items():
            for u, y in by_src.get(t, ()):
                acc = out.setdefault((u, s), {})
                for i, a in x.items():
                    for j, b in y.items():
                        for k, c in alg.mul(i, j).items():
                            acc[k] = acc.get(k, 0) + a * b * c
        clean = {}
        for key, acc in out.items():
            acc = {k: F.norm(v) for k, v in acc.items() if F.norm(v)}
            if acc:
                clean[key] = acc
        return ProjMap(alg, self.src, other.tgt, clean)

    def __add__(self, other):
        assert self.src == other.src and self.tgt == other.tgt
        F = self.alg.field
        out = {k: dict(v) for k, v in self.entries.items()}
        for key, y in other.entries.items():
            acc = out.setdefault(key, {})
            for i, b in y.items():
                acc[i] = F.norm(acc.get(i, 0) + b)
        return ProjMap(self.alg, self.src, self.tgt, {k: {i: c for i, c in v.items() if c} for k, v in out.items()})

    def scale(self, c):
        F = self.alg.field
        c = F(c) if not isinstance(c, type(F.one)) else c
        if not c:
            return ProjMap.zero(self.alg, self.src, self.tgt)
        return ProjMap(
            self.alg, self.src, self.tgt, {k: {i: F.norm(a * c) for i, a in v.items()} for k, v in self.entries.items()}
        )

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def top(self):
        """Matrix of e-coefficients (rows = target summands)."""
        alg = self.alg
        F = alg.field
        T = [[F.zero] * len(self.src) for _ in self.tgt]
        for (t, s), x in self.entries.items():
            if self.src[s] == self.tgt[t]:
                c = x.get(alg.e[self.src[s]])
                if c:
                    T[t][s] = c
        return T

    def is_radical(self):
        return not any(any(row) for row in self.top())

    def restrict(self, src_idx=None, tgt_idx=None):
        """Submatrix on the chosen source and target summands."""
        src_idx = list(range(len(self.src))) if src_idx is None else list(src_idx)
        tgt_idx = list(range(len(self.tgt))) if tgt_idx is None else list(tgt_idx)
        sp = {s: i for i, s in enumerate(src_idx)}
        tp = {t: i for i, t in enumerate(tgt_idx)}
        ent = {(tp[t], sp[s]): x for (t, s), x in self.entries.items() if t in tp and s in sp}
        return ProjMap(self.alg, [self.src[s] for s in src_idx], [self.tgt[t] for t in tgt_idx], ent)


def block(alg, src, tgt, blocks):
    """Assemble a map from blocks.

    ``src`` and ``tgt`` are lists of sums; ``blocks[(r, c)]`` is a ProjMap
    from src[c] to tgt[r] (missing blocks are zero).
    """
    so = [0]
    for s in src:
        so.append(so[-1] + len(s))
    to = [0]
    for t in tgt:
        to.append(to[-1] + len(t))
    ent = {}
    for (r, c), m in blocks.items():
        assert m.src == tuple(src[c]) and m.tgt == tuple(tgt[r])
        for (t, s), x in m.entries.items():
            ent[(to[r] + t, so[c] + s)] = x
    return ProjMap(alg, sum(map(tuple, src), ()), sum(map(tuple, tgt), ()), ent)


class HomBasis:
    """Coordinates on Hom(sum src, sum tgt): one axis per (t, s, path)."""

    def __init__(self, alg, src, tgt):
        self.alg = alg
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.axes = []
        for t, b in enumerate(self.tgt):
            for s, a in enumerate(self.src):
                for k in alg.paths(a, b):
                    self.axes.append((t, s, k))
        self.pos = {ax: i for i, ax in enumerate(self.axes)}

    def __len__(self):
        return len(self.axes)

    def unit(self, i):
        t, s, k = self.axes[i]
        return ProjMap(self.alg, self.src, self.tgt, {(t, s): {k: self.alg.field.one}})

    def vector(self, f):
        F = self.alg.field
        v = [F.zero] * len(self.axes)
        for (t, s), x in f.entries.items():
            for k, c in x.items():
                v[self.pos[(t, s, k)]] = c
        return v

    def map(self, v):
        ent = {}
        for (t, s, k), c in zip(self.axes, v):
            if c:
                ent.setdefault((t, s), {})[k] = c
        return ProjMap(self.alg, self.src, self.tgt, ent)

    def linear(self, fn, codomain):
        """Matrix (columns = images of units) of a linear map into codomain."""
        cols = [codomain.vector(fn(self.unit(i))) for i in range(len(self.axes))]
        return [list(r) for r in zip(*cols)] if cols else [[] for _ in codomain.axes]


def sum_dims(alg, verts):
    """Dimension vector of the projective sum."""
    return tuple(sum(len(alg.paths(u, v)) for v in verts) for u in alg.vertices)


def sum_layout(alg, verts):
    """Per vertex u: list of (summand, basis path index) spanning the sum at u."""
    return {u: [(j, k) for j, v in enumerate(verts) for k in alg.paths(u, v)] for u in alg.vertices}


def injective_layout(alg, verts):
    """Per vertex u: list of (summand, basis path index) dual to paths v -> u."""
    return {u: [(j, k) for j, v in enumerate(verts) for k in alg.paths(v, u)] for u in alg.vertices}


def right_action(alg, f, verts_src, verts_tgt):
    """Per-vertex matrices of the module map given by ``f`` between projective sums."""
    F = alg.field
    ls = sum_layout(alg, verts_src)
    lt = sum_layout(alg, verts_tgt)
    mats = {}
    for u in alg.vertices:
        rows = lt[u]
        rpos = {rk: i for i, rk in enumerate(rows)}
        M = [[F.zero] * len(ls[u]) for _ in rows]
        for col, (s, q) in enumerate(ls[u]):
            for (t, s2), x in f.entries.items():
                if s2 != s:
                    continue
                for i, a in x.items():
                    for k, c in alg.mul(q, i).items():
                        r = rpos[(t, k)]
                        M[r][col] = F.norm(M[r][col] + a * c)
        mats[u] = M
    return mats


def nakayama_action(alg, f):
    """Per-vertex matrices of nu(f): nu(src) -> nu(tgt) between injective sums.

    For p in e_a Lambda e_b the induced map D(e_a Lambda) -> D(e_b Lambda)
    sends a functional phi to r -> phi(p * r).
    """
    F = alg.field
    ls = injective_layout(alg, f.src)
    lt = injective_layout(alg, f.tgt)
    mats = {}
    for u in alg.vertices:
        cpos = {ck: i for i, ck in enumerate(ls[u])}
        M = [[F.zero] * len(ls[u]) for _ in lt[u]]
        for row, (t, r) in enumerate(lt[u]):
            for (t2, s), x in f.entries.items():
                if t2 != t:
                    continue
                for i, a in x.items():
                    for k, c in alg.mul(i, r).items():
                        col = cpos[(s, k)]
                        M[row][col] = F.norm(M[row][col] + a * c)
        mats[u] = M
    return mats


def element_matrix(alg, module, x, s, t):
    """Matrix of the element x of e_s Lambda e_t acting as a map M_t -> M_s."""
    F = alg.field
    out = [[F.zero] * module.dim(t) for _ in range(module.dim(s))]
    for i, c in x.items():
        P = module.path_matrix(alg.path_basis[i])
        for r, row in enumerate(P):
            for j, a in enumerate(row):
                if a:
                    out[r][j] = F.norm(out[r][j] + c * a)
    return out


__all__ = [
    "HomBasis",
    "ProjMap",
    "block",
    "element_matrix",
    "injective_layout",
    "nakayama_action",
    "right_action",
    "sum_dims",
    "sum_layout",
]
