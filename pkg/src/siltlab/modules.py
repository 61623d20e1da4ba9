"""Finite-dimensional modules over a bound quiver algebra.

Modules are left modules.  An arrow ``a: u -> w`` acts by a matrix
M_w -> M_u of shape dim(u) x dim(w), and a path acts by the left-to-right
product of its arrow matrices.  With this convention P_i has basis the paths
into i and Hom(P_i, M) is M_i.
"""

import json
import random
from fractions import Fraction

from .linalg import identity, matmul, nullspace, rank, reduce_vector, rref, solve, transpose
from .projective import injective_layout, nakayama_action, right_action, sum_layout


class UncertifiedError(ValueError):
    """Raised when indecomposability cannot be certified over the base field."""


class Representation:
    def __init__(self, alg, dims, mats, check=True):
        self.alg = alg
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != alg.n:
            raise ValueError("dimension vector has the wrong length")
        F = alg.field
        self.mats = {}
        for a in alg.quiver.arrows:
            m = mats.get(a.name)
            r, c = self.dim(a.source), self.dim(a.target)
            if m is None:
                m = [[F.zero] * c for _ in range(r)]
            m = [[F(x) for x in row] for row in m]
            if len(m) != r or any(len(row) != c for row in m):
                raise ValueError(f"matrix of arrow {a.name} should be {r} x {c}")
            self.mats[a.name] = m
        self._paths = {}
        if check:
            self.check()

    def dim(self, v):
        return self.dims[self.alg.vpos[v]]

    @property
    def total_dim(self):
        return sum(self.dims)

    def is_zero(self):
        return self.total_dim == 0

    def path_matrix(self, path):
        """Matrix of a path: M_{target} -> M_{source}."""
        got = self._paths.get(path)
        if got is None:
            F = self.alg.field
            if not path.arrows:
                got = identity(self.dim(path.source), F)
            else:
                got = self.mats[path.arrows[0]]
                inner = self.alg.quiver.arrow[path.arrows[0]].target
                for name in path.arrows[1:]:
                    got = _mm(got, self.mats[name], self.dim(inner), F, self.dim(self.alg.quiver.arrow[name].target))
                    inner = self.alg.quiver.arrow[name].target
            self._paths[path] = got
        return got

    def check(self):
        F = self.alg.field
        for rel in self.alg.relations:
            s, t = rel.source, rel.target
            acc = [[F.zero] * self.dim(t) for _ in range(self.dim(s))]
            for c, p in rel.terms:
                P = self.path_matrix(p)
                for i, row in enumerate(P):
                    for j, x in enumerate(row):
                        if x:
                            acc[i][j] = F.norm(acc[i][j] + c * x)
            if any(any(row) for row in acc):
                raise ValueError("representation does not satisfy the relations")

    def same_as(self, other):
        return self.dims == other.dims and self.mats == other.mats

    def key(self):
        """Hashable literal content, used for deterministic ordering."""
        return (
            self.dims,
            tuple(tuple(tuple(str(x) for x in row) for row in self.mats[a.name]) for a in self.alg.quiver.arrows),
        )

    def to_json(self):
        F = self.alg.field
        return {
            "dims": list(self.dims),
            "arrows": {
                name: [[F.fmt(x) for x in row] for row in m] for name, m in sorted(self.mats.items())
            },
        }

    @classmethod
    def from_json(cls, alg, data):
        if isinstance(data, str):
            data = json.loads(data)
        F = alg.field
        mats = {name: [[F.parse(x) for x in row] for row in m] for name, m in data["arrows"].items()}
        return cls(alg, data["dims"], mats)

    def __repr__(self):
        return f"Representation(dims={self.dims})"


def _mm(A, B, inner, F, ncols=None):
    """A B, where ``inner`` (and ``ncols`` when B may have no rows) fix the shapes."""
    if not A:
        return []
    if inner == 0:
        if ncols is None:
            ncols = len(B[0]) if B else 0
        return [[F.zero] * ncols for _ in A]
    if not B or not B[0]:
        return [[] for _ in A]
    return matmul(A, B, F)


def _zero_mat(r, c, F):
    return [[F.zero] * c for _ in range(r)]


class ModuleMorphism:
    def __init__(self, source, target, maps, check=False):
        self.source = source
        self.target = target
        alg = source.alg
        F = alg.field
        self.maps = {}
        for v in alg.vertices:
            m = maps.get(v)
            if m is None:
                m = _zero_mat(target.dim(v), source.dim(v), F)
            self.maps[v] = m
        if check:
            self.check()

    @property
    def alg(self):
        return self.source.alg

    def check(self):
        alg = self.alg
        F = alg.field
        for a in alg.quiver.arrows:
            u, w = a.source, a.target
            lhs = _mm(self.maps[u], self.source.mats[a.name], self.source.dim(u), F, self.source.dim(w))
            rhs = _mm(self.target.mats[a.name], self.maps[w], self.target.dim(w), F, self.source.dim(w))
            if lhs != rhs:
                raise ValueError("maps do not intertwine the arrow actions")

    def then(self, other):
        """The composite ``other o self``."""
        F = self.alg.field
        maps = {v: _mm(other.maps[v], self.maps[v], self.target.dim(v), F, self.source.dim(v)) for v in self.alg.vertices}
        return ModuleMorphism(self.source, other.target, maps)

    def __add__(self, other):
        F = self.alg.field
        maps = {
            v: [[F.norm(a + b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.maps[v], other.maps[v])]
            for v in self.alg.vertices
        }
        return ModuleMorphism(self.source, self.target, maps)

    def scale(self, c):
        F = self.alg.field
        c = F(c)
        return ModuleMorphism(
            self.source, self.target, {v: [[F.norm(c * a) for a in row] for row in m] for v, m in self.maps.items()}
        )

    def vector(self):
        return [x for v in self.alg.vertices for row in self.maps[v] for x in row]

    def is_zero(self):
        return not any(self.vector())

    def rank(self):
        F = self.alg.field
        return sum(rank(self.maps[v], self.source.dim(v), F) if self.maps[v] else 0 for v in self.alg.vertices)

    def is_injective(self):
        return self.rank() == self.source.total_dim

    def is_surjective(self):
        return self.rank() == self.target.total_dim

    def is_iso(self):
        return self.source.dims == self.target.dims and self.is_injective()

    def trace_at(self, v):
        m = self.maps[v]
        F = self.alg.field
        return F.norm(sum((m[i][i] for i in range(len(m))), F.zero))

    def trace(self):
        F = self.alg.field
        return F.norm(sum((self.trace_at(v) for v in self.alg.vertices), F.zero))

    def power(self, k):
        out = identity_morphism(self.source)
        for _ in range(k):
            out = out.then(self)
        return out


def identity_morphism(M):
    F = M.alg.field
    return ModuleMorphism(M, M, {v: identity(M.dim(v), F) for v in M.alg.vertices})


def zero_morphism(M, N):
    return ModuleMorphism(M, N, {})


class HomSpace:
    def __init__(self, source, target, basis):
        self.source = source
        self.target = target
        self.basis = basis

    @property
    def dim(self):
        return len(self.basis)

    def combine(self, coeffs):
        out = zero_morphism(self.source, self.target)
        for c, f in zip(coeffs, self.basis):
            if c:
                out = out + f.scale(c)
        return out

    def coordinates(self, f):
        """Coordinates of a morphism in this basis (None if not in the span)."""
        F = self.source.alg.field
        if not self.basis:
            return [] if f.is_zero() else None
        A = transpose([b.vector() for b in self.basis])
        return solve(A, f.vector(), len(self.basis), F)


def hom_space(M, N):
    """Basis of Hom(M, N) from the intertwining linear system."""
    alg = M.alg
    F = alg.field
    off = {}
    n = 0
    for v in alg.vertices:
        off[v] = n
        n += N.dim(v) * M.dim(v)
    if n == 0:
        return HomSpace(M, N, [])
    rows = []
    for a in alg.quiver.arrows:
        u, w = a.source, a.target
        Ma, Na = M.mats[a.name], N.mats[a.name]
        mu, mw, nu, nw = M.dim(u), M.dim(w), N.dim(u), N.dim(w)
        for r in range(nu):
            for c in range(mw):
                row = [F.zero] * n
                # (f_u M_a)[r][c] - (N_a f_w)[r][c]
                for k in range(mu):
                    x = Ma[k][c]
                    if x:
                        j = off[u] + r * mu + k
                        row[j] = F.norm(row[j] + x)
                for k in range(nw):
                    x = Na[r][k]
                    if x:
                        j = off[w] + k * mw + c
                        row[j] = F.norm(row[j] - x)
                if any(row):
                    rows.append(row)
    basis = []
    for vec in nullspace(rows, n, F):
        maps = {}
        for v in alg.vertices:
            r, c = N.dim(v), M.dim(v)
            maps[v] = [vec[off[v] + i * c: off[v] + (i + 1) * c] for i in range(r)]
        basis.append(ModuleMorphism(M, N, maps))
    return HomSpace(M, N, basis)


def hom_dim(M, N):
    return hom_space(M, N).dim


# ---------------------------------------------------------------- constructions

def _solve_cols(A, Y, F):
    """X with A X = Y, for A of full column rank (raises when impossible)."""
    m = len(A)
    k = len(A[0]) if A else 0
    n = len(Y[0]) if Y else 0
    if k == 0:
        if any(any(r) for r in Y):
            raise ValueError("not in the column space")
        return []
    aug = [list(A[i]) + list(Y[i]) for i in range(m)]
    R, piv = rref(aug, k + n, F)
    if piv[:k] != list(range(k)) or (len(piv) > k):
        raise ValueError("not in the column space")
    return [R[i][k:] for i in range(k)]


def submodule(M, spaces):
    """Submodule with the given per-vertex bases (lists of vectors), plus inclusion.

    The spaces must be stable under the arrow actions.
    """
    alg = M.alg
    F = alg.field
    B = {v: transpose(spaces[v], M.dim(v)) if spaces[v] else _zero_mat(M.dim(v), 0, F) for v in alg.vertices}
    dims = [len(spaces[v]) for v in alg.vertices]
    mats = {}
    for a in alg.quiver.arrows:
        u, w = a.source, a.target
        if not spaces[w] or not spaces[u]:
            mats[a.name] = _zero_mat(len(spaces[u]), len(spaces[w]), F)
            continue
        Y = _mm(M.mats[a.name], B[w], M.dim(w), F, len(spaces[w]))
        mats[a.name] = _solve_cols(B[u], Y, F)
    S = Representation(alg, dims, mats, check=False)
    return S, ModuleMorphism(S, M, B)


def kernel(f):
    alg = f.alg
    F = alg.field
    spaces = {v: nullspace(f.maps[v], f.source.dim(v), F) for v in alg.vertices}
    return submodule(f.source, spaces)


def image(f):
    alg = f.alg
    F = alg.field
    spaces = {}
    for v in alg.vertices:
        cols = transpose(f.maps[v], f.source.dim(v))
        spaces[v] = rref(cols, f.target.dim(v), F)[0] if cols else []
    return submodule(f.target, spaces)


def quotient(M, spaces):
    """Quotient of M by the stable subspaces given per vertex; returns (Q, projection)."""
    alg = M.alg
    F = alg.field
    proj = {}
    keep = {}
    for v in alg.vertices:
        d = M.dim(v)
        R, piv = rref(spaces[v], d, F) if spaces[v] else ([], [])
        pset = set(piv)
        J = [j for j in range(d) if j not in pset]
        keep[v] = J
        P = _zero_mat(len(J), d, F)
        jpos = {j: i for i, j in enumerate(J)}
        for j in range(d):
            e = [F.zero] * d
            e[j] = F.one
            rem = reduce_vector(R, piv, e, F)
            for jj in J:
                if rem[jj]:
                    P[jpos[jj]][j] = rem[jj]
        proj[v] = P
    mats = {}
    for a in alg.quiver.arrows:
        u, w = a.source, a.target
        Ma = M.mats[a.name]
        incl = [[Ma[r][j] for j in keep[w]] for r in range(M.dim(u))]
        mats[a.name] = _mm(proj[u], incl, M.dim(u), F, len(keep[w])) if keep[u] else []
        if not keep[u]:
            mats[a.name] = []
    Q = Representation(alg, [len(keep[v]) for v in alg.vertices], mats, check=False)
    return Q, ModuleMorphism(M, Q, proj)


def cokernel(f):
    alg = f.alg
    F = alg.field
    spaces = {}
    for v in alg.vertices:
        cols = transpose(f.maps[v], f.source.dim(v))
        spaces[v] = [c for c in cols if any(c)]
    return quotient(f.target, spaces)


def direct_sum(modules, alg=None):
    """Direct sum, with injection and projection morphisms."""
    if not modules:
        return zero_module(alg), [], []
    alg = modules[0].alg
    F = alg.field
    dims = [sum(M.dim(v) for M in modules) for v in alg.vertices]
    mats = {}
    for a in alg.quiver.arrows:
        r = sum(M.dim(a.source) for M in modules)
        c = sum(M.dim(a.target) for M in modules)
        m = _zero_mat(r, c, F)
        ro = co = 0
        for M in modules:
            Ma = M.mats[a.name]
            for i, row in enumerate(Ma):
                for j, x in enumerate(row):
                    m[ro + i][co + j] = x
            ro += M.dim(a.source)
            co += M.dim(a.target)
        mats[a.name] = m
    S = Representation(alg, dims, mats, check=False)
    incs, projs = [], []
    offs = {v: 0 for v in alg.vertices}
    for M in modules:
        inc, pr = {}, {}
        for v in alg.vertices:
            d, D, o = M.dim(v), S.dim(v), offs[v]
            inc[v] = [[F.one if i == o + j else F.zero for j in range(d)] for i in range(D)]
            pr[v] = [[F.one if j == o + i else F.zero for j in range(D)] for i in range(d)]
            offs[v] += d
        incs.append(ModuleMorphism(M, S, inc))
        projs.append(ModuleMorphism(S, M, pr))
    return S, incs, projs


def zero_module(alg):
    return Representation(alg, [0] * alg.n, {}, check=False)


def simple(alg, i):
    if i not in alg.vpos:
        raise ValueError(f"unknown vertex {i}")
    return Representation(alg, [1 if v == i else 0 for v in alg.vertices], {})


def projective_sum(alg, verts):
    """The module P_{v_1} + ... + P_{v_k}."""
    F = alg.field
    lay = sum_layout(alg, verts)
    pos = {u: {x: i for i, x in enumerate(lay[u])} for u in alg.vertices}
    mats = {}
    for a in alg.quiver.arrows:
        u, w = a.source, a.target
        arrow_idx = alg.index.get(alg.path(a.name))
        m = _zero_mat(len(lay[u]), len(lay[w]), F)
        if arrow_idx is not None:
            for col, (s, q) in enumerate(lay[w]):
                for k, c in alg.mul(arrow_idx, q).items():
                    m[pos[u][(s, k)]][col] = c
        mats[a.name] = m
    return Representation(alg, [len(lay[v]) for v in alg.vertices], mats, check=False)


def injective_sum(alg, verts):
    """The module I_{v_1} + ... + I_{v_k}, with (I_i)_u dual to the paths i -> u."""
    F = alg.field
    lay = injective_layout(alg, verts)
    pos = {u: {x: i for i, x in enumerate(lay[u])} for u in alg.vertices}
    mats = {}
    for a in alg.quiver.arrows:
        u, w = a.source, a.target
        arrow_idx = alg.index.get(alg.path(a.name))
        m = _zero_mat(len(lay[u]), len(lay[w]), F)
        if arrow_idx is not None:
            for row, (s, r) in enumerate(lay[u]):
                for k, c in alg.mul(r, arrow_idx).items():
                    m[row][pos[w][(s, k)]] = c
        mats[a.name] = m
    return Representation(alg, [len(lay[v]) for v in alg.vertices], mats, check=False)


def projective(alg, i):
    if i not in alg.vpos:
        raise ValueError(f"unknown vertex {i}")
    return projective_sum(alg, (i,))


def injective(alg, i):
    if i not in alg.vpos:
        raise ValueError(f"unknown vertex {i}")
    return injective_sum(alg, (i,))


def radical(M):
    """rad M as a submodule: at u, the sum of images of the arrows leaving u."""
    alg = M.alg
    F = alg.field
    spaces = {}
    for u in alg.vertices:
        vecs = []
        for a in alg.quiver.out_arrows(u):
            vecs.extend(c for c in transpose(M.mats[a.name], M.dim(a.target)) if any(c))
        spaces[u] = rref(vecs, M.dim(u), F)[0] if vecs else []
    return submodule(M, spaces)


def socle(M):
    """soc M: at v, the common kernel of the arrows ending at v."""
    alg = M.alg
    F = alg.field
    spaces = {}
    for v in alg.vertices:
        rows = [row for a in alg.quiver.in_arrows(v) for row in M.mats[a.name]]
        spaces[v] = nullspace(rows, M.dim(v), F) if rows else nullspace([], M.dim(v), F)
    return submodule(M, spaces)


def top(M):
    R, inc = radical(M)
    return cokernel(inc)


def top_vector(M):
    R, _ = radical(M)
    return tuple(M.dim(v) - R.dim(v) for v in M.alg.vertices)


def socle_vector(M):
    S, _ = socle(M)
    return S.dims


def morphism_from_projectives(M, verts, gens):
    """The map P_{verts[0]} + ... -> M sending the s-th generator to gens[s]."""
    alg = M.alg
    F = alg.field
    P = projective_sum(alg, verts)
    lay = sum_layout(alg, verts)
    maps = {}
    for u in alg.vertices:
        m = _zero_mat(M.dim(u), len(lay[u]), F)
        for col, (s, q) in enumerate(lay[u]):
            vec = [[x] for x in gens[s]]
            img = _mm(M.path_matrix(alg.path_basis[q]), vec, M.dim(verts[s]), F)
            for r in range(M.dim(u)):
                m[r][col] = img[r][0]
        maps[u] = m
    return P, ModuleMorphism(P, M, maps)


def projective_cover(M):
    """(vertex list, epimorphism from the projective sum onto M)."""
    alg = M.alg
    F = alg.field
    R, inc = radical(M)
    verts, gens = [], []
    for v in alg.vertices:
        cols = transpose(inc.maps[v], R.dim(v)) if R.dim(v) else []
        E, piv = rref(cols, M.dim(v), F) if cols else ([], [])
        pset = set(piv)
        for j in range(M.dim(v)):
            if j not in pset:
                e = [F.zero] * M.dim(v)
                e[j] = F.one
                verts.append(v)
                gens.append(e)
    P, pi = morphism_from_projectives(M, verts, gens)
    return tuple(verts), pi


def is_projective(M):
    from .projective import sum_dims

    t = top_vector(M)
    verts = [v for v, k in zip(M.alg.vertices, t) for _ in range(k)]
    return sum_dims(M.alg, verts) == M.dims


def is_injective_module(M):
    alg = M.alg
    s = socle_vector(M)
    total = [0] * alg.n
    for v, k in zip(alg.vertices, s):
        I = injective(alg, v)
        for i in range(alg.n):
            total[i] += k * I.dims[i]
    return tuple(total) == M.dims


def generator_images(alg, f_module, src_verts, tgt_verts):
    """Read a module map between projective sums back as a matrix over Lambda."""
    from .projective import ProjMap

    lay_t = sum_layout(alg, tgt_verts)
    ent = {}
    for s, v in enumerate(src_verts):
        col = sum_layout(alg, src_verts)[v].index((s, alg.e[v]))
        vec = [row[col] for row in f_module.maps[v]]
        for (t, k), c in zip(lay_t[v], vec):
            if c:
                ent.setdefault((t, s), {})[k] = c
    return ProjMap(alg, src_verts, tgt_verts, ent)


def presentation_data(M):
    """Minimal projective presentation (P^-1 vertices, P^0 vertices, differential)."""
    alg = M.alg
    verts0, pi = projective_cover(M)
    K, inc = kernel(pi)
    verts1, rho = projective_cover(K)
    d = rho.then(inc)
    return verts1, verts0, generator_images(alg, d, verts1, verts0)


def projmap_morphism(alg, f):
    """The module morphism given by a map of projective sums."""
    P = projective_sum(alg, f.src)
    Q = projective_sum(alg, f.tgt)
    return ModuleMorphism(P, Q, right_action(alg, f, f.src, f.tgt))


def nakayama_morphism(alg, f):
    I = injective_sum(alg, f.src)
    J = injective_sum(alg, f.tgt)
    return ModuleMorphism(I, J, nakayama_action(alg, f))


def nakayama(M):
    """nu M for a projective module M (extended additively over its top)."""
    if not is_projective(M):
        raise ValueError("nakayama: module is not projective")
    t = top_vector(M)
    verts = [v for v, k in zip(M.alg.vertices, t) for _ in range(k)]
    return injective_sum(M.alg, verts)


def ar_translate(M):
    """tau M = ker(nu P^-1 -> nu P^0) on the minimal presentation."""
    alg = M.alg
    _, _, d = presentation_data(M)
    K, _ = kernel(nakayama_morphism(alg, d))
    return K


def dual(M):
    """D M as a module over the opposite algebra (transposed matrices)."""
    op = M.alg.opposite
    mats = {name: transpose(m, M.dim(M.alg.quiver.arrow[name].target)) for name, m in M.mats.items()}
    return Representation(op, M.dims, mats, check=False)


def dual_back(N, alg):
    """Inverse of :func:`dual` (N lives over alg.opposite)."""
    mats = {name: transpose(m, N.dim(alg.opposite.quiver.arrow[name].target)) for name, m in N.mats.items()}
    return Representation(alg, N.dims, mats, check=False)


def ar_translate_inverse(M):
    """tau^{-1} M computed as D tau D over the opposite algebra."""
    return dual_back(ar_translate(dual(M)), M.alg)


# ---------------------------------------------------------------- endomorphisms

def scalar_part(f):
    """For an endomorphism of a module with local endomorphism ring, the
    scalar c with f - c nilpotent."""
    M = f.source
    F = M.alg.field
    for v in M.alg.vertices:
        d = M.dim(v)
        if d and (F.p is None or d % F.p):
            return F.norm(f.trace_at(v) * F.inv(F(d)))
    if F.p is not None and F.p <= 1000:
        v = next((v for v in M.alg.vertices if M.dim(v)), None)
        if v is None:
            raise UncertifiedError("zero module has no scalar part")
        d = M.dim(v)
        for c in range(F.p):
            g = [[F.norm(x - (c if i == j else 0)) for j, x in enumerate(row)] for i, row in enumerate(f.maps[v])]
            P = identity(d, F)
            for _ in range(d):
                P = _mm(P, g, d, F)
            if not any(any(r) for r in P):
                return F(c)
    raise UncertifiedError("no scalar part found")


def local_certificate(M, End=None):
    """True when End(M) is local with residue field the base field.

    Builds J = span{b - scalar(b)} and checks that it is a nilpotent ideal of
    codimension one; this works in every characteristic.
    """
    if M.is_zero():
        return False
    End = End or hom_space(M, M)
    if End.dim == 1:
        return True
    F = M.alg.field
    idm = identity_morphism(M)
    try:
        J = [b + idm.scale(-scalar_part(b)) for b in End.basis]
    except UncertifiedError:
        return False
    vecs = [j.vector() for j in J]
    n = len(vecs[0])
    R, piv = rref(vecs, n, F)
    if len(piv) != End.dim - 1:
        return False
    Jb = [ModuleMorphism(M, M, _unflatten(M, r)) for r in R]
    # J*J inside J, and powers of J eventually vanish
    layer = Jb
    for _ in range(M.total_dim + 1):
        prods = []
        for x in layer:
            for y in Jb:
                prods.append(x.then(y).vector())
        prods = [p for p in prods if any(p)]
        if not prods:
            return True
        for p in prods:
            if any(reduce_vector(R, piv, p, F)):
                return False
        P, ppiv = rref(prods, n, F)
        layer = [ModuleMorphism(M, M, _unflatten(M, r)) for r in P]
    return False


def _unflatten(M, vec):
    maps = {}
    o = 0
    for v in M.alg.vertices:
        d = M.dim(v)
        maps[v] = [list(vec[o + i * d: o + (i + 1) * d]) for i in range(d)]
        o += d * d
    return maps


def _is_nilpotent(f):
    return f.power(f.source.total_dim).is_zero()


def _split_by(f):
    """Fitting: if f is neither nilpotent nor invertible, M = ker f^N + im f^N."""
    N = f.source.total_dim
    g = f.power(N)
    if g.is_zero() or g.is_iso():
        return None
    K, _ = kernel(g)
    I, _ = image(g)
    return [K, I]


def _primary_split(f):
    """Split along distinct irreducible factors of the characteristic polynomial."""
    import sympy

    M = f.source
    F = M.alg.field
    t = sympy.Symbol("t")
    blocks = []
    for v in M.alg.vertices:
        if M.dim(v):
            blocks.append(sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) if F.p is None else int(x) for x in row] for row in f.maps[v]]))
    if not blocks:
        return None
    mat = sympy.diag(*blocks)
    poly = mat.charpoly(t).as_expr()
    if F.p is None:
        factors = sympy.factor_list(poly, t)[1]
    else:
        factors = sympy.factor_list(poly, t, modulus=F.p)[1]
    if len(factors) < 2:
        return None
    parts = []
    for g, _ in factors:
        coeffs = sympy.Poly(g, t).all_coeffs()
        gf = zero_morphism(M, M)
        power = identity_morphism(M)
        for c in reversed(coeffs):
            c = Fraction(int(sympy.numer(c)), int(sympy.denom(c)))
            gf = gf + power.scale(c)
            power = power.then(f)
        K, _ = kernel(gf.power(M.total_dim))
        parts.append(K)
    if sum(P.total_dim for P in parts) != M.total_dim or any(P.total_dim == 0 for P in parts):
        return None
    return parts


def decompose_raw(M, seed=0, trials=12):
    """Indecomposable summands of M (with repetition), by Fitting splitting."""
    if M.is_zero():
        return []
    End = hom_space(M, M)
    if local_certificate(M, End):
        return [M]
    rng = random.Random(seed)
    F = M.alg.field
    candidates = list(End.basis)
    for _ in range(trials):
        candidates.append(End.combine([F.random(rng, 5) for _ in End.basis]))
    for f in candidates:
        parts = _split_by(f)
        if parts is None:
            parts = _primary_split(f)
        if parts:
            out = []
            for P in parts:
                out.extend(decompose_raw(P, seed=seed + 1, trials=trials))
            return out
    raise UncertifiedError(f"indecomposability uncertified for module with dims {M.dims}")


def decompose(M, seed=0):
    """List of (indecomposable, multiplicity), grouping isomorphic summands."""
    groups = []
    for P in decompose_raw(M, seed=seed):
        for g in groups:
            if g[0].dims == P.dims and indecomposables_isomorphic(g[0], P):
                g[1] += 1
                break
        else:
            groups.append([P, 1])
    return [(P, m) for P, m in groups]


def pairing_rank(U, M, lam=None):
    """Multiplicity of the local indecomposable U as a summand of M."""
    F = U.alg.field
    if U.is_zero() or M.is_zero():
        return 0
    H1 = hom_space(U, M).basis
    if not H1:
        return 0
    H2 = hom_space(M, U).basis
    if not H2:
        return 0
    mat = []
    for g in H2:
        row = []
        for f in H1:
            try:
                row.append(scalar_part(f.then(g)))
            except UncertifiedError:
                raise UncertifiedError("pairing needs a module with local endomorphism ring") from None
        mat.append(row)
    return rank(mat, len(H1), F)


def indecomposables_isomorphic(M, N):
    if M.dims != N.dims:
        return False
    if M.is_zero():
        return True
    return pairing_rank(M, N) > 0


def is_isomorphic(M, N, seed=0):
    """Isomorphism test: Hom-dimension screen, sampled iso, then decomposition."""
    if M.dims != N.dims:
        return False
    if M.is_zero():
        return True
    H = hom_space(M, N)
    if H.dim == 0:
        return False
    if not (H.dim == hom_dim(N, M) == hom_dim(M, M) == hom_dim(N, N)):
        return False
    rng = random.Random(seed)
    F = M.alg.field
    for _ in range(8):
        f = H.combine([F.random(rng) for _ in H.basis])
        if f.is_iso():
            return True
    dm = decompose(M, seed)
    dn = decompose(N, seed)
    if sorted(m for _, m in dm) != sorted(m for _, m in dn):
        return False
    used = set()
    for P, m in dm:
        for j, (Q, k) in enumerate(dn):
            if j not in used and k == m and indecomposables_isomorphic(P, Q):
                used.add(j)
                break
        else:
            return False
    return True


# ---------------------------------------------------------------- extensions

def extension_data(M, N):
    """Ext^1(M, N) as Hom(Omega M, N) modulo restrictions from the cover.

    Returns (cover vertices, cover map, inclusion of Omega M,
    HomSpace(Omega, N), echelon of the restriction image with pivots).
    """
    F = M.alg.field
    verts0, pi = projective_cover(M)
    Om, inc = kernel(pi)
    V = hom_space(Om, N)
    W = [inc.then(psi) for psi in hom_space(pi.source, N).basis]
    coords = [V.coordinates(w) for w in W]
    R, piv = rref([c for c in coords if c is not None and any(c)], V.dim, F) if V.dim else ([], [])
    return verts0, pi, inc, V, (R, piv)


def ext1_dim(M, N):
    _, _, _, V, (R, piv) = extension_data(M, N)
    return V.dim - len(piv)


def pushout_extension(inc, xi):
    """Middle term of 0 -> N -> E -> M -> 0 classified by xi: Omega -> N."""
    P0 = inc.target
    N = xi.target
    S, incs, _ = direct_sum([P0, N])
    emb = inc.then(incs[0]) + xi.then(incs[1]).scale(-1)
    E, _ = cokernel(emb)
    return E


def almost_split_middle(M):
    """Middle term of the almost split sequence ending at the indecomposable,
    non-projective module M."""
    alg = M.alg
    F = alg.field
    N = ar_translate(M)
    if N.is_zero():
        raise ValueError("module is projective; there is no almost split sequence ending at it")
    verts0, pi, inc, V, (R, piv) = extension_data(M, N)
    lay = sum_layout(alg, verts0)
    End = hom_space(M, M)
    if not local_certificate(M, End):
        raise UncertifiedError("endomorphism ring is not certified local")
    idm = identity_morphism(M)
    rad = [b + idm.scale(-scalar_part(b)) for b in End.basis]
    P0 = pi.source
    Om = inc.source
    cond_rows = []
    for phi in rad:
        if phi.is_zero():
            continue
        # lift phi along the cover, generator by generator
        gens = []
        for s, v in enumerate(verts0):
            col = lay[v].index((s, alg.e[v]))
            m = [[row[col]] for row in pi.maps[v]]
            target = _mm(phi.maps[v], m, M.dim(v), F)
            y = solve(pi.maps[v], [r[0] for r in target], P0.dim(v), F)
            gens.append(y)
        _, lift = morphism_from_projectives(P0, verts0, gens)
        # restrict to Omega
        maps = {}
        for v in alg.vertices:
            if Om.dim(v) == 0:
                maps[v] = []
                continue
            Y = _mm(lift.maps[v], inc.maps[v], P0.dim(v), F, Om.dim(v))
            maps[v] = _solve_cols(inc.maps[v], Y, F)
        phi_om = ModuleMorphism(Om, Om, maps)
        cols = []
        for b in V.basis:
            c = V.coordinates(phi_om.then(b))
            cols.append(reduce_vector(R, piv, c, F))
        cond_rows.extend(transpose(cols, V.dim) if cols else [])
    sols = nullspace(cond_rows, V.dim, F)
    for c in sols:
        if any(reduce_vector(R, piv, c, F)):
            xi = V.combine(c)
            E = pushout_extension(inc, xi)
            return N, E
    raise ValueError("no almost split class found")



# ---------------------------------------------------------------- submodules

def _subspaces(d, p):
    """All subspaces of F_p^d as reduced echelon bases."""
    import itertools

    out = []
    for k in range(d + 1):
        for piv in itertools.combinations(range(d), k):
            free = [(i, j) for i, c in enumerate(piv) for j in range(c + 1, d) if j not in piv]
            for vals in itertools.product(range(p), repeat=len(free)):
                rows = [[0] * d for _ in piv]
                for i, c in enumerate(piv):
                    rows[i][c] = 1
                for (i, j), x in zip(free, vals):
                    rows[i][j] = x
                out.append(rows)
    return out


def enumerate_submodules(M, guard=6):
    """Every submodule of M over a prime field, as (submodule, inclusion) pairs."""
    import itertools

    alg = M.alg
    F = alg.field
    if F.p is None:
        raise ValueError("submodule enumeration needs a prime field; over Q the submodules form a variety")
    if M.total_dim > guard:
        raise ValueError(f"module of total dimension {M.total_dim} exceeds the enumeration guard {guard}")
    choices = [_subspaces(M.dim(v), F.p) for v in alg.vertices]
    out = []
    for combo in itertools.product(*choices):
        spaces = dict(zip(alg.vertices, combo))
        ok = True
        for a in alg.quiver.arrows:
            u, w = a.source, a.target
            if not spaces[w]:
                continue
            Ma = M.mats[a.name]
            ech = spaces[u]
            piv = [row.index(1) for row in ech]
            for vec in spaces[w]:
                img = [F.norm(sum(Ma[r][j] * vec[j] for j in range(M.dim(w)))) for r in range(M.dim(u))]
                if any(reduce_vector(ech, piv, img, F)) if ech else any(img):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(submodule(M, spaces))
    return out
