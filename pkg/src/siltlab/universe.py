"""Finite lists of indecomposable modules with stable names.

A universe is what every closure and correspondence computation scans.  It
records whether it is known to contain every indecomposable ("complete") or
was cut off by a dimension bound ("truncated").
"""

import itertools
from fractions import Fraction

from .linalg import Field
from .modules import (
    Representation,
    almost_split_middle,
    cokernel,
    ar_translate_inverse,
    decompose_raw,
    hom_dim,
    indecomposables_isomorphic,
    injective,
    is_injective_module,
    is_projective,
    local_certificate,
    pairing_rank,
    projective,
    radical,
    socle,
)


class IncompleteUniverseError(ValueError):
    """A module has a summand that is not in the universe."""


class ModuleUniverse:
    def __init__(self, alg, members, complete, notes=(), uncertified=()):
        self.alg = alg
        self.members = list(members)
        self.complete = complete
        self.notes = list(notes)
        self.uncertified = list(uncertified)
        self.names = [name for name, _ in self.members]
        self.by_name = dict(self.members)
        self._hom = {}

    def __iter__(self):
        return iter(self.names)

    def __len__(self):
        return len(self.members)

    def __getitem__(self, name):
        try:
            return self.by_name[name]
        except KeyError:
            raise KeyError(f"unknown module id {name!r}") from None

    @property
    def status(self):
        return "complete" if self.complete else "truncated"

    def hom_dim(self, a, b):
        key = (a, b)
        if key not in self._hom:
            self._hom[key] = hom_dim(self[a], self[b])
        return self._hom[key]

    def identify(self, M):
        """Name of the member isomorphic to the indecomposable M."""
        for name, U in self.members:
            if U.dims == M.dims and indecomposables_isomorphic(U, M):
                return name
        raise IncompleteUniverseError(f"indecomposable with dims {M.dims} is not in the universe")

    def multiplicities(self, M):
        """Decomposition of M as {member name: multiplicity}."""
        out = {}
        left = list(M.dims)
        for name, U in self.members:
            if not all(u <= m for u, m in zip(U.dims, left)):
                continue
            k = pairing_rank(U, M)
            if k:
                out[name] = k
                left = [m - k * u for u, m in zip(U.dims, left)]
            if not any(left):
                break
        if any(left):
            raise IncompleteUniverseError(f"module with dims {M.dims} has summands outside the universe")
        return out

    def names_of(self, M):
        return sorted(self.multiplicities(M), key=self.names.index)


def _name_modules(alg, reps):
    named = []
    P = {v: projective(alg, v) for v in alg.vertices}
    I = {v: injective(alg, v) for v in alg.vertices}
    counts = {}
    for M in reps:
        name = None
        for v in alg.vertices:
            if M.dims == P[v].dims and indecomposables_isomorphic(M, P[v]):
                name = f"P{v}"
                break
        if name is None:
            for v in alg.vertices:
                if M.dims == I[v].dims and indecomposables_isomorphic(M, I[v]):
                    name = f"I{v}"
                    break
        if name is None and M.total_dim == 1:
            name = f"S{next(v for v in alg.vertices if M.dim(v))}"
        if name is None:
            base = "M(" + ",".join(str(d) for d in M.dims) + ")"
            counts[base] = counts.get(base, 0) + 1
            name = base if counts[base] == 1 else f"{base}#{counts[base]}"
        named.append((name, M))
    return named


def _order(alg, reps):
    def key(M):
        proj = next((i for i, v in enumerate(alg.vertices) if is_projective(M) and M.dims == projective(alg, v).dims), None)
        return (0 if proj is not None else 1, proj if proj is not None else 0, M.total_dim, M.dims, M.key())

    return sorted(reps, key=key)


def _add_new(found, M):
    for U in found:
        if U.dims == M.dims and indecomposables_isomorphic(U, M):
            return False
    found.append(M)
    return True


def knit(alg, bound, seed=0):
    """Walk the Auslander-Reiten quiver from the projectives.

    Every reached module contributes tau, tau^{-1} and the middle terms of the
    almost split sequences ending at it and at its inverse translate.  If the
    walk closes without hitting the bound, the reached set is a union of
    finite components containing all projectives, hence every indecomposable.
    """
    found = []
    queue = []
    for v in alg.vertices:
        for M in (projective(alg, v), injective(alg, v)):
            if _add_new(found, M):
                queue.append(M)
    truncated = False
    done = 0
    while done < len(queue):
        M = queue[done]
        done += 1
        new = []
        # projective-injectives sit in the sequence rad P -> P + rad P/soc P -> P/soc P
        if is_projective(M):
            R, _ = radical(M)
            new.extend(decompose_raw(R, seed=seed))
        if is_injective_module(M):
            S, inc = socle(M)
            Q, _ = cokernel(inc)
            new.extend(decompose_raw(Q, seed=seed))
        if not is_projective(M):
            N, E = almost_split_middle(M)
            new.append(N)
            new.extend(decompose_raw(E, seed=seed))
        if not is_injective_module(M):
            T = ar_translate_inverse(M)
            new.append(T)
            if T.total_dim <= bound:
                _, E = almost_split_middle(T)
                new.extend(decompose_raw(E, seed=seed))
            else:
                truncated = True
        for X in new:
            if X.is_zero():
                continue
            if X.total_dim > bound:
                truncated = True
                continue
            if _add_new(found, X):
                queue.append(X)
    return found, not truncated


def _dim_vectors(n, bound):
    for total in range(1, bound + 1):
        for d in itertools.product(range(total + 1), repeat=n):
            if sum(d) == total:
                yield d


def _lift(x, p):
    x = int(x) % p
    return x - p if x > p // 2 else x


def exhaustive(alg, bound, p=2, limit=1 << 16):
    """Enumerate indecomposables over F_p by brute force, then lift to alg's field.

    Returns (certified modules over alg's field, uncertified lifts, complete flag).
    Completeness here means every tuple up to the bound was scanned; it says
    nothing about modules that are not defined over the prime subfield.
    """
    Fp = Field(p)
    algp = alg.with_field(Fp)
    arrows = alg.quiver.arrows
    found = []
    odd = []
    uncertified = []
    scanned_all = True
    for d in _dim_vectors(alg.n, bound):
        dv = dict(zip(alg.vertices, d))
        shapes = [(dv[a.source], dv[a.target]) for a in arrows]
        entries = sum(r * c for r, c in shapes)
        if p ** entries > limit:
            scanned_all = False
            continue
        local_p = []
        for vals in itertools.product(range(p), repeat=entries):
            mats = {}
            k = 0
            for a, (r, c) in zip(arrows, shapes):
                mats[a.name] = [list(vals[k + i * c: k + (i + 1) * c]) for i in range(r)]
                k += r * c
            try:
                M = Representation(algp, d, mats)
            except ValueError:
                continue
            if local_certificate(M):
                _add_new(local_p, M)
            elif _maybe_indecomposable(M):
                if not any(U.dims == M.dims and _iso_small(U, M) for U in odd):
                    odd.append(M)
        for M in local_p:
            L = _lift_rep(alg, M, p)
            if L is None:
                continue
            if local_certificate(L):
                _add_new(found, L)
            else:
                _add_uncertified(uncertified, L)
    for M in odd:
        L = _lift_rep(alg, M, p)
        if L is not None:
            _add_uncertified(uncertified, L)
    return found, uncertified, scanned_all


def _add_uncertified(bucket, L):
    from .modules import is_isomorphic

    if not any(U.dims == L.dims and is_isomorphic(U, L) for U in bucket):
        bucket.append(L)


def _lift_rep(alg, M, p):
    mats = {name: [[Fraction(_lift(x, p)) for x in row] for row in m] for name, m in M.mats.items()}
    try:
        return Representation(alg, M.dims, mats)
    except ValueError:
        return None


def _maybe_indecomposable(M):
    """Brute-force check over a small prime field that M does not split."""
    from .modules import hom_space

    F = M.alg.field
    End = hom_space(M, M)
    N = M.total_dim
    for f in End.basis:
        g = f.power(N)
        if not g.is_zero() and not g.is_iso():
            return False
    if F.p ** End.dim > 4096:
        return True
    for coeffs in itertools.product(range(F.p), repeat=End.dim):
        f = End.combine(coeffs)
        g = f.power(N)
        if not g.is_zero() and not g.is_iso():
            return False
    return True


def _iso_small(M, N):
    from .modules import hom_space

    F = M.alg.field
    H = hom_space(M, N)
    if H.dim == 0 or F.p ** H.dim > 4096:
        return False
    return any(H.combine(c).is_iso() for c in itertools.product(range(F.p), repeat=H.dim))


def enumerate_indecomposable_modules(alg, bound=8, strategy="auto", prime=2, seed=0):
    """Indecomposable modules up to total dimension ``bound``.

    ``strategy`` is "knit" (Auslander-Reiten walk), "exhaustive" (brute force
    over F_prime, lifted) or "auto" (knit, and add the brute-force scan when
    the walk does not close).
    """
    notes = []
    uncertified = []
    if strategy in ("knit", "auto"):
        reps, complete = knit(alg, bound, seed=seed)
        notes.append("knitting closed" if complete else f"knitting truncated at total dimension {bound}")
    else:
        reps, complete = [], False
    if strategy == "exhaustive" or (strategy == "auto" and not complete):
        extra, uncertified, _ = exhaustive(alg, bound, p=prime)
        for M in extra:
            _add_new(reps, M)
        notes.append(f"exhaustive scan over F_{prime} up to total dimension {bound}")
        if uncertified:
            notes.append(f"{len(uncertified)} lifted module(s) with non-split endomorphism residue excluded")
        complete = False
    reps = _order(alg, reps)
    members = _name_modules(alg, reps)
    return ModuleUniverse(alg, members, complete, notes, uncertified)


def ar_quiver_edges(U):
    """Arrows of the Auslander-Reiten quiver among the members, as (from, to, multiplicity)."""
    edges = {}
    for name, M in U.members:
        if is_projective(M):
            R, _ = radical(M)
            if not R.is_zero():
                for src, k in U.multiplicities(R).items():
                    edges[(src, name)] = max(edges.get((src, name), 0), k)
            continue
        try:
            T, E = almost_split_middle(M)
            mids = U.multiplicities(E)
            tname = U.identify(T)
        except IncompleteUniverseError:
            continue
        for mid, k in mids.items():
            edges[(mid, name)] = max(edges.get((mid, name), 0), k)
            edges[(tname, mid)] = max(edges.get((tname, mid), 0), k)
    pos = {n: i for i, n in enumerate(U.names)}
    return sorted(((a, b, k) for (a, b), k in edges.items()), key=lambda e: (pos[e[0]], pos[e[1]]))


def ar_quiver_dot(U):
    lines = ["digraph ar {", "  rankdir=LR;"]
    for name, M in U.members:
        dims = ",".join(str(d) for d in M.dims)
        lines.append(f'  "{name}" [label="{name}\\n({dims})"];')
    for a, b, k in ar_quiver_edges(U):
        extra = f' [label="{k}"]' if k > 1 else ""
        lines.append(f'  "{a}" -> "{b}"{extra};')
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "IncompleteUniverseError",
    "ar_quiver_dot",
    "ar_quiver_edges",
    "ModuleUniverse",
    "enumerate_indecomposable_modules",
    "exhaustive",
    "knit",
]
