"""Subcategories of mod Lambda over a module universe: Fac, Hom-perps,
torsion classes, wide subcategories and the kernel-closed part of a torsion
class.

A subcategory is a frozenset of member names; its objects are the finite
direct sums of those members.  Tests quantified over maps between sums scan
sums of at most ``mult_bound`` members and, per pair, the Hom basis, its
total and seeded random combinations.
"""

import itertools
import random

from .modules import (
    cokernel,
    direct_sum,
    hom_space,
    kernel,
    extension_data,
    pushout_extension,
)


def _mod(x, U):
    return U[x] if isinstance(x, str) else x


def surjects_from(G, N):
    """Is N a quotient of a finite sum of copies of G?  Exact: the sum of all
    images of maps G -> N must be N."""
    H = hom_space(G, N)
    if N.is_zero():
        return True
    F = N.alg.field
    from .linalg import rank

    for v in N.alg.vertices:
        d = N.dim(v)
        if d == 0:
            continue
        cols = []
        for f in H.basis:
            m = f.maps[v]
            cols.extend([[m[r][c] for r in range(d)] for c in range(G.dim(v))])
        if not cols or rank(cols, d, F) < d:
            return False
    return True


def fac_closure(gens, U):
    """Members of the universe that are quotients of sums of the generators."""
    gens = [_mod(g, U) for g in gens]
    if not gens:
        return frozenset()
    G, _, _ = direct_sum(gens)
    return frozenset(n for n, N in U.members if surjects_from(G, N))


def hom_perp_right(S, U):
    """S^perp: members N with Hom(S, N) = 0."""
    return frozenset(n for n in U.names if all(U.hom_dim(s, n) == 0 for s in S))


def hom_perp_left(S, U):
    """^perp S: members N with Hom(N, S) = 0."""
    return frozenset(n for n in U.names if all(U.hom_dim(n, s) == 0 for s in S))


def is_torsion_class(T, U):
    """T = ^perp(T^perp); exact on a complete universe."""
    return frozenset(T) == hom_perp_left(hom_perp_right(T, U), U)


def is_torsion_free_class(Fc, U):
    return frozenset(Fc) == hom_perp_right(hom_perp_left(Fc, U), U)


def torsion_pair(T, U):
    return frozenset(T), hom_perp_right(T, U)


def vartheta(M, U):
    """(Fac M, M^perp) for M given as member names or modules."""
    gens = [_mod(m, U) for m in M]
    names = [m for m in M if isinstance(m, str)]
    T = fac_closure(gens, U)
    if len(names) == len(gens):
        Fc = hom_perp_right(names, U)
    else:
        Fc = frozenset(n for n, N in U.members if all(hom_space(g, N).dim == 0 for g in gens))
    return T, Fc


def _sums(S, bound):
    S = sorted(S)
    for k in range(1, bound + 1):
        yield from itertools.combinations_with_replacement(S, k)


def _maps(H, rng, samples):
    F = H.source.alg.field
    if H.dim == 0:
        return
    yield from H.basis
    if H.dim > 1:
        yield H.combine([F.one] * H.dim)
        for _ in range(samples):
            yield H.combine([F.random(rng) for _ in range(H.dim)])


def _names(M, U):
    return set(U.multiplicities(M)) if not M.is_zero() else set()


def alpha_map(T, U, mult_bound=2, samples=3, seed=0):
    """Members M of T such that every map from an object of T to M has kernel in T."""
    T = frozenset(T)
    rng = random.Random(seed)
    out = set()
    for m in U.names:
        if m not in T:
            continue
        ok = True
        for combo in _sums(T, mult_bound):
            N, _, _ = direct_sum([U[c] for c in combo])
            for g in _maps(hom_space(N, U[m]), rng, samples):
                K, _ = kernel(g)
                if not _names(K, U) <= T:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(m)
    return frozenset(out)


def _ext_middle_names(A, C, U, rng, samples):
    """Summands of middle terms of extensions 0 -> A -> E -> C -> 0."""
    _, _, inc, V, (R, piv) = extension_data(C, A)
    if V.dim == len(piv):
        return set()
    F = A.alg.field
    out = set()
    coeffs = [[F.one if i == j else F.zero for i in range(V.dim)] for j in range(V.dim)]
    coeffs.append([F.one] * V.dim)
    coeffs += [[F.random(rng) for _ in range(V.dim)] for _ in range(samples)]
    for c in coeffs:
        E = pushout_extension(inc, V.combine(c))
        out |= _names(E, U)
    return out


def is_wide(W, U, mult_bound=2, samples=3, seed=0):
    """Closed under kernels, cokernels and extensions (scanned)."""
    W = frozenset(W)
    rng = random.Random(seed)
    for A in W:
        for C in W:
            if not _ext_middle_names(U[C], U[A], U, rng, samples) <= W:
                return False
    for s1 in _sums(W, mult_bound):
        M, _, _ = direct_sum([U[c] for c in s1])
        for s2 in _sums(W, 1):
            N = U[s2[0]]
            for g in _maps(hom_space(M, N), rng, samples):
                if not _names(kernel(g)[0], U) <= W or not _names(cokernel(g)[0], U) <= W:
                    return False
            for g in _maps(hom_space(N, M), rng, samples):
                if not _names(kernel(g)[0], U) <= W or not _names(cokernel(g)[0], U) <= W:
                    return False
    return True


def functorially_finite_torsion_classes(U):
    """The torsion classes of the form Fac(M), M a sum of members (sorted by size).

    Fac(M) is always functorially finite but is a torsion class only when it
    is closed under extensions, so the closures are filtered at the end.
    """
    seen = {frozenset(): None}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for T in frontier:
            for n in U.names:
                if n in T:
                    continue
                T2 = fac_closure(sorted(T | {n}), U)
                if T2 not in seen:
                    seen[T2] = None
                    nxt.append(T2)
        frontier = nxt
    tors = [T for T in seen if is_torsion_class(T, U)]
    return sorted(tors, key=lambda T: (len(T), sorted(U.names.index(n) for n in T)))


__all__ = [
    "alpha_map",
    "fac_closure",
    "functorially_finite_torsion_classes",
    "hom_perp_left",
    "hom_perp_right",
    "is_torsion_class",
    "is_torsion_free_class",
    "is_wide",
    "surjects_from",
    "torsion_pair",
    "vartheta",
]
