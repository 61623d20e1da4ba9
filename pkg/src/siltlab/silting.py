"""Silting objects, approximations and closure operators in K_Lambda.

Subcategories are frozensets of member names of a ComplexUniverse; the
additive closure is implicit.  Closures are fixed-point scans over the
universe.  The scans rest on three exact facts about K_Lambda:

* Z is the source of an inflation into add(S) iff its minimal left
  add(S)-approximation is an inflation (an inflation g.a forces a to be one).
* If Z -> A -> C is a conflation with A, C in add(S) and S is closed under
  extensions, the cone of the left add(S)-approximation of Z lies in add(S).
* Dually for deflations, cocones and right approximations.

Extension closure itself is decided by realizing middle terms of E-classes
(basis classes, their sums and seeded random combinations).
"""

import itertools
import random

from .complexes import (
    ChainMap,
    cocone,
    cone,
    direct_sum,
    ext1,
    hom_k,
    is_deflation,
    is_inflation,
    middle_term,
    minimize,
    stalk,
    shift,
    zero_complex,
)
from .linalg import rank
from .projective import ProjMap, block


class SiltingError(ValueError):
    """An internal consistency check failed."""


# ---------------------------------------------------------------- approximations

def _stack_out(T, parts):
    """The map T -> sum of targets with the given components."""
    alg = T.alg
    B = direct_sum([f.tgt for f in parts], alg)
    f1 = block(alg, [T.m1], [f.tgt.m1 for f in parts], {(i, 0): f.f1 for i, f in enumerate(parts)})
    f0 = block(alg, [T.m0], [f.tgt.m0 for f in parts], {(i, 0): f.f0 for i, f in enumerate(parts)})
    if not parts:
        f1 = ProjMap.zero(alg, T.m1, ())
        f0 = ProjMap.zero(alg, T.m0, ())
    return ChainMap(T, B, f1, f0)


def _stack_in(T, parts):
    """The map from the sum of sources to T with the given components."""
    alg = T.alg
    B = direct_sum([f.src for f in parts], alg)
    f1 = block(alg, [f.src.m1 for f in parts], [T.m1], {(0, i): f.f1 for i, f in enumerate(parts)})
    f0 = block(alg, [f.src.m0 for f in parts], [T.m0], {(0, i): f.f0 for i, f in enumerate(parts)})
    if not parts:
        f1 = ProjMap.zero(alg, (), T.m1)
        f0 = ProjMap.zero(alg, (), T.m0)
    return ChainMap(B, T, f1, f0)


def _generates(comps, targets, K, T, left):
    F = T.alg.field
    for c in targets:
        H = hom_k(T, K[c]) if left else hom_k(K[c], T)
        if H.dim == 0:
            continue
        vecs = []
        for name, f in comps:
            G = hom_k(K[name], K[c]) if left else hom_k(K[c], K[name])
            for psi in G.basis():
                g = f.then(psi) if left else psi.then(f)
                v = H.normal_form(g)
                if any(v):
                    vecs.append(v)
        if (rank(vecs, H.n, F) if vecs else 0) < H.dim:
            return False
    return True


class Approximation:
    """A minimal add(C)-approximation together with its completing conflation.

    For a left approximation ``map: source -> approx`` the third term is the
    cone; for a right approximation ``map: approx -> target`` it is the cocone.
    ``third`` is None when the map is not an inflation (resp. deflation).
    """

    def __init__(self, side, obj, names, approx_names, mapping, third):
        self.side = side
        self.obj = obj
        self.names = names
        self.approx_names = approx_names
        self.map = mapping
        self.third = third

    @property
    def approx(self):
        return self.map.tgt if self.side == "left" else self.map.src

    @property
    def is_conflation(self):
        return self.third is not None


def min_left_approx(T, names, K, minimal=True):
    """Minimal left add(names)-approximation of the complex T."""
    names = K.sort(set(names))
    comps = [(c, f) for c in names for f in hom_k(T, K[c]).basis()]
    if minimal:
        i = len(comps) - 1
        while i >= 0:
            trial = comps[:i] + comps[i + 1:]
            if _generates(trial, names, K, T, True):
                comps = trial
            i -= 1
    f = _stack_out(T, [g for _, g in comps])
    third = minimize(cone(f)) if is_inflation(f) else None
    return Approximation("left", T, names, [c for c, _ in comps], f, third)


def min_right_approx(T, names, K, minimal=True):
    """Minimal right add(names)-approximation of the complex T."""
    names = K.sort(set(names))
    comps = [(c, f) for c in names for f in hom_k(K[c], T).basis()]
    if minimal:
        i = len(comps) - 1
        while i >= 0:
            trial = comps[:i] + comps[i + 1:]
            if _generates(trial, names, K, T, False):
                comps = trial
            i -= 1
    f = _stack_in(T, [g for _, g in comps])
    third = minimize(cocone(f)) if is_deflation(f) else None
    return Approximation("right", T, names, [c for c, _ in comps], f, third)


def regular(K):
    """Lambda as the stalk complex 0 -> sum of all P_i."""
    return stalk(K.alg, tuple(K.alg.vertices))


def regular_shift(K):
    return shift(K.alg, tuple(K.alg.vertices))


# ---------------------------------------------------------------- closures

def _inside(X, S, K):
    return all(n in S for n in K.multiplicities(X))


def _ext_middles(A, C, K, rng, samples):
    """Summands of middle terms of conflations K[A] -> Y -> K[C]."""
    E = ext1(K[C], K[A])
    if E.dim == 0:
        return set()
    F = K.alg.field
    classes = []
    for i in range(E.dim):
        v = [F.zero] * E.dim
        v[i] = F.one
        classes.append(v)
    classes.append([F.one] * E.dim)
    for _ in range(samples if E.dim > 1 else 0):
        classes.append([F.random(rng) for _ in range(E.dim)])
    out = set()
    for coeffs in classes:
        Y, _, _ = middle_term(E.combine(coeffs), K[A], K[C])
        out.update(K.multiplicities(Y))
    return out


def closure(S, K, ext=True, cones=False, cocones=False, seed=0, samples=3):
    """Smallest subset of the universe containing S and closed under the chosen operations.

    Summands are automatic since subcategories are sets of indecomposables.
    """
    S = set(S)
    rng = random.Random(seed)
    done_pairs = set()
    while True:
        grew = False
        if ext:
            for A in K.sort(S):
                for C in K.sort(S):
                    if (A, C) in done_pairs:
                        continue
                    done_pairs.add((A, C))
                    new = _ext_middles(A, C, K, rng, samples) - S
                    if new:
                        S |= new
                        grew = True
        for Z in K.names:
            if Z in S:
                continue
            if cocones:
                a = min_left_approx(K[Z], S, K)
                if a.is_conflation and _inside(a.third, S, K):
                    S.add(Z)
                    grew = True
                    continue
            if cones:
                r = min_right_approx(K[Z], S, K)
                if r.is_conflation and _inside(r.third, S, K):
                    S.add(Z)
                    grew = True
        if not grew:
            return frozenset(S)


def thick_closure(S, K, seed=0):
    return closure(S, K, ext=True, cones=True, cocones=True, seed=seed)


def extension_closure(S, K, seed=0):
    return closure(S, K, ext=True, seed=seed)


def closure_vee(S, K):
    """Objects Z with a conflation Z -> U0 -> Z' where U0 in add(S) and Z' already inside.

    Built from the bottom layer S up; membership of Z is tested on its
    minimal left add(S)-approximation.
    """
    S = frozenset(S)
    out = set(S)
    while True:
        grew = False
        for Z in K.names:
            if Z in out:
                continue
            a = min_left_approx(K[Z], S, K)
            if a.is_conflation and _inside(a.third, out, K):
                out.add(Z)
                grew = True
        if not grew:
            return frozenset(out)


def closure_wedge(S, K):
    """Objects Z with a conflation Z' -> U0 -> Z where U0 in add(S) and Z' already inside."""
    S = frozenset(S)
    out = set(S)
    while True:
        grew = False
        for Z in K.names:
            if Z in out:
                continue
            r = min_right_approx(K[Z], S, K)
            if r.is_conflation and _inside(r.third, out, K):
                out.add(Z)
                grew = True
        if not grew:
            return frozenset(out)


def e_perp_right(S, K):
    """S^{perp_1}: members Y with E(S, Y) = 0."""
    return frozenset(Y for Y in K.names if all(K.ext_dim(X, Y) == 0 for X in S))


def e_perp_left(S, K):
    """^{perp_1}S: members X with E(X, S) = 0."""
    return frozenset(X for X in K.names if all(K.ext_dim(X, Y) == 0 for Y in S))


# ---------------------------------------------------------------- silting

def _as_names(U, K):
    if isinstance(U, (list, tuple, set, frozenset)) and all(isinstance(u, str) for u in U):
        return frozenset(K.resolve(u) for u in U)
    return frozenset(K.multiplicities(U))


def is_presilting(U, K=None):
    """E(U, U) = 0.  ``U`` is a complex, or a set of member names when K is given."""
    if K is None:
        return ext1(U, U).dim == 0
    names = _as_names(U, K)
    return all(K.ext_dim(a, b) == 0 for a in names for b in names)


def is_silting(U, K, fast=False):
    """Presilting with thick closure the whole universe.

    With ``fast`` a presilting set with exactly n summands is accepted
    without saturation (valid when the universe is complete).  Returns None
    when the universe is incomplete and the saturation cannot decide.
    """
    names = _as_names(U, K)
    if not is_presilting(names, K):
        return False
    if fast and K.complete:
        return len(names) == K.alg.n
    full = thick_closure(names, K) == frozenset(K.names)
    if full:
        return True
    return False if K.complete else None


def compatibility_graph(K):
    import networkx as nx

    G = nx.Graph()
    nodes = [n for n in K.names if K.ext_dim(n, n) == 0]
    G.add_nodes_from(nodes)
    for a, b in itertools.combinations(nodes, 2):
        if K.ext_dim(a, b) == 0 and K.ext_dim(b, a) == 0:
            G.add_edge(a, b)
    return G


def enumerate_two_term_silting(K, verify=True):
    """All basic two-term silting objects, as sorted tuples of member names.

    Candidates are the cliques of size n in the compatibility graph; each is
    confirmed by thick-closure saturation when ``verify`` is set.
    """
    import networkx as nx

    G = compatibility_graph(K)
    n = K.alg.n
    out = []
    for clique in nx.enumerate_all_cliques(G):
        if len(clique) < n:
            continue
        if len(clique) > n:
            break
        c = tuple(K.sort(clique))
        if verify:
            ok = is_silting(c, K)
            if ok is False:
                raise SiltingError(f"{c} is a maximal presilting set but not silting")
        out.append(c)
    return sorted(out, key=lambda c: [K.pos[x] for x in c])


class LambdaSplit:
    """The conflation Lambda -> U0 -> U1 and the resulting split U = U_lambda + U_rho."""

    def __init__(self, approx, u0, u1, lam, rho):
        self.approx = approx
        self.u0 = u0
        self.u1 = u1
        self.u_lambda = lam
        self.u_rho = rho


def split_lambda_rho(U, K):
    names = _as_names(U, K)
    a = min_left_approx(regular(K), names, K)
    if not a.is_conflation:
        raise SiltingError("left approximation of Lambda is not an inflation")
    u0 = K.multiplicities(a.approx)
    u1 = K.multiplicities(a.third)
    if not set(u1) <= names:
        raise SiltingError("cone of the approximation of Lambda is not in add(U)")
    lam = frozenset(u0)
    rho = frozenset(u1)
    if lam & rho:
        raise SiltingError(f"U_lambda and U_rho share {sorted(lam & rho)}")
    return LambdaSplit(a, u0, u1, lam, rho)


def bongartz_completion(U, K):
    """Silting completion of a presilting U via the right approximation of Lambda[1]."""
    names = _as_names(U, K)
    if not is_presilting(names, K):
        raise SiltingError("Bongartz completion needs a presilting input")
    r = min_right_approx(regular_shift(K), names, K)
    if not r.is_conflation:
        raise SiltingError("right approximation of Lambda[1] is not a deflation")
    out = frozenset(names) | frozenset(K.multiplicities(r.third))
    if K.complete and not is_silting(out, K):
        raise SiltingError("Bongartz completion failed the silting check")
    return tuple(K.sort(out))


__all__ = [
    "Approximation",
    "LambdaSplit",
    "SiltingError",
    "bongartz_completion",
    "closure",
    "closure_vee",
    "closure_wedge",
    "compatibility_graph",
    "e_perp_left",
    "e_perp_right",
    "enumerate_two_term_silting",
    "extension_closure",
    "is_presilting",
    "is_silting",
    "min_left_approx",
    "min_right_approx",
    "regular",
    "regular_shift",
    "split_lambda_rho",
    "thick_closure",
]
