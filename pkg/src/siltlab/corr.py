"""Subcategories of K_Lambda and the maps between silting objects, cotorsion
pairs, thick subcategories, torsion classes and wide subcategories.

Subcategories are frozensets of member names of a ComplexUniverse (for K)
or of its ModuleUniverse (for mod).  Every test is a finite scan and is only
meaningful over a complete universe; callers see ``K.complete``.
"""

import itertools
import random

from .complexes import ChainMap, cone, direct_sum, hom_k, is_inflation
from .silting import (
    closure,
    closure_vee,
    closure_wedge,
    e_perp_left,
    e_perp_right,
    is_silting,
    min_left_approx,
    split_lambda_rho,
    thick_closure,
)
from .torsion import alpha_map, hom_perp_right, vartheta


class IncompleteError(ValueError):
    """The universe is truncated, so the requested verdict is unknown."""


def _need_complete(K):
    if not K.complete:
        raise IncompleteError("universe is truncated; the answer would only be a bound")


# ---------------------------------------------------------------- predicates

def is_extension_closed(S, K):
    return closure(S, K, ext=True) == frozenset(S)


def is_thick(S, K):
    return thick_closure(S, K) == frozenset(S)


def is_resolving(S, K):
    """Contains the projective stalks; closed under extensions, cocones, summands."""
    S = frozenset(S)
    if not set(K.stalks()) <= S:
        return False
    return closure(S, K, ext=True, cocones=True) == S


def ext_injectives(S, K):
    """Members I of S with E(S, I) = 0."""
    S = frozenset(S)
    return frozenset(i for i in S if all(K.ext_dim(x, i) == 0 for x in S))


def has_enough_injectives(S, K):
    """Every member X of S sits in a conflation X -> I -> X' with I Ext-injective in S
    and X' in S; for thick S this is S = inj(S)^vee."""
    S = frozenset(S)
    if not is_thick(S, K):
        return False
    return closure_vee(ext_injectives(S, K), K) == S


def is_cotorsion_pair(X, Y, K):
    X, Y = frozenset(X), frozenset(Y)
    return e_perp_right(X, K) == Y and e_perp_left(Y, K) == X


# ---------------------------------------------------------------- maps

def xi(U, K):
    """The cotorsion pair (add(U)^vee, add(U)^wedge)."""
    U = frozenset(U)
    return closure_vee(U, K), closure_wedge(U, K)


def psi(pair, K):
    """Basic silting generator of X cap Y."""
    X, Y = pair
    U = tuple(K.sort(frozenset(X) & frozenset(Y)))
    if not is_silting(U, K, fast=True):
        raise ValueError(f"X cap Y = {list(U)} is not silting")
    return U


def h0_names(S, K):
    """Module names of the nonzero H^0 of the members of S."""
    return frozenset(K.h0_name[s] for s in S if K.h0_name[s] is not None)


def phi(pair, K):
    """(H^0(Y), H^0(Y)^perp)."""
    _, Y = pair
    T = h0_names(Y, K)
    return T, hom_perp_right(T, K.modules)


def theta_map(tpair, K):
    """(^{perp_1}Z, Z) with Z the complexes whose H^0 lies in the torsion class."""
    T, _ = tpair
    T = frozenset(T)
    Z = frozenset(z for z in K.names if K.h0_name[z] is None or K.h0_name[z] in T)
    return e_perp_left(Z, K), Z


def _k_sums(S, bound):
    S = sorted(S)
    yield ()
    for k in range(1, bound + 1):
        yield from itertools.combinations_with_replacement(S, k)


def _k_maps(H, rng, samples):
    F = H.X.alg.field
    if H.dim == 0:
        yield H.to_map([F.zero] * H.n)
        return
    yield from H.basis()
    if H.dim > 1:
        for r in range(2, H.dim + 1):
            for idx in itertools.combinations(range(H.dim), r):
                yield H.combine([F.one if i in idx else F.zero for i in range(H.dim)])
        for _ in range(samples):
            yield H.combine([F.random(rng) for _ in range(H.dim)])


def beta_map(X, K, mult_bound=2, samples=4, seed=0):
    """Members X of the subcategory such that every conflation X -> X' -> X''
    with X' in it has X'' in it.

    Targets X' range over sums of at most ``mult_bound`` members; maps over a
    Hom basis, its subset sums and seeded random combinations.
    """
    X = frozenset(X)
    rng = random.Random(seed)
    out = set()
    for x in K.sort(X):
        ok = True
        for combo in _k_sums(X, mult_bound):
            T = direct_sum([K[c] for c in combo], K.alg)
            for f in _k_maps(hom_k(K[x], T), rng, samples):
                if not is_inflation(f):
                    continue
                if not set(K.multiplicities(cone(f))) <= X:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(x)
    return frozenset(out)


def iota_map(C, K):
    """Members that are sources of an inflation into add(C)."""
    C = frozenset(C)
    return frozenset(z for z in K.names if min_left_approx(K[z], C, K).is_conflation)


def thick_of_rho(U, K):
    return thick_closure(split_lambda_rho(U, K).u_rho, K)


def fac_of_h0(U, K):
    return vartheta(sorted(h0_names(U, K)), K.modules)


# ---------------------------------------------------------------- enumeration

def thick_subcategories(K):
    """All thick subcategories, as joins of thick closures of single members."""
    _need_complete(K)
    base = {thick_closure((), K)}
    atoms = {thick_closure((n,), K) for n in K.names}
    seen = set(base) | atoms
    frontier = list(atoms)
    while frontier:
        nxt = []
        for A in frontier:
            for B in list(seen):
                if A <= B or B <= A:
                    continue
                J = thick_closure(A | B, K)
                if J not in seen:
                    seen.add(J)
                    nxt.append(J)
        frontier = nxt
    return sorted(seen, key=lambda S: (len(S), sorted(K.pos[n] for n in S)))


def thick_dot(subcats, K):
    """DOT source for the inclusion order of the given subcategories (Hasse edges)."""
    subcats = list(subcats)
    label = lambda S: "{" + ", ".join(K.sort(S)) + "}"
    lines = ["digraph thick {", "  rankdir=BT;", "  node [shape=box];"]
    for i, S in enumerate(subcats):
        lines.append(f'  t{i} [label="{label(S)}"];')
    for i, A in enumerate(subcats):
        for j, B in enumerate(subcats):
            if i != j and A < B and not any(A < C < B for C in subcats):
                lines.append(f"  t{i} -> t{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


class CorrespondenceRow:
    def __init__(self, silting, x_part, y_part, thick, wide, torsion, u_lambda, u_rho):
        self.silting = silting
        self.x_part = x_part
        self.y_part = y_part
        self.thick = thick
        self.wide = wide
        self.torsion = torsion
        self.u_lambda = u_lambda
        self.u_rho = u_rho

    def to_json(self, K):
        mods = K.modules
        return {
            "silting": list(self.silting),
            "g_vectors": [list(K.g_vector(u)) for u in self.silting],
            "u_lambda": K.sort(self.u_lambda),
            "u_rho": K.sort(self.u_rho),
            "cotorsion_pair": {"x": K.sort(self.x_part), "y": K.sort(self.y_part)},
            "thick": K.sort(self.thick),
            "wide": sorted(self.wide, key=mods.names.index),
            "torsion": sorted(self.torsion, key=mods.names.index),
        }


def correspondence_row(U, K):
    from .stability import script_W as _w

    U = tuple(K.sort(U))
    X, Y = xi(U, K)
    sp = split_lambda_rho(U, K)
    thick = thick_closure(sp.u_rho, K)
    wide = _w(thick, K)
    torsion, _ = phi((X, Y), K)
    return CorrespondenceRow(U, X, Y, thick, wide, torsion, sp.u_lambda, sp.u_rho)


def correspondence_table(K, silting=None):
    from .silting import enumerate_two_term_silting

    _need_complete(K)
    if silting is None:
        silting = enumerate_two_term_silting(K)
    return [correspondence_row(U, K) for U in silting]


class EdgeCheck:
    def __init__(self, silting, edge, ok, left, right):
        self.silting = silting
        self.edge = edge
        self.ok = ok
        self.left = left
        self.right = right


def verify_main_diagram(K, silting=None, mult_bound=2):
    """Check the three commuting edges for every silting object.

    phi-xi:  Phi(Xi(U)) = vartheta(H^0 U)
    beta-xi: beta(Xi(U).x) = thick(U_rho)
    wide:    W(thick(U_rho)) = alpha(Fac(H^0 U))
    """
    from .silting import enumerate_two_term_silting
    from .stability import script_W as _w

    _need_complete(K)
    if silting is None:
        silting = enumerate_two_term_silting(K)
    out = []
    for U in silting:
        X, Y = xi(U, K)
        th = thick_of_rho(U, K)
        tp = fac_of_h0(U, K)
        left, right = phi((X, Y), K), tp
        out.append(EdgeCheck(U, "phi-xi", left == right, left, right))
        left = beta_map(X, K, mult_bound=mult_bound)
        out.append(EdgeCheck(U, "beta-xi", left == th, left, th))
        left, right = _w(th, K), alpha_map(tp[0], K.modules, mult_bound=mult_bound)
        out.append(EdgeCheck(U, "wide", left == right, left, right))
    return out


__all__ = [
    "CorrespondenceRow",
    "EdgeCheck",
    "IncompleteError",
    "beta_map",
    "correspondence_row",
    "correspondence_table",
    "ext_injectives",
    "fac_of_h0",
    "h0_names",
    "has_enough_injectives",
    "iota_map",
    "is_cotorsion_pair",
    "is_extension_closed",
    "is_resolving",
    "is_thick",
    "phi",
    "psi",
    "theta_map",
    "thick_dot",
    "thick_of_rho",
    "thick_subcategories",
    "verify_main_diagram",
    "xi",
]
