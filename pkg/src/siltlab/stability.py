"""Semistability of two-term complexes against modules and weights.

* M-semistability: the map x*: Hom(X^0, M) -> Hom(X^-1, M) is invertible;
  its determinant is the determinantal semi-invariant s(x, M).
* King semistability of a module for a weight theta (prime fields only,
  by enumerating submodules).
* Numerical d-semistability of a complex: <[X], d> = 0 and no inflation
  Y -> X has <[Y], d> < 0.
"""

import itertools
import random

from .complexes import (
    direct_sum,
    euler_pairing,
    h0,
    h_minus1_nu,
    hom_k,
    is_inflation,
    minimize,
)
from .linalg import det
from .modules import enumerate_submodules, hom_dim
from .projective import element_matrix


class PairingError(ValueError):
    """The semi-invariant needs <[X], [M]> = 0."""

    def __init__(self, pairing):
        super().__init__(f"x* is not square: <[X], [M]> = {pairing}")
        self.pairing = pairing


def induced_map(X, M):
    """Matrix of x*: Hom(X^0, M) -> Hom(X^-1, M), using Hom(P_v, M) = M_v.

    Columns run over the degree-0 summands, rows over the degree -1 summands.
    """
    alg = X.alg
    F = alg.field
    roff, coff = [0], [0]
    for v in X.m1:
        roff.append(roff[-1] + M.dim(v))
    for v in X.m0:
        coff.append(coff[-1] + M.dim(v))
    A = [[F.zero] * coff[-1] for _ in range(roff[-1])]
    for (t, s), x in X.d.entries.items():
        B = element_matrix(alg, M, x, X.m1[s], X.m0[t])
        for i, row in enumerate(B):
            for j, c in enumerate(row):
                if c:
                    A[roff[s] + i][coff[t] + j] = c
    return A, roff[-1], coff[-1]


def pairing(X, M):
    return euler_pairing(X.g_vector(), M.dims)


def det_semi_invariant(X, M):
    """s(x, M) for the given representative of X (raises PairingError unless square)."""
    p = pairing(X, M)
    if p != 0:
        raise PairingError(p)
    A, r, _ = induced_map(X, M)
    return det(A, X.alg.field) if r else X.alg.field.one


def is_M_semistable(X, M):
    if pairing(X, M) != 0:
        return False
    return det_semi_invariant(minimize(X), M) != 0


def script_T(H, K):
    """Members X of K that are N-semistable for every module N in H (names or modules)."""
    mods = [K.modules[h] if isinstance(h, str) else h for h in H]
    return frozenset(x for x in K.names if all(is_M_semistable(K[x], N) for N in mods))


def script_W(C, K):
    """Members N of the module universe such that every complex in C is N-semistable."""
    comps = [K[c] if isinstance(c, str) else c for c in C]
    return frozenset(n for n, N in K.modules.members if all(is_M_semistable(X, N) for X in comps))


# ---------------------------------------------------------------- King

def king_semistable(M, theta):
    """<theta, [M]> = 0 and <theta, [N]> <= 0 for every submodule N (prime field only)."""
    if euler_pairing(theta, M.dims) != 0:
        return False
    return all(euler_pairing(theta, N.dims) <= 0 for N, _ in enumerate_submodules(M))


# ---------------------------------------------------------------- W_theta

def w_theta_members(theta, K, mult_bound=2):
    """Union of W(X) over sums X of at most ``mult_bound`` members with [X] a positive
    multiple of theta.

    Returns (members, exact): exact is True when some such X is presilting,
    in which case W(X) is all of W_theta and equals ^perp H^-1(nu X) cap H^0(X)^perp.
    """
    theta = tuple(theta)
    mods = K.modules
    if not any(theta):
        return frozenset(mods.names), True
    out = set()
    exact = False
    for k in range(1, mult_bound + 1):
        for combo in itertools.combinations_with_replacement(K.names, k):
            g = tuple(sum(c) for c in zip(*(K.g_vector(x) for x in combo)))
            n = _multiple(g, theta)
            if not n:
                continue
            W = script_W(combo, K)
            out |= W
            if not exact and all(K.ext_dim(a, b) == 0 for a in combo for b in combo):
                X = direct_sum([K[c] for c in combo], K.alg)
                if W == perp_description(X, K):
                    exact = True
                else:
                    raise AssertionError("W(U) differs from its perpendicular description")
    return frozenset(out), exact


def _multiple(g, theta):
    """n > 0 with g = n theta, else 0."""
    n = None
    for a, b in zip(g, theta):
        if b == 0:
            if a != 0:
                return 0
            continue
        if a % b:
            return 0
        q = a // b
        if n is None:
            n = q
        elif n != q:
            return 0
    return n if n and n > 0 else 0


def perp_description(U, K):
    """^perp H^-1(nu U) cap H^0(U)^perp over the module universe."""
    A = h_minus1_nu(U)
    B = h0(U)
    return frozenset(
        n for n, N in K.modules.members if hom_dim(N, A) == 0 and hom_dim(B, N) == 0
    )


# ---------------------------------------------------------------- numerical

class NumericalVerdict:
    def __init__(self, semistable, witness=None, pairing=None, budget=None, seed=0):
        self.semistable = semistable
        self.witness = witness
        self.pairing = pairing
        self.budget = budget
        self.seed = seed

    def __bool__(self):
        return self.semistable is not False

    def to_json(self):
        out = {"semistable": self.semistable, "budget": self.budget, "seed": self.seed}
        if self.witness is not None:
            out["witness"] = {"source": self.witness, "pairing": self.pairing}
        return out


def has_inflation(Y, X, samples=4, seed=0):
    """Does some chain map Y -> X pass the inflation test?

    Inflations form a Zariski-open subset of Hom(Y, X), so a generic map
    decides; the Hom basis and seeded random combinations are tried.
    """
    H = hom_k(Y, X)
    F = X.alg.field
    rng = random.Random(seed)
    if H.dim == 0:
        return is_inflation(H.to_map([F.zero] * H.n))
    cands = list(H.basis())
    cands += [H.combine([F.random(rng) for _ in range(H.dim)]) for _ in range(samples)]
    return any(is_inflation(f) for f in cands)


def is_numerically_semistable(X, d, K, mult_bound=2, samples=4, seed=0):
    """Numerical d-semistability, searching inflation sources among the universe.

    A summand of an inflation source is again a source and the pairing is
    additive, so it is enough to test indecomposable sources.  ``mult_bound``
    also admits sums of up to that many members as sources (a redundant
    cross-check recorded in the budget).
    """
    budget = {"mult_bound": mult_bound, "samples": samples, "universe": K.status}
    p = euler_pairing(X.g_vector(), d)
    if p != 0:
        return NumericalVerdict(False, witness=None, pairing=p, budget=budget, seed=seed)
    if minimize(X).is_zero():
        return NumericalVerdict(True, budget=budget, seed=seed)
    for k in range(1, mult_bound + 1):
        for combo in itertools.combinations_with_replacement(K.names, k):
            py = euler_pairing(tuple(sum(c) for c in zip(*(K.g_vector(y) for y in combo))), d)
            if py >= 0:
                continue
            Y = direct_sum([K[c] for c in combo], K.alg)
            if has_inflation(Y, X, samples, seed):
                return NumericalVerdict(False, witness=list(combo), pairing=py, budget=budget, seed=seed)
    return NumericalVerdict("true-within-budget", budget=budget, seed=seed)


def check_M_implies_numerical(X, M, K, mult_bound=1, samples=4, seed=0):
    """None when consistent, else the refuting verdict."""
    if not is_M_semistable(X, M):
        return None
    v = is_numerically_semistable(X, M.dims, K, mult_bound=mult_bound, samples=samples, seed=seed)
    return None if v else v


__all__ = [
    "NumericalVerdict",
    "PairingError",
    "check_M_implies_numerical",
    "det_semi_invariant",
    "has_inflation",
    "induced_map",
    "is_M_semistable",
    "is_numerically_semistable",
    "king_semistable",
    "pairing",
    "perp_description",
    "script_T",
    "script_W",
    "w_theta_members",
]
