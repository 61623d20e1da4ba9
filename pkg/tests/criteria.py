"""The eight acceptance checks as plain functions returning (ok, detail)."""

import functools
import random
import time

import oracle
from conftest import frozen, load, silting
from siltlab.complexes import direct_sum, euler_pairing, parse_complex
from siltlab.corr import (
    beta_map,
    has_enough_injectives,
    iota_map,
    is_resolving,
    is_thick,
    thick_subcategories,
    verify_main_diagram,
    xi,
    correspondence_table,
)
from siltlab.modules import Representation, hom_dim, projective_sum
from siltlab.silting import closure, enumerate_two_term_silting
from siltlab.stability import (
    check_M_implies_numerical,
    det_semi_invariant,
    is_M_semistable,
    is_numerically_semistable,
    pairing,
    script_T,
    script_W,
)
from siltlab.torsion import is_wide

# Expected correspondence table for A3, one entry per silting object.  Complex ids:
# "P1" is the stalk 0 -> P1, "P1[1]" is P1 -> 0 and "pres(M)" is the minimal
# presentation of M.  Module ids follow the AR quiver P1, P2, P3 = I1, S2, I2, I3.
TABLE = [
    dict(silting={"P1", "P2", "P3"},
         x={"P1", "P2", "P3"},
         y={"P1", "P2", "P3", "P1[1]", "P2[1]", "P3[1]", "pres(S2)", "pres(I2)", "pres(I3)"},
         thick=set(),
         wide={"P1", "P2", "P3", "S2", "I2", "I3"},
         torsion={"P1", "P2", "P3", "S2", "I2", "I3"}),
    dict(silting={"P1[1]", "P2[1]", "P3[1]"},
         x={"P1", "P2", "P3", "P1[1]", "P2[1]", "P3[1]", "pres(S2)", "pres(I2)", "pres(I3)"},
         y={"P1[1]", "P2[1]", "P3[1]"},
         thick={"P1", "P2", "P3", "P1[1]", "P2[1]", "P3[1]", "pres(S2)", "pres(I2)", "pres(I3)"},
         wide=set(),
         torsion=set()),
    dict(silting={"P3", "pres(I2)", "pres(S2)"},
         x={"P1", "P2", "P3", "pres(I2)", "pres(S2)"},
         y={"P3", "P1[1]", "P2[1]", "P3[1]", "pres(S2)", "pres(I2)", "pres(I3)"},
         thick={"pres(I2)"},
         wide={"P3", "S2"},
         torsion={"P3", "S2", "I2", "I3"}),
    dict(silting={"P1[1]", "pres(I2)", "pres(S2)"},
         x={"P1", "P2", "P3", "P1[1]", "pres(I2)", "pres(S2)"},
         y={"P1[1]", "P2[1]", "P3[1]", "pres(S2)", "pres(I2)", "pres(I3)"},
         thick={"P1", "P1[1]"},
         wide={"S2", "I2", "I3"},
         torsion={"S2", "I2", "I3"}),
    dict(silting={"P2", "P3", "pres(S2)"},
         x={"P1", "P2", "P3", "pres(S2)"},
         y={"P2", "P3", "P1[1]", "P2[1]", "P3[1]", "pres(S2)", "pres(I2)", "pres(I3)"},
         thick={"pres(S2)"},
         wide={"P2", "P3", "I3"},
         torsion={"P2", "P3", "S2", "I2", "I3"}),
    dict(silting={"P1", "P3", "pres(I3)"},
         x={"P1", "P2", "P3", "pres(I3)"},
         y={"P1", "P3", "P1[1]", "P2[1]", "P3[1]", "pres(I2)", "pres(I3)"},
         thick={"pres(I3)"},
         wide={"P1", "P3", "I2"},
         torsion={"P1", "P3", "I2", "I3"}),
    dict(silting={"P1", "P2[1]", "pres(I3)"},
         x={"P1", "P2", "P3", "P2[1]", "pres(I3)"},
         y={"P1", "P1[1]", "P2[1]", "P3[1]", "pres(I3)"},
         thick={"P2", "P2[1]"},
         wide={"P1", "I3"},
         torsion={"P1", "I3"}),
    dict(silting={"P1", "P2", "P3[1]"},
         x={"P1", "P2", "P3", "P3[1]"},
         y={"P1", "P2", "P1[1]", "P2[1]", "P3[1]", "pres(S2)"},
         thick={"P3", "P3[1]"},
         wide={"P1", "P2", "S2"},
         torsion={"P1", "P2", "S2"}),
    dict(silting={"P1", "P2[1]", "P3[1]"},
         x={"P1", "P2", "P3", "P2[1]", "P3[1]", "pres(I3)"},
         y={"P1", "P1[1]", "P2[1]", "P3[1]"},
         thick={"P2", "P3", "P2[1]", "P3[1]", "pres(I3)"},
         wide={"P1"},
         torsion={"P1"}),
    dict(silting={"P1[1]", "P3[1]", "pres(S2)"},
         x={"P1", "P2", "P3", "P1[1]", "P3[1]", "pres(S2)", "pres(I2)"},
         y={"P1[1]", "P2[1]", "P3[1]", "pres(S2)"},
         thick={"P1", "P3", "P1[1]", "P3[1]", "pres(I2)"},
         wide={"S2"},
         torsion={"S2"}),
    dict(silting={"P1[1]", "P2[1]", "pres(I3)"},
         x={"P1", "P2", "P3", "P1[1]", "P2[1]", "pres(S2)", "pres(I2)", "pres(I3)"},
         y={"P1[1]", "P2[1]", "P3[1]", "pres(I3)"},
         thick={"P1", "P2", "P1[1]", "P2[1]", "pres(S2)"},
         wide={"I3"},
         torsion={"I3"}),
    dict(silting={"P2", "P3[1]", "pres(S2)"},
         x={"P1", "P2", "P3", "P3[1]", "pres(S2)"},
         y={"P2", "P1[1]", "P2[1]", "P3[1]", "pres(S2)"},
         thick={"P3", "P3[1]", "pres(S2)"},
         wide={"P2"},
         torsion={"P2", "S2"}),
    dict(silting={"P1[1]", "pres(I2)", "pres(I3)"},
         x={"P1", "P2", "P3", "P1[1]", "pres(S2)", "pres(I2)", "pres(I3)"},
         y={"P1[1]", "P2[1]", "P3[1]", "pres(I2)", "pres(I3)"},
         thick={"P1", "P1[1]", "pres(I3)"},
         wide={"I2"},
         torsion={"I2", "I3"}),
    dict(silting={"P3", "pres(I2)", "pres(I3)"},
         x={"P1", "P2", "P3", "pres(S2)", "pres(I2)", "pres(I3)"},
         y={"P3", "P1[1]", "P2[1]", "P3[1]", "pres(I2)", "pres(I3)"},
         thick={"pres(S2)", "pres(I2)", "pres(I3)"},
         wide={"P3"},
         torsion={"P3", "I2", "I3"}),
]

SAMPLES = 200


def c1_census():
    _, _, K = load("a3")
    t = time.perf_counter()
    S = enumerate_two_term_silting(K)
    dt = time.perf_counter() - t
    ok = len(S) == 14 and all(len(U) == 3 for U in S) and dt < 60
    return ok, f"{len(S)} silting objects, summand counts {sorted({len(U) for U in S})}, {dt:.2f}s"


def c2_table():
    _, _, K = load("a3")
    rows = {frozenset(r.silting): r for r in correspondence_table(K)}
    bad = []
    for i, e in enumerate(TABLE, start=1):
        r = rows.get(frozenset(e["silting"]))
        if r is None:
            bad.append(f"row {i}: silting object missing")
            continue
        got = dict(x=r.x_part, y=r.y_part, thick=r.thick, wide=r.wide, torsion=r.torsion)
        bad += [f"row {i}: {k}" for k in got if set(got[k]) != e[k]]
    ok = not bad and len(rows) == len(TABLE)
    return ok, f"{len(TABLE)} rows x 5 columns checked" if ok else "; ".join(bad)


def c3_diagram():
    out = []
    ok = True
    for name, n in (("a3", 14), ("one_vertex", 2)):
        _, _, K = load(name)
        checks = verify_main_diagram(K, silting(name))
        good = sum(c.ok for c in checks)
        ok &= good == len(checks) == 3 * n
        out.append(f"{name}: {good}/{len(checks)} edges")
    return ok, ", ".join(out)


def c4_round_trips():
    _, _, K = load("a3")
    xs = [xi(U, K)[0] for U in silting("a3")]
    bad_x = [X for X in xs if iota_map(beta_map(X, K), K) != X]
    thick = [T for T in thick_subcategories(K) if has_enough_injectives(T, K)]
    bad_t = [T for T in thick if beta_map(iota_map(T, K), K) != T]
    ok = not bad_x and not bad_t and len(thick) == 14
    return ok, (
        f"iota(beta(X)) = X for {len(xs) - len(bad_x)}/{len(xs)} X-parts; "
        f"beta(iota(T)) = T for {len(thick) - len(bad_t)}/{len(thick)} thick subcategories"
    )


def c5_square():
    A, U, K = load("square")
    named = dict(A.named_complexes)
    X1, X2 = parse_complex(A, named["X1"]), parse_complex(A, named["X2"])
    s1, s2 = det_semi_invariant(X1, U["P2"]), det_semi_invariant(X2, U["P1"])
    X = direct_sum([X1, X2], A)
    classes = [
        Representation(A, (1, 1), {"alpha": [[1]]}),
        Representation(A, (1, 1), {"beta": [[1]]}),
        Representation(A, (1, 1), {}),
    ]
    dets = [det_semi_invariant(X, M) for M in classes]
    num = is_numerically_semistable(X, (1, 1), K, mult_bound=2)
    ref = is_numerically_semistable(direct_sum([K["P1"], K["P1[1]"]], A), (1, 1), K, mult_bound=2)
    ok = (
        s1 != 0
        and s2 != 0
        and all(d == 0 for d in dets)
        and not any(is_M_semistable(X, M) for M in classes)
        and num.semistable == "true-within-budget"
        and ref.semistable is False
        and ref.pairing == -1
        and ref.witness is not None
    )
    return ok, (
        f"s(X1,P2)={s1}, s(X2,P1)={s2}, s(X1+X2, (1,1)-classes)={[str(d) for d in dets]}, "
        f"numerical={num.semistable}, P1+P1[1] refuted by {ref.witness} at pairing {ref.pairing}"
    )


def c6_kronecker():
    _, U, K = load("kronecker", bound=4)
    C = [K.module_name[n] for n, M in U.members if M.dims[0] == M.dims[1]]
    gs = [K.g_vector(c) for c in C]
    regular_shape = all(g[0] == -g[1] and g[1] > 0 for g in gs)
    ones = sum(1 for g in gs if g == (-1, 1))
    W = script_W(C, K)
    ok = regular_shape and ones == 3 and not W and not K.complete
    return ok, (
        f"{len(C)} regular presentations (g-vectors {sorted(set(gs))}, {ones} of class (-1,1)); "
        f"W = {sorted(W) or '{0}'}; universe {K.status}"
    )


@functools.lru_cache(maxsize=None)
def _beta_thick(name, X):
    _, _, K = load(name)
    return is_thick(beta_map(X, K), K)


@functools.lru_cache(maxsize=None)
def _iota_resolving(name, E):
    _, _, K = load(name)
    return is_resolving(iota_map(E, K), K)


@functools.lru_cache(maxsize=None)
def _T_thick(name, H):
    _, _, K = load(name)
    T = script_T(H, K)
    return is_thick(T, K) and set(H) <= script_W(T, K)


@functools.lru_cache(maxsize=None)
def _W_wide(name, C):
    _, U, K = load(name)
    W = script_W(C, K)
    return is_wide(W, U) and set(C) <= script_T(W, K)


def _random_subset(rng, names):
    return frozenset(n for n in names if rng.random() < rng.choice((0.2, 0.4, 0.6)))


PROPERTY_FIXTURES = ("one_vertex", "square", "a3")


def c7a_beta_iota(samples=SAMPLES):
    fails = []
    for name in PROPERTY_FIXTURES:
        _, _, K = load(name)
        rng = random.Random(f"7a-{name}")
        for _ in range(samples):
            S = _random_subset(rng, K.names)
            R = closure(S | set(K.stalks()), K, ext=True, cocones=True)
            if not _beta_thick(name, R):
                fails.append((name, "beta", sorted(R)))
            E = closure(_random_subset(rng, K.names), K, ext=True)
            if not _iota_resolving(name, E):
                fails.append((name, "iota", sorted(E)))
    return not fails, f"{samples} samples x {len(PROPERTY_FIXTURES)} algebras, {len(fails)} failures"


def c7b_galois(samples=SAMPLES):
    fails = []
    for name in PROPERTY_FIXTURES:
        _, U, K = load(name)
        rng = random.Random(f"7b-{name}")
        for _ in range(samples):
            H = _random_subset(rng, U.names)
            if not _T_thick(name, H):
                fails.append((name, "T", sorted(H)))
            C = _random_subset(rng, K.names)
            if not _W_wide(name, C):
                fails.append((name, "W", sorted(C)))
    return not fails, f"{samples} samples x {len(PROPERTY_FIXTURES)} algebras, {len(fails)} failures"


def c7c_M_implies_numerical():
    count = 0
    bad = []
    for name in ("a3", "square"):
        _, U, K = load(name)
        for x in K.names:
            for m in U.names:
                if pairing(K[x], U[m]) != 0:
                    continue
                count += 1
                v = check_M_implies_numerical(K[x], U[m], K)
                if v is not None:
                    bad.append((name, x, m))
    return not bad, f"{count} pairing-zero pairs, {len(bad)} counterexamples"


def c7d_euler():
    count = 0
    bad = []
    for name in ("a3", "square", "one_vertex", "d4"):
        A, U, K = load(name)
        for x in K.names:
            X = K[x]
            for m in U.names:
                M = U[m]
                count += 1
                lhs = euler_pairing(X.g_vector(), M.dims)
                rhs = hom_dim(projective_sum(A, X.m0), M) - hom_dim(projective_sum(A, X.m1), M)
                if lhs != rhs:
                    bad.append((name, x, m))
    return not bad, f"{count} pairs, {len(bad)} mismatches"


def c7_properties():
    parts = [("a", c7a_beta_iota()), ("b", c7b_galois()), ("c", c7c_M_implies_numerical()), ("d", c7d_euler())]
    return all(ok for _, (ok, _) in parts), "; ".join(f"({k}) {d}" for k, (_, d) in parts)


def c8_oracle():
    _, U, K = load("a3")
    hom_bad = [(a, b) for a in U.names for b in U.names if U.hom_dim(a, b) != oracle.hom_dim(U[a], U[b])]
    ext_bad = [(a, b) for a in K.names for b in K.names if K.ext_dim(a, b) != oracle.ext_dim(K[a], K[b])]
    homk_bad = [(a, b) for a in K.names for b in K.names if K.hom_dim(a, b) != oracle.hom_k_dim(K[a], K[b])]
    live = len(hom_bad) + len(ext_bad) + len(homk_bad)
    # the frozen tables cover the other fixtures too
    stale = 0
    pairs = 0
    for name in ("a3", "square", "one_vertex", "d4"):
        _, U, K = load(name)
        ref = frozen(name)
        for key, univ in (("hom", U), ("hom_k", K), ("ext", K)):
            dim = univ.hom_dim if key != "ext" else univ.ext_dim
            for a, row in ref[key].items():
                for b, v in row.items():
                    pairs += 1
                    stale += dim(a, b) != v
    _, U, K = load("a3")
    n2, m2 = len(U.names) ** 2, len(K.names) ** 2
    return not live and not stale, (
        f"live a3: Hom {n2 - len(hom_bad)}/{n2}, E {m2 - len(ext_bad)}/{m2}, "
        f"Hom_K {m2 - len(homk_bad)}/{m2}; frozen tables: {pairs - stale}/{pairs} entries agree"
    )


CRITERIA = [
    (1, "A3 silting census", c1_census),
    (2, "Table reproduction", c2_table),
    (3, "Diagram commutativity", c3_diagram),
    (4, "beta/iota round trips", c4_round_trips),
    (5, "Square-algebra semistability", c5_square),
    (6, "Kronecker non-bijectivity", c6_kronecker),
    (7, "Property suites", c7_properties),
    (8, "Oracle equivalence", c8_oracle),
]
