"""Command-line front end.

Exit codes: 0 success, 1 hard error, 2 the output is only a bound because
the module universe was truncated.
"""

import argparse
import json
import os
import sys
from importlib import resources

from .algebra import DSLError, parse_algebra, serialize_algebra
from .linalg import QQ, Field

EXIT_OK, EXIT_ERROR, EXIT_PARTIAL = 0, 1, 2


class CliError(Exception):
    pass


def _field(spec):
    if spec in (None, "Q"):
        return QQ if spec else None
    if spec.startswith("Fp:"):
        try:
            return Field(int(spec[3:]))
        except ValueError as e:
            raise argparse.ArgumentTypeError(str(e)) from None
    raise argparse.ArgumentTypeError("field must be Q or Fp:<prime>")


def _positive(s):
    n = int(s)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def _vector(s):
    try:
        return tuple(int(x) for x in s.replace(" ", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers") from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("algebra", help="algebra description file")
    common.add_argument("--field", type=_field, default=None, help="Q or Fp:<p> (overrides the file)")
    common.add_argument("--dim-bound", type=_positive, default=8, help="max total dimension of enumerated modules")
    common.add_argument("--mult-bound", type=_positive, default=2, help="max summands in scanned sums")
    common.add_argument("--samples", type=_positive, default=4, help="random combinations per Hom space")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")

    p = argparse.ArgumentParser(prog="siltlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common], help="algebra summary")
    sub.add_parser("indecs", parents=[common], help="indecomposable modules")
    h = sub.add_parser("hom", parents=[common], help="Hom dimension between two objects")
    h.add_argument("source")
    h.add_argument("target")
    sub.add_parser("silting", parents=[common], help="two-term silting objects")
    sub.add_parser("table", parents=[common], help="silting / cotorsion / thick / wide / torsion table")
    sub.add_parser("diagram", parents=[common], help="edge-by-edge commutativity report")
    s = sub.add_parser("semistable", parents=[common], help="evaluate a semistability notion")
    s.add_argument("--complex", dest="complex_", metavar="X", help="complex id, named complex or literal")
    s.add_argument("--module", help="module id")
    s.add_argument("--weight", type=_vector, help="weight d (numerical) or theta (king)")
    s.add_argument("--notion", choices=("M", "numerical", "king"), default="M")
    return p


def _read_algebra(path):
    """File contents; a missing path falls back to the bundled fixture of that name."""
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        err = e
    stem = os.path.basename(path)
    if not stem.endswith(".quiver"):
        stem += ".quiver"
    res = resources.files("siltlab") / "fixtures" / stem
    if res.is_file():
        return res.read_text(encoding="utf-8")
    raise CliError(f"cannot read {path}: {err.strerror}")


class Session:
    def __init__(self, args):
        self.args = args
        text = _read_algebra(args.algebra)
        self.alg = parse_algebra(text, field=args.field)
        self._mods = None
        self._K = None

    @property
    def modules(self):
        if self._mods is None:
            from .universe import enumerate_indecomposable_modules

            self._mods = enumerate_indecomposable_modules(self.alg, bound=self.args.dim_bound, seed=self.args.seed)
        return self._mods

    @property
    def K(self):
        if self._K is None:
            from .complexes import ComplexUniverse

            self._K = ComplexUniverse(self.modules)
        return self._K

    def complex_(self, token):
        from .complexes import parse_complex

        named = dict(self.alg.named_complexes)
        if token in named:
            return token, parse_complex(self.alg, named[token])
        if "->" in token:
            return token, parse_complex(self.alg, token)
        if "+" in token:
            from .complexes import direct_sum

            parts = [self.complex_(t.strip()) for t in token.split("+")]
            return "+".join(n for n, _ in parts), direct_sum([X for _, X in parts], self.alg)
        try:
            name = self.K.resolve(token)
        except KeyError:
            raise CliError(f"unknown object id {token!r}") from None
        return name, self.K[name]

    def module(self, token):
        try:
            return self.modules[token]
        except KeyError:
            raise CliError(f"unknown module id {token!r}") from None


def _emit(args, text=None, data=None, dot=None):
    if args.format == "json" and data is not None:
        print(json.dumps(data, indent=2, sort_keys=True))
    elif args.format == "dot":
        if dot is None:
            raise CliError(f"no DOT output for '{args.command}'")
        sys.stdout.write(dot)
    else:
        print(text)


def _fmt_set(names):
    return "{" + ", ".join(names) + "}"


def cmd_info(ses):
    A = ses.alg
    from .modules import injective, projective

    data = {
        "field": repr(A.field),
        "vertices": list(A.vertices),
        "arrows": [[a.name, a.source, a.target] for a in A.quiver.arrows],
        "relations": [ln[len("relation "):] for ln in serialize_algebra(A).splitlines() if ln.startswith("relation ")],
        "dim": len(A.path_basis),
        "nilpotency_degree": A.nilpotency_degree,
        "path_basis": [str(p) for p in A.path_basis],
        "projectives": {f"P{v}": list(projective(A, v).dims) for v in A.vertices},
        "injectives": {f"I{v}": list(injective(A, v).dims) for v in A.vertices},
        "seed": ses.args.seed,
    }
    lines = [
        f"field: {data['field']}",
        f"vertices: {' '.join(map(str, A.vertices))}",
        f"arrows: {', '.join(f'{n}: {s} -> {t}' for n, s, t in data['arrows'])}",
        f"relations: {', '.join(data['relations']) or 'none'}",
        f"dim: {data['dim']}",
        f"nilpotency degree: {data['nilpotency_degree']}",
        f"path basis: {' '.join(data['path_basis'])}",
    ]
    lines += [f"{k}: {tuple(v)}" for k, v in data["projectives"].items()]
    lines += [f"{k}: {tuple(v)}" for k, v in data["injectives"].items()]
    _emit(ses.args, "\n".join(lines), data)
    return EXIT_OK


def _status_code(U):
    return EXIT_OK if U.complete else EXIT_PARTIAL


def cmd_indecs(ses):
    from .universe import ar_quiver_dot

    U = ses.modules
    data = {
        "status": U.status,
        "notes": U.notes,
        "seed": ses.args.seed,
        "modules": [{"id": n, **M.to_json()} for n, M in U.members],
    }
    lines = [f"{n}\t{M.dims}" for n, M in U.members]
    lines.append(f"# {len(U)} indecomposables, {U.status}" + "".join(f"; {x}" for x in U.notes))
    _emit(ses.args, "\n".join(lines), data, ar_quiver_dot(U) if ses.args.format == "dot" else None)
    return _status_code(U)


def cmd_hom(ses):
    a, b = ses.args.source, ses.args.target
    U = ses.modules
    if a in U.by_name and b in U.by_name:
        from .modules import ext1_dim

        h, e = U.hom_dim(a, b), ext1_dim(U[a], U[b])
        data = {"category": "mod", "source": a, "target": b, "hom": h, "ext1": e}
        text = f"dim Hom({a}, {b}) = {h}\ndim Ext^1({a}, {b}) = {e}"
    else:
        from .complexes import ext1, hom_k

        na, X = ses.complex_(a)
        nb, Y = ses.complex_(b)
        h, e = hom_k(X, Y).dim, ext1(X, Y).dim
        data = {"category": "K", "source": na, "target": nb, "hom": h, "ext1": e}
        text = f"dim Hom_K({na}, {nb}) = {h}\ndim E({na}, {nb}) = {e}"
    _emit(ses.args, text, data)
    return EXIT_OK


def _require_complete(ses):
    if not ses.K.complete:
        msg = f"universe truncated at total dimension {ses.args.dim_bound}; no verdict"
        _emit(ses.args, msg, {"status": "truncated", "message": msg})
        return False
    return True


def cmd_silting(ses):
    from .silting import enumerate_two_term_silting, split_lambda_rho

    if not _require_complete(ses):
        return EXIT_PARTIAL
    K = ses.K
    rows = []
    for U in enumerate_two_term_silting(K):
        sp = split_lambda_rho(U, K)
        rows.append(
            {
                "silting": list(U),
                "g_vectors": [list(K.g_vector(u)) for u in U],
                "u_lambda": K.sort(sp.u_lambda),
                "u_rho": K.sort(sp.u_rho),
            }
        )
    lines = [
        f"{i + 1:>3}  {_fmt_set(r['silting'])}  lambda={_fmt_set(r['u_lambda'])}  rho={_fmt_set(r['u_rho'])}"
        for i, r in enumerate(rows)
    ]
    lines.append(f"# {len(rows)} basic two-term silting objects")
    _emit(ses.args, "\n".join(lines), {"count": len(rows), "silting": rows, "seed": ses.args.seed})
    return EXIT_OK


def cmd_table(ses):
    from .corr import correspondence_table

    if not _require_complete(ses):
        return EXIT_PARTIAL
    K = ses.K
    rows = [r.to_json(K) for r in correspondence_table(K)]
    lines = []
    for i, r in enumerate(rows):
        lines.append(f"[{i + 1}] silting  {_fmt_set(r['silting'])}")
        lines.append(f"    X        {_fmt_set(r['cotorsion_pair']['x'])}")
        lines.append(f"    Y        {_fmt_set(r['cotorsion_pair']['y'])}")
        lines.append(f"    thick    {_fmt_set(r['thick'])}")
        lines.append(f"    wide     {_fmt_set(r['wide'])}")
        lines.append(f"    torsion  {_fmt_set(r['torsion'])}")
    lines.append(f"# {len(rows)} rows")
    dot = None
    if ses.args.format == "dot":
        from .corr import thick_dot

        subcats = sorted({frozenset(r["thick"]) for r in rows}, key=lambda S: (len(S), K.sort(S)))
        dot = thick_dot(subcats, K)
    _emit(ses.args, "\n".join(lines), {"rows": rows, "seed": ses.args.seed}, dot)
    return EXIT_OK


def cmd_diagram(ses):
    from .corr import verify_main_diagram

    if not _require_complete(ses):
        return EXIT_PARTIAL
    K = ses.K
    checks = verify_main_diagram(K, mult_bound=ses.args.mult_bound)
    lines = [f"{'PASS' if c.ok else 'FAIL'}  {c.edge:<8} {_fmt_set(c.silting)}" for c in checks]
    bad = sum(not c.ok for c in checks)
    lines.append(f"# {len(checks) - bad}/{len(checks)} edges commute")
    data = {
        "checks": [{"silting": list(c.silting), "edge": c.edge, "ok": c.ok} for c in checks],
        "failures": bad,
        "seed": ses.args.seed,
    }
    _emit(ses.args, "\n".join(lines), data)
    return EXIT_OK if not bad else EXIT_ERROR


def cmd_semistable(ses):
    from .stability import (
        det_semi_invariant,
        is_M_semistable,
        is_numerically_semistable,
        king_semistable,
        pairing,
    )

    a = ses.args
    if a.notion == "king":
        if a.module is None or a.weight is None:
            raise CliError("--notion king needs --module and --weight")
        if ses.alg.field.p is None:
            raise CliError("King semistability is decided only over a prime field (use --field Fp:<p>)")
        M = ses.module(a.module)
        ok = king_semistable(M, a.weight)
        data = {"module": a.module, "weight": list(a.weight), "semistable": ok, "seed": a.seed}
        _emit(a, f"{a.module} is {'' if ok else 'not '}{tuple(a.weight)}-semistable", data)
        return EXIT_OK
    if a.complex_ is None:
        raise CliError(f"--notion {a.notion} needs --complex")
    name, X = ses.complex_(a.complex_)
    if a.notion == "M":
        if a.module is None:
            raise CliError("--notion M needs --module")
        M = ses.module(a.module)
        p = pairing(X, M)
        data = {"complex": name, "module": a.module, "pairing": p, "seed": a.seed}
        if p != 0:
            data["semistable"] = False
            text = f"<[{name}], [{a.module}]> = {p}; not {a.module}-semistable"
        else:
            from .complexes import minimize

            s = det_semi_invariant(minimize(X), M)
            ok = is_M_semistable(X, M)
            data.update(semistable=ok, value=ses.alg.field.fmt(s))
            text = f"s({name}, {a.module}) = {ses.alg.field.fmt(s)}; {'' if ok else 'not '}{a.module}-semistable"
        _emit(a, text, data)
        return EXIT_OK
    d = a.weight if a.weight is not None else (ses.module(a.module).dims if a.module else None)
    if d is None:
        raise CliError("--notion numerical needs --weight or --module")
    v = is_numerically_semistable(X, d, ses.K, mult_bound=a.mult_bound, samples=a.samples, seed=a.seed)
    data = {"complex": name, "weight": list(d), **v.to_json()}
    if v.semistable is False:
        if v.witness is None:
            text = f"<[{name}], {tuple(d)}> = {v.pairing}; not numerically semistable"
        else:
            text = f"refuted: inflation from {' + '.join(v.witness)} with pairing {v.pairing}"
    else:
        text = f"{name} is numerically {tuple(d)}-semistable ({v.semistable}; universe {ses.K.status})"
    _emit(a, text, data)
    if v.semistable is True:
        return EXIT_OK
    if v.semistable is False:
        return EXIT_OK
    return EXIT_OK if ses.K.complete else EXIT_PARTIAL


COMMANDS = {
    "info": cmd_info,
    "indecs": cmd_indecs,
    "hom": cmd_hom,
    "silting": cmd_silting,
    "table": cmd_table,
    "diagram": cmd_diagram,
    "semistable": cmd_semistable,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ses = Session(args)
        return COMMANDS[args.command](ses)
    except (CliError, DSLError, ValueError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        print(f"siltlab: error: {msg}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
