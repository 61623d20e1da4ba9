"""Bound quiver algebras kQ/I with an explicit path basis.

Paths compose left to right: for arrows ``a: 1 -> 2`` and ``b: 2 -> 3`` the
path ``a*b`` runs from 1 to 3.  The quotient by the ideal is computed by
linear saturation of the span of ``q*r*s`` inside a truncated path space, so
no noncommutative Groebner machinery is needed.
"""

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property

from .linalg import QQ, Field, reduce_vector, rref


class DSLError(ValueError):
    def __init__(self, msg, line=None, col=None):
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + msg)
        self.line = line
        self.col = col


class AdmissibilityError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True, order=True)
class Path:
    """A path given by its endpoints and arrow names (empty for e_i)."""

    source: int
    target: int
    arrows: tuple = ()

    @property
    def length(self):
        return len(self.arrows)

    def key(self):
        return (self.length, self.source, self.target, self.arrows)

    def __str__(self):
        return "*".join(self.arrows) if self.arrows else f"e{self.source}"

    def reversed(self):
        return Path(self.target, self.source, tuple(reversed(self.arrows)))


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple

    def __post_init__(self):
        if not self.vertices:
            raise DSLError("a quiver needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise DSLError("vertex ids must be distinct")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise DSLError("arrow names must be distinct")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise DSLError(f"arrow {a.name} references an unknown vertex")

    @cached_property
    def arrow(self):
        return {a.name: a for a in self.arrows}

    def out_arrows(self, v):
        return [a for a in self.arrows if a.source == v]

    def in_arrows(self, v):
        return [a for a in self.arrows if a.target == v]

    def opposite(self):
        return Quiver(self.vertices, tuple(Arrow(a.name, a.target, a.source) for a in self.arrows))


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths, as a tuple of (coeff, Path)."""

    terms: tuple

    @property
    def source(self):
        return self.terms[0][1].source

    @property
    def target(self):
        return self.terms[0][1].target

    def opposite(self):
        return Relation(tuple((c, p.reversed()) for c, p in self.terms))


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[^\W\d]\w*)|(?P<op>[*+\-]))")


def _parse_relation(text, quiver, lineno, col0):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise DSLError(f"unexpected character {text[pos:].strip()[0]!r}", lineno, col0 + pos + 1)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), col0 + m.start(kind) + 1))
        pos = m.end()
    terms = []
    i = 0
    sign = 1
    expect_term = True
    while i < len(tokens):
        kind, val, col = tokens[i]
        if kind == "op" and val in "+-":
            sign = -sign if val == "-" else sign
            i += 1
            continue
        coeff = Fraction(1)
        if kind == "num":
            coeff = Fraction(val)
            i += 1
            if i < len(tokens) and tokens[i][:2] == ("op", "*"):
                i += 1
            if i >= len(tokens) or tokens[i][0] != "name":
                raise DSLError("coefficient must be followed by a path", lineno, col)
        names = []
        while True:
            if i >= len(tokens) or tokens[i][0] != "name":
                raise DSLError("expected an arrow name", lineno, tokens[i][2] if i < len(tokens) else col0 + len(text))
            kind, val, col = tokens[i]
            if val not in quiver.arrow:
                raise DSLError(f"unknown arrow {val!r}", lineno, col)
            names.append(val)
            i += 1
            if i < len(tokens) and tokens[i][:2] == ("op", "*"):
                i += 1
                continue
            break
        for x, y in zip(names, names[1:]):
            if quiver.arrow[x].target != quiver.arrow[y].source:
                raise DSLError(f"arrows {x} and {y} do not compose", lineno, col0 + 1)
        if len(names) < 2:
            raise DSLError("relation terms must have length at least 2", lineno, col0 + 1)
        path = Path(quiver.arrow[names[0]].source, quiver.arrow[names[-1]].target, tuple(names))
        terms.append((sign * coeff, path))
        sign = 1
        expect_term = False
    if expect_term:
        raise DSLError("empty relation", lineno, col0 + 1)
    merged = {}
    for c, p in terms:
        merged[p] = merged.get(p, 0) + c
    terms = tuple((c, p) for p, c in sorted(merged.items(), key=lambda t: t[0].key()) if c != 0)
    if not terms:
        raise DSLError("relation is identically zero", lineno, col0 + 1)
    ends = {(p.source, p.target) for _, p in terms}
    if len(ends) > 1:
        raise DSLError("paths in a relation must be parallel", lineno, col0 + 1)
    return Relation(terms)


def parse_algebra(text, field=None, bound=30):
    """Parse the quiver DSL and return the bound quiver algebra.

    ``field`` (a :class:`Field`) overrides any ``field`` line in the text.
    Lines of the form ``complex NAME: ...`` are kept verbatim for later use.
    """
    vertices = None
    arrows = []
    rel_lines = []
    complexes = []
    file_field = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        line = line.strip()
        word, _, rest = line.partition(" ")
        rest_col = indent + len(word) + 2
        if word == "vertices":
            if vertices is not None:
                raise DSLError("vertices declared twice", lineno, indent + 1)
            try:
                vertices = tuple(int(t) for t in rest.split())
            except ValueError:
                raise DSLError("vertex ids must be integers", lineno, rest_col) from None
            if not vertices or any(v < 1 for v in vertices):
                raise DSLError("vertex ids must be positive integers", lineno, rest_col)
        elif word == "arrow":
            m = re.fullmatch(r"\s*([^\W\d]\w*)\s*:\s*(\d+)\s*->\s*(\d+)\s*", rest)
            if not m:
                raise DSLError("expected 'arrow NAME: SOURCE -> TARGET'", lineno, rest_col)
            arrows.append((Arrow(m.group(1), int(m.group(2)), int(m.group(3))), lineno))
        elif word == "relation":
            rel_lines.append((rest, lineno, rest_col - 1))
        elif word == "field":
            parts = rest.split()
            if parts == ["Q"]:
                file_field = QQ
            elif len(parts) == 2 and parts[0] == "Fp" and parts[1].isdigit():
                try:
                    file_field = Field(int(parts[1]))
                except ValueError as e:
                    raise DSLError(str(e), lineno, rest_col) from None
            else:
                raise DSLError("expected 'field Q' or 'field Fp <prime>'", lineno, rest_col)
        elif word == "complex":
            m = re.fullmatch(r"\s*(\S+?)\s*:\s*(.+)", rest)
            if not m:
                raise DSLError("expected 'complex NAME: ...'", lineno, rest_col)
            complexes.append((m.group(1), m.group(2).strip()))
        else:
            raise DSLError(f"unknown keyword {word!r}", lineno, indent + 1)
    if vertices is None:
        raise DSLError("missing 'vertices' line")
    vs = set(vertices)
    for a, lineno in arrows:
        if a.source not in vs or a.target not in vs:
            raise DSLError(f"arrow {a.name} references an unknown vertex", lineno, 1)
    quiver = Quiver(vertices, tuple(a for a, _ in arrows))
    relations = tuple(_parse_relation(t, quiver, ln, c) for t, ln, c in rel_lines)
    F = field if field is not None else (file_field or QQ)
    return BoundQuiverAlgebra(quiver, relations, F, bound=bound, named_complexes=tuple(complexes))


def _fmt_coeff(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def serialize_algebra(A):
    """Canonical DSL text; parsing it gives back an equal algebra."""
    lines = ["vertices " + " ".join(str(v) for v in A.quiver.vertices)]
    for a in A.quiver.arrows:
        lines.append(f"arrow {a.name}: {a.source} -> {a.target}")
    for r in A.relations:
        parts = []
        for c, p in r.terms:
            c = Fraction(c)
            neg = c < 0
            mag = -c if neg else c
            body = str(p) if mag == 1 else f"{_fmt_coeff(mag)} {p}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        lines.append("relation " + " ".join(parts))
    lines.append("field Q" if A.field.p is None else f"field Fp {A.field.p}")
    for name, body in A.named_complexes:
        lines.append(f"complex {name}: {body}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- the algebra

def _paths_by_length(quiver, maxlen):
    """All paths of length <= maxlen, grouped by length."""
    layers = [[Path(v, v) for v in quiver.vertices]]
    outs = {v: quiver.out_arrows(v) for v in quiver.vertices}
    for _ in range(maxlen):
        nxt = []
        for p in layers[-1]:
            for a in outs[p.target]:
                nxt.append(Path(p.source, a.target, p.arrows + (a.name,)))
        layers.append(nxt)
        if not nxt:
            break
    return layers


def _concat(p, q):
    return Path(p.source, q.target, p.arrows + q.arrows)


@dataclass(eq=False)
class BoundQuiverAlgebra:
    quiver: Quiver
    relations: tuple
    field: Field = QQ
    bound: int = 30
    named_complexes: tuple = ()
    path_basis: list = dc_field(init=False)
    nilpotency_degree: int = dc_field(init=False)

    def __post_init__(self):
        F = self.field
        self.relations = tuple(
            Relation(tuple((F(c), p) for c, p in r.terms)) for r in self.relations
        )
        for r in self.relations:
            if any(p.length < 2 for _, p in r.terms):
                raise DSLError("relation terms must have length at least 2")
            if len({(p.source, p.target) for _, p in r.terms}) > 1:
                raise DSLError("paths in a relation must be parallel")
        self._build()

    # -- construction
    def _ideal_rows(self, layers, cols, maxlen, drop_from=None):
        """Rows spanning {q r s} whose terms all have length <= maxlen."""
        by_target = {}
        by_source = {}
        for layer in layers:
            for p in layer:
                by_target.setdefault(p.target, []).append(p)
                by_source.setdefault(p.source, []).append(p)
        rows = []
        for r in self.relations:
            lo = min(p.length for _, p in r.terms)
            hi = max(p.length for _, p in r.terms)
            for q in by_target.get(r.source, []):
                for s in by_source.get(r.target, []):
                    extra = q.length + s.length
                    if drop_from is None:
                        if extra + hi > maxlen:
                            continue
                    elif extra + lo >= drop_from:
                        continue
                    row = [self.field.zero] * len(cols)
                    nz = False
                    for c, p in r.terms:
                        full = _concat(_concat(q, p), s)
                        if drop_from is not None and full.length >= drop_from:
                            continue
                        j = cols[full]
                        row[j] = self.field.norm(row[j] + c)
                        nz = True
                    if nz:
                        rows.append(row)
        return rows

    def _layers(self, maxlen):
        if len(self._layer_cache) <= maxlen and self._layer_cache[-1]:
            self._layer_cache = _paths_by_length(self.quiver, maxlen)
        return self._layer_cache[: maxlen + 1]

    def _certify(self, m):
        """True when every path of length m is provably an element of I."""
        layers = self._layers(m)
        if len(layers) <= m or not layers[m]:
            return True
        if not self.relations:
            return False
        spread = max(
            max(p.length for _, p in r.terms) - min(p.length for _, p in r.terms)
            for r in self.relations
        )
        # homogeneous relations need only the length-m stratum; otherwise try
        # a few wider windows before giving up on this m
        for D in sorted({m, m + spread, m + 2 * spread, m + 3 * spread}):
            layers = self._layers(D)
            paths = [p for layer in layers for p in layer]
            cols = {p: i for i, p in enumerate(paths)}
            rows = self._ideal_rows(layers, cols, D)
            R, piv = rref(rows, len(paths), self.field)
            ok = True
            for p in layers[m]:
                v = [self.field.zero] * len(paths)
                v[cols[p]] = self.field.one
                if any(reduce_vector(R, piv, v, self.field)):
                    ok = False
                    break
            if ok:
                return True
        return False

    def _build(self):
        F = self.field
        self._layer_cache = [[Path(v, v) for v in self.quiver.vertices]]
        m = None
        for cand in range(1, self.bound + 1):
            if self._certify(cand):
                m = cand
                break
        if m is None:
            raise AdmissibilityError(
                f"no m <= {self.bound} with R^m contained in the ideal (bound exceeded)"
            )
        self.nilpotency_degree = m
        layers = self._layers(m - 1)
        short = [p for layer in layers for p in layer]
        # columns ordered so that pivots land on long paths and the basis
        # prefers short ones
        order = sorted(short, key=lambda p: (-p.length, p.source, p.target, p.arrows))
        cols = {p: i for i, p in enumerate(order)}
        rows = self._ideal_rows(layers, cols, None, drop_from=m)
        R, piv = rref(rows, len(order), F)
        pivset = set(piv)
        basis = sorted((order[j] for j in range(len(order)) if j not in pivset), key=Path.key)
        self.path_basis = basis
        self.index = {p: i for i, p in enumerate(basis)}
        self._reduce = {}
        for p in basis:
            self._reduce[p] = {self.index[p]: F.one}
        for row, pc in zip(R, piv):
            vec = {}
            for j, c in enumerate(row):
                if c and j != pc:
                    vec[self.index[order[j]]] = F.norm(-c)
            self._reduce[order[pc]] = vec
        self.vertices = self.quiver.vertices
        self.vpos = {v: i for i, v in enumerate(self.vertices)}
        self.e = {v: self.index[Path(v, v)] for v in self.vertices}
        self.between = {}
        for i, p in enumerate(basis):
            self.between.setdefault((p.source, p.target), []).append(i)
        self._mul = {}

    # -- basic API
    @property
    def dim(self):
        return len(self.path_basis)

    @property
    def n(self):
        return len(self.vertices)

    def paths(self, u, v):
        """Indices of basis paths from u to v (a basis of e_u Lambda e_v)."""
        return self.between.get((u, v), [])

    def reduce(self, path):
        """Expansion of an arbitrary path in the path basis, as {index: coeff}."""
        if path.length >= self.nilpotency_degree:
            return {}
        got = self._reduce.get(path)
        if got is None:
            raise ValueError(f"{path} is not a path of the quiver")
        return dict(got)

    def path(self, text):
        """Parse 'e2' or 'a*b' into a Path."""
        text = text.strip()
        m = re.fullmatch(r"e(\d+)", text)
        if m and int(m.group(1)) in self.vpos and text not in self.quiver.arrow:
            v = int(m.group(1))
            return Path(v, v)
        names = tuple(t.strip() for t in text.split("*"))
        for x in names:
            if x not in self.quiver.arrow:
                raise ValueError(f"unknown arrow {x!r}")
        for x, y in zip(names, names[1:]):
            if self.quiver.arrow[x].target != self.quiver.arrow[y].source:
                raise ValueError(f"arrows {x} and {y} do not compose")
        return Path(self.quiver.arrow[names[0]].source, self.quiver.arrow[names[-1]].target, names)

    def mul(self, i, j):
        """Product of basis elements i then j, as a sparse vector."""
        key = (i, j)
        got = self._mul.get(key)
        if got is None:
            p, q = self.path_basis[i], self.path_basis[j]
            if p.target != q.source:
                got = {}
            else:
                got = self.reduce(_concat(p, q))
            self._mul[key] = got
        return got

    def elem_mul(self, x, y):
        """Product of algebra elements given as {basis index: coeff}."""
        F = self.field
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.mul(i, j).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: F.norm(v) for k, v in out.items() if F.norm(v)}

    def is_radical(self, x):
        return all(self.path_basis[i].length > 0 for i in x)

    @cached_property
    def opposite(self):
        return BoundQuiverAlgebra(
            self.quiver.opposite(),
            tuple(r.opposite() for r in self.relations),
            self.field,
            bound=self.bound,
        )

    def with_field(self, F):
        return BoundQuiverAlgebra(self.quiver, self.relations, F, self.bound, self.named_complexes)

    def __repr__(self):
        return f"BoundQuiverAlgebra(n={self.n}, dim={self.dim}, field={self.field!r})"

    def fmt_elem(self, x):
        if not x:
            return "0"
        parts = []
        for i in sorted(x, key=lambda i: self.path_basis[i].key()):
            c = x[i]
            s = self.field.fmt(c)
            p = str(self.path_basis[i])
            parts.append(p if s == "1" else f"{s}*{p}")
        return " + ".join(parts)

    def parse_elem(self, text):
        """Parse a linear combination such as '2*a*b - e1' into an element."""
        text = text.strip()
        if text == "0":
            return {}
        out = {}
        F = self.field
        for sign, chunk in re.findall(r"([+-]?)\s*([^+-]+)", text):
            chunk = chunk.strip()
            m = re.fullmatch(r"(\d+(?:/\d+)?)\s*\*?\s*(.*)", chunk)
            coeff = Fraction(1)
            if m and m.group(2):
                coeff, chunk = Fraction(m.group(1)), m.group(2)
            elif m:
                raise ValueError(f"bare scalar {chunk!r} is not an algebra element")
            if sign == "-":
                coeff = -coeff
            for k, c in self.reduce(self.path(chunk)).items():
                out[k] = F.norm(out.get(k, 0) + F(coeff) * c)
        return {k: v for k, v in out.items() if v}
