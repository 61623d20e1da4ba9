"""Exact dense linear algebra over the rationals or a prime field.

Matrices are lists of rows; vectors are lists.  Every routine takes the
field as an explicit argument so that the same code serves both modes.
"""

from fractions import Fraction


class Field:
    """Either the rationals (``p is None``) or the prime field F_p."""

    def __init__(self, p=None):
        if p is not None and (p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1))):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.zero = self(0)
        self.one = self(1)

    def __call__(self, x):
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.p is None:
            return 1 / x
        return pow(x, -1, self.p)

    def norm(self, x):
        return x if self.p is None else x % self.p

    def random(self, rng, span=None):
        if self.p is None:
            span = span or 97
            return Fraction(rng.randint(-span, span))
        return rng.randrange(self.p)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Q" if self.p is None else f"Fp:{self.p}"

    def fmt(self, x):
        if self.p is None:
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(x)

    def parse(self, s):
        return self(Fraction(s))


QQ = Field()


def zeros(m, n, F=QQ):
    return [[F.zero] * n for _ in range(m)]


def identity(n, F=QQ):
    out = zeros(n, n, F)
    for i in range(n):
        out[i][i] = F.one
    return out


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A, B, F=QQ, inner=None):
    """Product of an m x k and a k x n matrix; ``inner`` covers k = 0."""
    if not A:
        return []
    k = len(A[0]) if inner is None else inner
    n = len(B[0]) if B else 0
    if k == 0:
        return [[F.zero] * n for _ in A]
    Bt = list(zip(*B))
    p = F.p
    out = []
    for row in A:
        nz = [(j, a) for j, a in enumerate(row) if a]
        new = []
        for col in Bt:
            s = 0
            for j, a in nz:
                b = col[j]
                if b:
                    s += a * b
            new.append(s % p if p else F(s) if s == 0 else s)
        out.append(new)
    return out


def matvec(A, v, F=QQ):
    p = F.p
    out = []
    for row in A:
        s = 0
        for a, b in zip(row, v):
            if a and b:
                s += a * b
        out.append(s % p if p else (F.zero if s == 0 else s))
    return out


def rref(A, ncols, F=QQ):
    """Reduced row echelon form.  Returns (rows, pivot columns)."""
    R = [list(r) for r in A if any(r)]
    p = F.p
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(R)):
            if R[i][c]:
                piv = i
                break
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = F.inv(R[r][c])
        row = R[r]
        if inv != 1:
            row = [(x * inv) % p if p else x * inv for x in row]
            R[r] = row
        nzc = [j for j in range(c, ncols) if row[j]]
        for i in range(len(R)):
            if i != r:
                f = R[i][c]
                if f:
                    Ri = R[i]
                    for j in nzc:
                        Ri[j] = (Ri[j] - f * row[j]) % p if p else Ri[j] - f * row[j]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R[:r], pivots


def rank(A, ncols=None, F=QQ):
    if not A:
        return 0
    return len(rref(A, len(A[0]) if ncols is None else ncols, F)[1])


def nullspace(A, ncols, F=QQ):
    """Basis of {v : A v = 0} as a list of vectors of length ncols."""
    R, pivots = rref(A, ncols, F)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [F.zero] * ncols
        v[free] = F.one
        for row, pc in zip(R, pivots):
            if row[free]:
                v[pc] = F.norm(-row[free])
        basis.append(v)
    return basis


def solve(A, b, ncols, F=QQ):
    """One solution of A x = b, or None when inconsistent."""
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug, ncols + 1, F)
    if pivots and pivots[-1] == ncols:
        return None
    x = [F.zero] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    return x


def row_basis(vectors, n, F=QQ):
    """Echelon basis of the span of the given vectors."""
    return rref(vectors, n, F)[0]


def in_span(echelon, pivots, v, F=QQ):
    """Reduce v against an rref basis; True when the remainder is zero."""
    return not any(reduce_vector(echelon, pivots, v, F))


def reduce_vector(echelon, pivots, v, F=QQ):
    v = list(v)
    p = F.p
    for row, pc in zip(echelon, pivots):
        f = v[pc]
        if f:
            for j, x in enumerate(row):
                if x:
                    v[j] = (v[j] - f * x) % p if p else v[j] - f * x
    return v


def coordinates(basis, v, F=QQ):
    """Coefficients expressing v in the given (independent) basis, or None."""
    if not basis:
        return [] if not any(v) else None
    A = transpose(basis)
    return solve(A, v, len(basis), F)


def complement(echelon, pivots, n, F=QQ):
    """Standard basis vectors completing a subspace (given in rref) to F^n."""
    pivset = set(pivots)
    out = []
    for j in range(n):
        if j not in pivset:
            v = [F.zero] * n
            v[j] = F.one
            out.append(v)
    return out


def inverse(A, F=QQ):
    n = len(A)
    aug = [list(row) + e for row, e in zip(A, identity(n, F))]
    R, pivots = rref(aug, 2 * n, F)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def det(A, F=QQ):
    """Determinant by elimination; the empty matrix has determinant one."""
    n = len(A)
    M = [list(r) for r in A]
    p = F.p
    d = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return F.zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = F.norm(-d)
        d = F.norm(d * M[c][c])
        inv = F.inv(M[c][c])
        for i in range(c + 1, n):
            f = M[i][c]
            if f:
                f = F.norm(f * inv)
                for j in range(c, n):
                    M[i][j] = (M[i][j] - f * M[c][j]) % p if p else M[i][j] - f * M[c][j]
    return d


def kernel_and_image_rank(A, ncols, F=QQ):
    R, pivots = rref(A, ncols, F)
    return ncols - len(pivots), len(pivots)
