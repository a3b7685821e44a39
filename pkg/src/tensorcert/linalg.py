"""Exact dense linear algebra over the fields of :mod:`tensorcert.scalars`.

Everything here reduces to the reduced row echelon form, which is unique, so
the results do not depend on the elimination strategy.  Over Q and F_p the
echelon form is computed by FLINT; over extension fields (and on request,
for cross-checking) by a plain Gauss-Jordan loop written in Python.
"""

from __future__ import annotations

import flint

from .scalars import ExtensionField, Field, PrimeField, RationalField

BACKENDS = ("auto", "flint", "python")


def _pick_backend(field: Field, backend: str) -> str:
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "auto":
        return "python" if isinstance(field, ExtensionField) else "flint"
    if backend == "flint" and isinstance(field, ExtensionField):
        raise ValueError("flint backend does not cover extension fields")
    return backend


def _rref_python(rows, ncols, field):
    a = [list(r) for r in rows]
    zero = field.zero
    pivots = []
    r = 0
    nrows = len(a)
    for c in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if a[i][c] != zero), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        inv = field.one / a[r][c]
        prow = [x * inv for x in a[r]]
        a[r] = prow
        nz = [j for j in range(c, ncols) if prow[j] != zero]
        for i in range(nrows):
            if i != r:
                f = a[i][c]
                if f != zero:
                    row = a[i]
                    for j in nz:
                        row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _rref_flint(rows, ncols, field):
    nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return [], []
    red, rk = to_flint(rows, ncols, field).rref()
    out = []
    pivots = []
    for i in range(rk):
        row = [field.coerce(red[i, j]) for j in range(ncols)]
        out.append(row)
        pivots.append(next(j for j in range(ncols) if row[j] != 0))
    return out, pivots


def rref(rows, ncols: int, field: Field, backend: str = "auto"):
    """Reduced row echelon form of ``rows``; returns (nonzero rows, pivot columns)."""
    rows = [r for r in rows]
    for r in rows:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
    if _pick_backend(field, backend) == "flint":
        return _rref_flint(rows, ncols, field)
    return _rref_python(rows, ncols, field)


def rank(rows, ncols: int, field: Field, backend: str = "auto") -> int:
    return len(rref(rows, ncols, field, backend)[1])


def nullspace(rows, ncols: int, field: Field, backend: str = "auto"):
    """Basis of {x : A x = 0} as a list of vectors (one per free column)."""
    red, pivots = rref(rows, ncols, field, backend)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [field.zero] * ncols
        v[f] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][f]
        basis.append(v)
    return basis


def solve(rows, rhs, ncols: int, field: Field, backend: str = "auto"):
    """Some x with A x = rhs, or None when the system is inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    if len(rows) != len(rhs):
        raise ValueError("right-hand side length mismatch")
    red, pivots = rref(aug, ncols + 1, field, backend)
    if pivots and pivots[-1] == ncols:
        return None
    x = [field.zero] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = red[i][ncols]
    return x


def solve_dense(rows, rhs, field: Field):
    x = solve(rows, rhs, len(rows[0]) if rows else 0, field, backend="python")
    if x is None:
        raise ZeroDivisionError("singular system")
    return x


def independent_subset(vectors, field: Field, backend: str = "auto") -> list[int]:
    """Indices of the first maximal linearly independent subfamily."""
    if not vectors:
        return []
    n = len(vectors[0])
    cols = [[v[i] for v in vectors] for i in range(n)]
    return rref(cols, len(vectors), field, backend)[1]


def to_flint(rows, ncols: int, field: Field):
    """Dense FLINT matrix for ``rows`` (Q or F_p only)."""
    nrows = len(rows)
    if isinstance(field, PrimeField):
        return flint.nmod_mat(nrows, ncols, [int(x) for r in rows for x in r], field.p)
    return flint.fmpq_mat(nrows, ncols, [x for r in rows for x in r])


def from_flint(m, field: Field):
    return [[field.coerce(m[i, j]) for j in range(m.ncols())] for i in range(m.nrows())]


def matmul(a, b, field: Field):
    if not a:
        return []
    if b and b[0] and not isinstance(field, ExtensionField):
        return from_flint(to_flint(a, len(b), field) * to_flint(b, len(b[0]), field), field)
    inner = len(b)
    ncols = len(b[0]) if b else 0
    zero = field.zero
    out = []
    for row in a:
        acc = [zero] * ncols
        for k in range(inner):
            x = row[k]
            if x != zero:
                brow = b[k]
                for j in range(ncols):
                    if brow[j] != zero:
                        acc[j] = acc[j] + x * brow[j]
        out.append(acc)
    return out


class EchelonSpace:
    """A subspace of k^n kept in reduced echelon form, with reduction modulo it."""

    def __init__(self, vectors, n: int, field: Field):
        self.n = n
        self.field = field
        self.rows, self.pivots = rref([list(v) for v in vectors], n, field) if vectors else ([], [])

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, v):
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if c != 0:
                v = [x - c * y for x, y in zip(v, row)]
        return v

    def contains(self, v) -> bool:
        return all(x == 0 for x in self.reduce(v))

    def complement_coords(self, v):
        """Coordinates of v modulo the space, on the non-pivot positions."""
        red = self.reduce(v)
        piv = set(self.pivots)
        return [red[i] for i in range(self.n) if i not in piv]

    def complement_positions(self):
        piv = set(self.pivots)
        return [i for i in range(self.n) if i not in piv]


__all__ = [
    "rref", "rank", "nullspace", "solve", "solve_dense", "independent_subset",
    "matmul", "to_flint", "from_flint", "EchelonSpace",
]
