"""Hom spaces as finite-dimensional vector spaces.

A :class:`HomBasis` pairs a list of basis morphisms with a coordinate map.
Concrete categories build them either from a spanning set of morphisms that
can be flattened into some ambient coordinate system (diagram coefficients,
matrix entries), or by supplying their own coordinate function.  Quotient
hom spaces reuse the base basis: coordinates are reduced modulo the ideal
subspace, and the coset representatives are base basis vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg
from .scalars import Field


class HomSpaceError(ValueError):
    """A morphism does not lie in the hom space it was asked about."""


class InconsistencyError(RuntimeError):
    """Raised when an identity that must hold exactly fails (a bug, not a verdict)."""


class HomBasis:
    """Basis of Hom(source, target) with a linear coordinate map."""

    def __init__(self, category, source, target, vectors, coord_fn, coords_many_fn=None):
        self.category = category
        self.source = source
        self.target = target
        self.vectors = list(vectors)
        self._coord_fn = coord_fn
        self._coords_many_fn = coords_many_fn

    @property
    def field(self) -> Field:
        return self.category.field

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def coords(self, f) -> list:
        return self._coord_fn(f)

    def coords_many(self, fs) -> list:
        if self._coords_many_fn is not None:
            return self._coords_many_fn(list(fs))
        return [self._coord_fn(f) for f in fs]

    def combine(self, coeffs):
        cat = self.category
        if len(coeffs) != self.dim:
            raise HomSpaceError("coefficient vector has the wrong length")
        out = cat.zero(self.source, self.target)
        for c, v in zip(coeffs, self.vectors):
            if c != 0:
                out = cat.add(out, cat.scale(c, v))
        return out

    def __repr__(self):
        return f"HomBasis(dim={self.dim})"

    @classmethod
    def from_spanning(cls, category, source, target, spanning, flatten, ambient_dim,
                      independent: bool = False):
        """Basis extracted from a spanning family.

        ``flatten`` sends a morphism to its ambient coordinate vector of
        length ``ambient_dim``.  With ``independent=True`` the spanning family
        is trusted to be a basis whose flattened vectors are the unit vectors,
        so coordinates are read off directly.
        """
        field = category.field
        if independent:
            def coords(f):
                return flatten(f)
            return cls(category, source, target, spanning, coords)
        rows = [flatten(v) for v in spanning]
        keep = linalg.independent_subset(rows, field) if rows else []
        basis_rows = [rows[i] for i in keep]
        vectors = [spanning[i] for i in keep]
        dim = len(keep)
        aug = [r + [field.one if j == i else field.zero for j in range(dim)]
               for i, r in enumerate(basis_rows)]
        red, pivots = linalg.rref(aug, ambient_dim + dim, field) if aug else ([], [])
        if any(pc >= ambient_dim for pc in pivots):
            raise InconsistencyError("spanning subset unexpectedly dependent")
        rmat = [row[:ambient_dim] for row in red]
        tmat = [row[ambient_dim:] for row in red]

        def coords_many(fs):
            if not fs:
                return []
            flat = [flatten(f) for f in fs]
            if dim == 0:
                for v in flat:
                    if any(x != 0 for x in v):
                        raise HomSpaceError("morphism is not in the (zero) hom space")
                return [[] for _ in fs]
            sel = [[v[pc] for pc in pivots] for v in flat]
            back = linalg.matmul(sel, rmat, field)
            for v, w in zip(flat, back):
                if v != w:
                    raise HomSpaceError("morphism is not in the span of the hom basis")
            return linalg.matmul(sel, tmat, field)

        def coords(f):
            return coords_many([f])[0]

        return cls(category, source, target, vectors, coords, coords_many)


def quotient_basis(base: HomBasis, ideal_vectors, category=None) -> HomBasis:
    """Quotient of ``base`` by the subspace spanned by ``ideal_vectors``.

    Coset representatives are the base basis vectors in the non-pivot
    positions of the reduced ideal subspace; coordinates are the reduced
    coordinates on those positions.
    """
    space = linalg.EchelonSpace(ideal_vectors, base.dim, base.field)
    keep = space.complement_positions()

    def coords_many(fs):
        return [space.complement_coords(v) for v in base.coords_many(fs)]

    def coords(f):
        return coords_many([f])[0]

    hb = HomBasis(category or base.category, base.source, base.target,
                  [base.vectors[i] for i in keep], coords, coords_many)
    hb.ideal_space = space
    hb.base = base
    return hb


@dataclass
class LinMap:
    """Linear map between hom spaces; ``matrix[i][j]`` is coordinate i of the image of basis vector j."""

    domain: HomBasis
    codomain: HomBasis
    matrix: list

    def __post_init__(self):
        if len(self.matrix) != self.codomain.dim or any(len(r) != self.domain.dim for r in self.matrix):
            raise HomSpaceError("matrix shape does not match the bases")

    @property
    def field(self):
        return self.domain.field

    def rank(self) -> int:
        return linalg.rank(self.matrix, self.domain.dim, self.field)

    def apply(self, v):
        if len(v) != self.domain.dim:
            raise HomSpaceError("vector length mismatch")
        zero = self.field.zero
        out = []
        for row in self.matrix:
            acc = zero
            for a, b in zip(row, v):
                if a != 0 and b != 0:
                    acc = acc + a * b
            out.append(acc)
        return out

    def compose(self, other: LinMap) -> LinMap:
        """self o other."""
        m = _matmul_shape(self.matrix, other.matrix, self.codomain.dim, other.domain.dim, self.field)
        return LinMap(other.domain, self.codomain, m)


def _matmul_shape(a, b, nrows, ncols, field):
    if nrows == 0 or ncols == 0 or not b:
        return [[field.zero] * ncols for _ in range(nrows)]
    return linalg.matmul(a, b, field)


def induced_map(pre, post, hb: HomBasis, hb2: HomBasis) -> LinMap:
    """Matrix of f -> post o f o pre from Hom(A, B) to Hom(A', B').

    ``pre`` (A' -> A) or ``post`` (B -> B') may be None for an identity.
    """
    cat = hb.category
    images = []
    for v in hb.vectors:
        w = v
        if pre is not None:
            w = cat.compose(w, pre)
        if post is not None:
            w = cat.compose(post, w)
        images.append(w)
    return map_from_images(hb, hb2, images)


def map_from_images(hb: HomBasis, hb2: HomBasis, images) -> LinMap:
    cols = hb2.coords_many(images)
    field = hb.field
    matrix = [[cols[j][i] for j in range(hb.dim)] for i in range(hb2.dim)]
    if hb.dim == 0:
        matrix = [[] for _ in range(hb2.dim)]
    return LinMap(hb, hb2, [[field.coerce(x) for x in r] for r in matrix])


@dataclass
class ExactnessVerdict:
    exact: bool
    dims: list
    ranks: list
    defect: int
    injectivity_defect: int = 0
    detail: dict = dc_field(default_factory=dict)

    def to_json(self):
        out = {"exact": self.exact, "dims": self.dims, "ranks": self.ranks,
               "defect": self.defect, "injectivity_defect": self.injectivity_defect}
        out.update(self.detail)
        return out


def exactness_check(g: LinMap, f: LinMap, require_left_injective: bool = False) -> ExactnessVerdict:
    """Exactness of A --f--> B --g--> C at B (and injectivity of f on request).

    ``defect`` is dim ker g - rank f.  A nonzero composite g o f is an
    InconsistencyError: the caller built a sequence that is not a complex.
    """
    if f.codomain.dim != g.domain.dim:
        raise HomSpaceError("maps are not composable")
    field = f.field
    dim_a, dim_b, dim_c = f.domain.dim, f.codomain.dim, g.codomain.dim
    comp = _matmul_shape(g.matrix, f.matrix, dim_c, dim_a, field)
    if any(x != 0 for r in comp for x in r):
        raise InconsistencyError("composite of the sequence is not zero")
    rf = f.rank()
    rg = g.rank()
    defect = (dim_b - rg) - rf
    inj = (dim_a - rf) if require_left_injective else 0
    return ExactnessVerdict(defect == 0 and inj == 0, [dim_a, dim_b, dim_c], [rf, rg], defect, inj)


def solve(L: LinMap, target):
    """Some x with L x = target, or None (the rank test fails)."""
    if len(target) != L.codomain.dim:
        raise HomSpaceError("target length mismatch")
    if L.domain.dim == 0:
        return [] if all(x == 0 for x in target) else None
    return linalg.solve(L.matrix, list(target), L.domain.dim, L.field)


__all__ = ["HomBasis", "LinMap", "ExactnessVerdict", "HomSpaceError", "InconsistencyError",
           "induced_map", "map_from_images", "exactness_check", "solve", "quotient_basis"]
