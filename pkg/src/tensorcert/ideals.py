"""Tensor ideals as families of hom subspaces, and quotient categories.

Slices are stored as lists of coordinate vectors in the base hom basis.

Principal ideals use the rigidity criterion: f : A -> B lies in the ideal
generated by id_X exactly when f = h o (co_X (x) A) for some
h : X X^v A -> B.  (If f = b o (X (x) c) o a with a : A -> X C, then
h = b o (X (x) c) o (X (x) ev-type contraction) works; conversely every
h o (co_X (x) A) factors through X (x) X^v A.)  An equivalent description,
used where X (x) X^v A is too large, is the image of

    Hom(X A, X B) -> Hom(A, B),  u -> (ev_X (x) B) o (X^v (x) u) o (co_{X^v} (x) A),

with co_{X^v} = sigma_{X, X^v} o co_X.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg
from .category import Category
from .homspace import HomBasis, map_from_images, quotient_basis, solve


@dataclass(frozen=True)
class IdealSpec:
    """kind is "negligible", "principal" (with generator) or "explicit" (with slice_fn)."""

    kind: str
    generator: object = None
    slice_fn: object = dc_field(default=None, compare=False)
    label: str = ""

    def __post_init__(self):
        if self.kind not in ("negligible", "principal", "explicit", "zero"):
            raise ValueError(f"unknown ideal kind {self.kind!r}")
        if self.kind == "principal" and self.generator is None:
            raise ValueError("principal ideal needs a generator object")
        if self.kind == "explicit" and self.slice_fn is None:
            raise ValueError("explicit ideal needs a slice function")


@dataclass
class IdealSlice:
    source: object
    target: object
    hom_dim: int
    vectors: list

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def to_json(self, cat):
        return {"pair": [cat.obj_json(self.source), cat.obj_json(self.target)],
                "dim_hom": self.hom_dim, "dim_ideal": self.dim,
                "dim_quotient": self.hom_dim - self.dim}


def _span(vectors, n, field):
    if not vectors:
        return []
    red, _ = linalg.rref(vectors, n, field)
    return red


def negligible_slice(cat: Category, a, b) -> IdealSlice:
    """{f : A -> B | tr(g o f) = 0 for all g : B -> A}."""
    hab, hba = cat.hom(a, b), cat.hom(b, a)
    gram = [[cat.trace(cat.compose(g, f)) for g in hba.vectors] for f in hab.vectors]
    # left kernel: c with sum_i c_i gram[i][j] = 0 for all j
    cols = [[gram[i][j] for i in range(hab.dim)] for j in range(hba.dim)]
    if hab.dim == 0:
        vecs = []
    elif hba.dim == 0:
        vecs = [[cat.field.one if k == i else cat.field.zero for k in range(hab.dim)]
                for i in range(hab.dim)]
    else:
        vecs = linalg.nullspace(cols, hab.dim, cat.field)
    return IdealSlice(a, b, hab.dim, _span(vecs, hab.dim, cat.field))


def _through_generator(cat, x, a):
    """co_X (x) A : A -> X X^v A."""
    return cat.tensor(cat.co(x), cat.identity(a))


def principal_membership(cat: Category, f, x):
    """(is_member, h) with f = h o (co_X (x) A) when f is in the ideal generated by id_X."""
    a, b = cat.source(f), cat.target(f)
    pre = _through_generator(cat, x, a)
    mid = cat.target(pre)
    hmb, hab = cat.hom(mid, b), cat.hom(a, b)
    lm = map_from_images(hmb, hab, [cat.compose(h, pre) for h in hmb.vectors])
    sol = solve(lm, hab.coords(f))
    if sol is None:
        return False, None
    h = hmb.combine(sol)
    return True, h


def principal_slice(cat: Category, x, a, b) -> IdealSlice:
    """Image of h -> h o (co_X (x) A) in Hom(A, B)."""
    pre = _through_generator(cat, x, a)
    hmb, hab = cat.hom(cat.target(pre), b), cat.hom(a, b)
    images = hab.coords_many([cat.compose(h, pre) for h in hmb.vectors])
    return IdealSlice(a, b, hab.dim, _span(images, hab.dim, cat.field))


def principal_slice_adjoint(cat: Category, x, a, b) -> IdealSlice:
    """Same subspace, as the image of partial traces of Hom(X A, X B)."""
    xd = cat.dual_obj(x)
    co_xd = cat.compose(cat.braid(x, xd), cat.co(x))        # 1 -> X^v X
    pre = cat.tensor(co_xd, cat.identity(a))                  # A -> X^v X A
    post = cat.tensor(cat.ev(x), cat.identity(b))             # X^v X B -> B
    idxd = cat.identity(xd)
    hu = cat.hom(cat.tensor_obj(x, a), cat.tensor_obj(x, b))
    hab = cat.hom(a, b)
    images = hab.coords_many([cat.composes(post, cat.tensor(idxd, u), pre) for u in hu.vectors])
    return IdealSlice(a, b, hab.dim, _span(images, hab.dim, cat.field))


def explicit_slice(cat: Category, a, b, vectors) -> IdealSlice:
    hab = cat.hom(a, b)
    return IdealSlice(a, b, hab.dim, _span([list(v) for v in vectors], hab.dim, cat.field))


def ideal_slice(cat: Category, spec: IdealSpec, a, b) -> IdealSlice:
    if spec.kind == "zero":
        return IdealSlice(a, b, cat.hom(a, b).dim, [])
    if spec.kind == "negligible":
        return negligible_slice(cat, a, b)
    if spec.kind == "principal":
        return principal_slice(cat, spec.generator, a, b)
    return explicit_slice(cat, a, b, spec.slice_fn(cat, a, b))


class QuotientCategory(Category):
    """C / J: same objects and structure maps, hom spaces modulo the ideal slices.

    Morphisms are represented by base morphisms; equality and coordinates are
    taken modulo J.  Slices are computed lazily and cached per pair.
    """

    def __init__(self, base: Category, spec: IdealSpec):
        self.base = base
        self.spec = spec
        self.field = base.field
        self._slices: dict = {}
        self._homs: dict = {}

    def slice(self, a, b) -> IdealSlice:
        key = (a, b)
        if key not in self._slices:
            self._slices[key] = ideal_slice(self.base, self.spec, a, b)
        return self._slices[key]

    def hom(self, a, b) -> HomBasis:
        key = (a, b)
        if key not in self._homs:
            self._homs[key] = quotient_basis(self.base.hom(a, b), self.slice(a, b).vectors, self)
        return self._homs[key]

    def quotient_dim_table(self, pairs):
        rows = []
        for a, b in pairs:
            rows.append(self.slice(a, b).to_json(self.base))
        return rows

    # structure delegated to the base category
    def unit(self):
        return self.base.unit()

    def tensor_obj(self, x, y):
        return self.base.tensor_obj(x, y)

    def dual_obj(self, x):
        return self.base.dual_obj(x)

    def identity(self, x):
        return self.base.identity(x)

    def zero(self, x, y):
        return self.base.zero(x, y)

    def source(self, f):
        return self.base.source(f)

    def target(self, f):
        return self.base.target(f)

    def compose(self, g, f):
        return self.base.compose(g, f)

    def tensor(self, f, g):
        return self.base.tensor(f, g)

    def add(self, f, g):
        return self.base.add(f, g)

    def scale(self, c, f):
        return self.base.scale(c, f)

    def ev(self, x):
        return self.base.ev(x)

    def co(self, x):
        return self.base.co(x)

    def braid(self, x, y):
        return self.base.braid(x, y)

    def degree(self, x):
        return self.base.degree(x)

    def objects_up_to(self, max_degree):
        return self.base.objects_up_to(max_degree)

    def obj_json(self, x):
        return self.base.obj_json(x)

    def mor_json(self, f):
        return self.base.mor_json(f)

    def describe(self):
        d = dict(self.base.describe())
        ideal = {"kind": self.spec.kind}
        if self.spec.label:
            ideal["label"] = self.spec.label
        if self.spec.kind == "principal":
            ideal["generator"] = self.base.obj_json(self.spec.generator)
        d["ideal"] = ideal
        return d


def quotient_hom_basis(cat: Category, a, b, spec: IdealSpec) -> HomBasis:
    return QuotientCategory(cat, spec).hom(a, b)


__all__ = ["IdealSpec", "IdealSlice", "negligible_slice", "principal_membership",
           "principal_slice", "principal_slice_adjoint", "explicit_slice", "ideal_slice",
           "QuotientCategory", "quotient_hom_basis"]
