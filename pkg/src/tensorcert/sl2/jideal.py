"""The thick ideals J_r of Tilt(SL_2).

J_r(A, B) consists of the morphisms factoring through a direct sum of T_i
with i >= p^r - 1; it is the tensor ideal generated by id_{St_r}, where
St_r = T_{p^r - 1}.  Slices are computed on atoms and assembled block by
block (any ideal satisfies J(A, B) = sum_{k,l} iota_l J(T_{a_k}, T_{b_l}) pi_k).

Two independent descriptions are available on atoms:

* ``principal``: image of the partial trace Hom(St_r T_a, St_r T_b) -> Hom(T_a, T_b);
* ``through``: span of beta o alpha with alpha : T_a -> T_i, beta : T_i -> T_b,
  over p^r - 1 <= i <= bound.  This is only a lower bound for the ideal
  (the bound truncates the family of T_i), recorded wherever it is used.
"""

from __future__ import annotations

import numpy as np

from ..ideals import IdealSpec, QuotientCategory, principal_slice_adjoint
from . import modules as md
from .tilt import TiltCategory


def _row_span(rows, n, p):
    if not rows:
        return np.zeros((0, n), dtype=np.int64)
    arr = np.array(rows, dtype=np.int64).reshape(len(rows), n) % p
    red, k = md.to_nmod(arr, p).rref()
    return md.from_nmod(red)[:k]


class JIdeal:
    def __init__(self, cat: TiltCategory, r: int, method: str = "principal", bound: int | None = None):
        if r < 1:
            raise ValueError("r must be >= 1")
        if method not in ("principal", "through"):
            raise ValueError(f"unknown method {method!r}")
        self.cat = cat
        self.p = cat.p
        self.r = r
        self.N = self.p ** r - 1
        self.method = method
        self.bound = bound if bound is not None else 2 * self.N
        self._atoms: dict = {}

    @property
    def label(self):
        return f"J_{self.r}"

    def truncation(self) -> dict:
        if self.method == "principal":
            return {"ideal": self.label, "method": "partial traces from St_r (exact)"}
        return {"ideal": self.label, "method": "factor through T_i",
                "i_range": [self.N, self.bound], "note": "lower bound for the ideal"}

    def atom_slice(self, a: int, b: int):
        """Rows spanning J(T_a, T_b) in the atom hom basis coordinates."""
        key = (a, b)
        if key in self._atoms:
            return self._atoms[key]
        data = self.cat.data
        h = data.atom_hom(a, b)
        p = self.p
        if h.dim == 0:
            out = np.zeros((0, 0), dtype=np.int64)
        elif a >= self.N or b >= self.N:
            out = np.eye(h.dim, dtype=np.int64)
        elif self.method == "principal":
            sl = principal_slice_adjoint(self.cat, (self.N,), (a,), (b,))
            out = _row_span([[int(c) for c in v] for v in sl.vectors], h.dim, p)
        else:
            rows = []
            for i in range(self.N, self.bound + 1):
                ha, hb = data.atom_hom(a, i), data.atom_hom(i, b)
                for alpha in ha.basis:
                    for beta in hb.basis:
                        rows.append(h.coords(md.mm(beta, alpha, p)))
            out = _row_span(rows, h.dim, p)
        self._atoms[key] = out
        return out

    def atom_dim(self, a: int, b: int) -> int:
        return int(self.atom_slice(a, b).shape[0])

    def slice_rows(self, A, B):
        """Rows spanning J(A, B) in the block coordinates of cat.hom(A, B)."""
        hb = self.cat.hom(A, B)
        da, db = self.cat.data.decomposition(A), self.cat.data.decomposition(B)
        rows = []
        for k, l, off, h in hb.blocks:
            sl = self.atom_slice(da[k][0], db[l][0])
            for r in sl:
                v = np.zeros(hb.dim, dtype=np.int64)
                v[off:off + h.dim] = r
                rows.append(v)
        return rows

    def dim(self, A, B) -> int:
        return len(self.slice_rows(A, B))

    def slice_fn(self, cat, A, B):
        fld = self.cat.field
        return [[fld(int(c)) for c in v] for v in self.slice_rows(A, B)]

    def spec(self) -> IdealSpec:
        return IdealSpec("explicit", slice_fn=self.slice_fn, label=self.label)

    def quotient(self) -> QuotientCategory:
        q = QuotientCategory(self.cat, self.spec())
        return q


def word_table(cat: TiltCategory, r: int, max_len: int, bound: int | None = None):
    """dim Hom, dim J_r (principal) and dim J_r (through T_i) on (V^m, V^n), m, n <= max_len.

    Dimensions are assembled from the atom multiplicities of V^m and V^n, so
    no hom basis of the (possibly large) word objects is ever built.
    """
    principal = JIdeal(cat, r)
    through = JIdeal(cat, r, "through", bound)
    data = cat.data
    labels = {m: [lab for lab, _, _ in data.decomposition((1,) * m)] for m in range(max_len + 1)}
    rows = []
    for m in range(max_len + 1):
        for n in range(max_len + 1):
            if (m + n) % 2:
                continue
            hom = jp = jt = 0
            for a in labels[m]:
                for b in labels[n]:
                    hom += data.atom_hom(a, b).dim
                    jp += principal.atom_dim(a, b)
                    jt += through.atom_dim(a, b)
            rows.append({"m": m, "n": n, "dim_hom": hom, "dim_J_principal": jp,
                         "dim_J_through": jt, "agree": jp == jt})
    return rows


def direct_principal_dim(cat: TiltCategory, r: int, m: int, n: int) -> int:
    """dim J_r(V^m, V^n) from partial traces on the word objects themselves."""
    return principal_slice_adjoint(cat, (cat.p ** r - 1,), (1,) * m, (1,) * n).dim


def quotient_by_J(cat: TiltCategory, r: int) -> QuotientCategory:
    return JIdeal(cat, r).quotient()


__all__ = ["JIdeal", "quotient_by_J", "word_table", "direct_principal_dim"]
