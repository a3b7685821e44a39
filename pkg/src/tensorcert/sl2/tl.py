"""The Temperley-Lieb dictionary: diagrams at loop value -2 acting on tensor powers of V.

rho sends a TL diagram with m sources and n targets to the matrix
V^{(x) m} -> V^{(x) n} given by a state sum: a through-strand forces equal
indices, a cap joining sources i < j contributes omega(x_i, x_j) and a cup
joining targets i < j contributes c(y_i, y_j), where omega is the symplectic
form of V and c its inverse matrix.  Both snake identities hold and a closed
loop evaluates to sum omega_ab c_ab = -2, so rho is a monoidal functor from
TL(-2) over F_p into Rep SL_2.  It is full and faithful (Schur-Weyl duality
for SL_2 holds in every characteristic), which lets idempotents found in
End_G(V^{(x) n}) be rewritten in the diagram basis.
"""

from __future__ import annotations

import numpy as np

from ..category import KaroubiCategory
from ..diagrams import DEFAULT_CAPS, Caps, MorLin, enumerate_diagrams
from ..homspace import InconsistencyError
from . import modules as md


def symplectic(p: int):
    omega = np.array([[0, 1], [p - 1, 0]], dtype=np.int64)
    return omega, md.inverse_mod(omega, p)


def index_digits(count: int, length: int):
    """digits[k, i] = i-th tensor factor index of basis vector k (first factor most significant)."""
    k = np.arange(count)
    return np.array([(k >> (length - 1 - i)) & 1 for i in range(length)], dtype=np.int64).T.reshape(
        count, length)


def rho_entries(d, p: int, ys, xs):
    """Entries rho(d)[ys, xs] for index arrays ys (targets) and xs (sources)."""
    m, n = len(d.source), len(d.target)
    omega, c = symplectic(p)
    xd = index_digits(1 << m, m)[xs] if m else np.zeros((len(xs), 0), np.int64)
    yd = index_digits(1 << n, n)[ys] if n else np.zeros((len(ys), 0), np.int64)
    out = np.ones(len(xs), dtype=np.int64)
    for a, b in d.blocks:
        if b < m:
            out = out * omega[xd[:, a], xd[:, b]]
        elif a >= m:
            out = out * c[yd[:, a - m], yd[:, b - m]]
        else:
            out = out * (xd[:, a] == yd[:, b - m])
        out %= p
    return out


def rho(d, p: int):
    m, n = len(d.source), len(d.target)
    ys, xs = np.meshgrid(np.arange(1 << n), np.arange(1 << m), indexing="ij")
    return rho_entries(d, p, ys.ravel(), xs.ravel()).reshape(1 << n, 1 << m)


def rho_morlin(f: MorLin, p: int):
    out = np.zeros((1 << len(f.target), 1 << len(f.source)), dtype=np.int64)
    for d, c in f.terms.items():
        out = (out + int(c) * rho(d, p)) % p
    return out


def _weight_positions(m: int, n: int):
    """(ys, xs) grouped by common weight, weight 0 (or 1) first."""
    wx = index_digits(1 << m, m).sum(axis=1) if m else np.zeros(1, np.int64)
    wy = index_digits(1 << n, n).sum(axis=1) if n else np.zeros(1, np.int64)
    # weight = (#zeros - #ones) ; compare through the number of ones shifted
    wx = m - 2 * wx
    wy = n - 2 * wy
    groups = []
    for w in sorted(set(wx.tolist()) & set(wy.tolist()), key=abs):
        ys = np.nonzero(wy == w)[0]
        xs = np.nonzero(wx == w)[0]
        yy, xx = np.meshgrid(ys, xs, indexing="ij")
        groups.append((yy.ravel(), xx.ravel()))
    return groups


class TLDictionary:
    """Coordinates of G-maps V^m -> V^n in the TL diagram basis."""

    def __init__(self, p: int, m: int, n: int, caps: Caps = DEFAULT_CAPS):
        self.p, self.m, self.n = p, m, n
        src, tgt = ("+",) * m, ("+",) * n
        self.diagrams = enumerate_diagrams(src, tgt, "temperley-lieb", caps)
        k = len(self.diagrams)
        ys_all, xs_all = [], []
        rank = 0
        vals = np.zeros((k, 0), dtype=np.int64)
        for ys, xs in _weight_positions(m, n):
            block = np.array([rho_entries(d, p, ys, xs) for d in self.diagrams]).reshape(k, len(ys))
            vals = np.concatenate([vals, block], axis=1)
            ys_all.append(ys)
            xs_all.append(xs)
            rank = md.rank_mod(vals, p) if k else 0
            if rank == k:
                break
        if rank != k:
            raise InconsistencyError("TL diagrams act linearly dependently on tensor powers")
        self.ys = np.concatenate(ys_all) if ys_all else np.zeros(0, np.int64)
        self.xs = np.concatenate(xs_all) if xs_all else np.zeros(0, np.int64)
        red, r = md.to_nmod(vals, p).rref()
        red = md.from_nmod(red)[:r]
        self.pivots = np.array([int(np.nonzero(row)[0][0]) for row in red], dtype=np.int64)
        self.solver = md.inverse_mod(vals[:, self.pivots], p) if k else None   # (k x k)
        self.values = vals

    def coordinates(self, mat):
        """c with sum_d c_d rho(d) = mat on the sampled positions."""
        if not self.diagrams:
            return np.zeros(0, dtype=np.int64)
        v = np.asarray(mat)[self.ys[self.pivots], self.xs[self.pivots]]
        return md.mm(v[None, :], self.solver, self.p)[0]

    def to_morlin(self, mat, flavor) -> MorLin:
        c = self.coordinates(mat)
        fld = flavor.field
        terms = {d: fld(int(x)) for d, x in zip(self.diagrams, c) if x}
        return MorLin(flavor, ("+",) * self.m, ("+",) * self.n, terms)

    def reconstruct(self, coords):
        out = np.zeros((1 << self.n, 1 << self.m), dtype=np.int64)
        for d, x in zip(self.diagrams, coords):
            if x:
                out = (out + int(x) * rho(d, self.p)) % self.p
        return out


def tl_category(p: int, caps: Caps = DEFAULT_CAPS) -> KaroubiCategory:
    return KaroubiCategory.make("temperley-lieb", {"kind": "Fp", "p": p}, -2, caps)


__all__ = ["rho", "rho_entries", "rho_morlin", "TLDictionary", "tl_category", "symplectic",
           "index_digits"]
