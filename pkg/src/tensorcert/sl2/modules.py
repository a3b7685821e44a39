"""Finite-dimensional SL_2 modules in characteristic p, concretely.

A module is a weight basis (every basis vector has a weight) together with
the matrices of the divided powers E^(n), F^(n) of the hyperalgebra, reduced
mod p.  Tensor products use the coproduct
Delta(E^(n)) = sum_a E^(a) (x) E^(n-a), and G-module maps are the
weight-preserving matrices commuting with E^(p^a), F^(p^a), which generate
the hyperalgebra together with the weight action.

All integer matrices are numpy int64 with entries in [0, p).  Products go
through float64 BLAS, which is exact while inner dimensions times (p-1)^2
stay far below 2^53.
"""

from __future__ import annotations

import random

import numpy as np
from flint import nmod_mat

from .characters import Character


class ModuleError(RuntimeError):
    pass


def mm(a, b, p):
    """Exact matrix product mod p."""
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    out = np.asarray(a, dtype=np.float64) @ np.asarray(b, dtype=np.float64)
    return np.mod(out, p).astype(np.int64)


def kron(a, b, p):
    return np.mod(np.kron(a, b), p)


def to_nmod(a, p):
    r, c = a.shape
    return nmod_mat(r, c, [int(x) for x in a.ravel()], p)


def from_nmod(m):
    return np.array([[int(m[i, j]) for j in range(m.ncols())] for i in range(m.nrows())],
                    dtype=np.int64).reshape(m.nrows(), m.ncols())


def nullspace_mod(a, p):
    """Columns spanning the right kernel of a (shape (ncols, k))."""
    r, c = a.shape
    if c == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if r == 0:
        return np.eye(c, dtype=np.int64)
    x, k = to_nmod(a, p).nullspace()
    if k == 0:
        return np.zeros((c, 0), dtype=np.int64)
    full = from_nmod(x)
    return full[:, :k]


def rank_mod(a, p) -> int:
    if a.size == 0:
        return 0
    return to_nmod(a, p).rank()


def inverse_mod(a, p):
    return from_nmod(to_nmod(a, p).inv())


class Module:
    """Weight basis plus divided-power matrices E[n], F[n] for n = 0..top."""

    def __init__(self, p: int, weights, E, F):
        self.p = p
        self.weights = np.asarray(weights, dtype=np.int64)
        self.E = [np.asarray(m, dtype=np.int64) % p for m in E]
        self.F = [np.asarray(m, dtype=np.int64) % p for m in F]

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def top(self) -> int:
        return len(self.E) - 1

    def e(self, n):
        if n < len(self.E):
            return self.E[n]
        return np.zeros((self.dim, self.dim), dtype=np.int64)

    def f(self, n):
        if n < len(self.F):
            return self.F[n]
        return np.zeros((self.dim, self.dim), dtype=np.int64)

    def character(self) -> Character:
        return Character.from_weights(self.weights.tolist())

    def weight_blocks(self):
        return {int(w): np.nonzero(self.weights == w)[0] for w in np.unique(self.weights)}

    def generators(self):
        """(shift, matrix) for E^(p^a), F^(p^a) with p^a <= top."""
        out = []
        q = 1
        while q <= self.top:
            out.append((2 * q, q, "E"))
            out.append((-2 * q, q, "F"))
            q *= self.p
        return out

    def gen_matrix(self, kind, n):
        return self.e(n) if kind == "E" else self.f(n)

    def check(self) -> bool:
        """Weight shifts and a few hyperalgebra relations (used in tests)."""
        p = self.p
        w = self.weights
        for n in range(1, self.top + 1):
            for mat, s in ((self.E[n], 2 * n), (self.F[n], -2 * n)):
                rows, cols = np.nonzero(mat)
                if np.any(w[rows] != w[cols] + s):
                    return False
        # E^(1) E^(n) = (n+1) E^(n+1) and the same for F
        for n in range(0, self.top):
            if not np.array_equal(mm(self.e(1), self.e(n), p), (n + 1) * self.e(n + 1) % p):
                return False
            if not np.array_equal(mm(self.f(1), self.f(n), p), (n + 1) * self.f(n + 1) % p):
                return False
        # [E, F] acts by the weight
        comm = (mm(self.e(1), self.f(1), p) - mm(self.f(1), self.e(1), p)) % p
        return bool(np.array_equal(comm, np.diag(w % p)))

    def submodule(self, iota, pi):
        """Module structure on the image of iota, given pi with pi iota = id."""
        p = self.p
        weights = self.weights[np.argmax(iota != 0, axis=0)] if iota.shape[1] else np.zeros(0, np.int64)
        E = [mm(pi, mm(m, iota, p), p) for m in self.E]
        F = [mm(pi, mm(m, iota, p), p) for m in self.F]
        return Module(p, weights, _trim(E), _trim(F))

    def dual(self):
        """Contragredient module, in the dual basis: E^(n) acts by (-1)^n E^(n)^T."""
        p = self.p
        E = [((-1) ** n) * m.T % p for n, m in enumerate(self.E)]
        F = [((-1) ** n) * m.T % p for n, m in enumerate(self.F)]
        return Module(p, -self.weights, E, F)


def _trim(mats):
    mats = list(mats)
    while len(mats) > 1 and not mats[-1].any():
        mats.pop()
    return mats


def trivial(p: int) -> Module:
    one = np.ones((1, 1), dtype=np.int64)
    return Module(p, [0], [one], [one])


def natural(p: int) -> Module:
    """Basis e0 (weight 1), e1 (weight -1); E e1 = e0, F e0 = e1."""
    i = np.eye(2, dtype=np.int64)
    e = np.array([[0, 1], [0, 0]], dtype=np.int64)
    f = np.array([[0, 0], [1, 0]], dtype=np.int64)
    return Module(p, [1, -1], [i, e], [i, f])


def tensor(m: Module, n: Module) -> Module:
    p = m.p
    weights = (m.weights[:, None] + n.weights[None, :]).ravel()
    top = m.top + n.top
    E, F = [], []
    for k in range(top + 1):
        e = np.zeros((m.dim * n.dim,) * 2, dtype=np.int64)
        f = np.zeros_like(e)
        for a in range(max(0, k - n.top), min(k, m.top) + 1):
            e += np.kron(m.e(a), n.e(k - a))
            f += np.kron(m.f(a), n.f(k - a))
        E.append(e % p)
        F.append(f % p)
    return Module(p, weights, _trim(E), _trim(F))


def hom_basis(m: Module, n: Module) -> list:
    """Basis of Hom_G(m, n) as matrices of shape (n.dim, m.dim)."""
    p = m.p
    unknowns = [(i, j) for i in range(n.dim) for j in range(m.dim) if n.weights[i] == m.weights[j]]
    if not unknowns:
        return []
    ua = np.array([u[0] for u in unknowns])
    ub = np.array([u[1] for u in unknowns])
    sol = np.eye(len(unknowns), dtype=np.int64)
    gens = {(s, q, k) for s, q, k in m.generators() + n.generators()}
    for shift, q, kind in sorted(gens):
        xm, xn = m.gen_matrix(kind, q), n.gen_matrix(kind, q)
        if not xm.any() and not xn.any():
            continue
        valid = n.weights[:, None] == m.weights[None, :] + shift
        rowidx = -np.ones(valid.shape, dtype=np.int64)
        rowidx[valid] = np.arange(int(valid.sum()))
        a = np.zeros((int(valid.sum()), len(unknowns)), dtype=np.int64)
        for u in range(len(unknowns)):
            i, j = ua[u], ub[u]
            ls = np.nonzero(xm[j])[0]
            if len(ls):
                np.add.at(a, (rowidx[i, ls], u), xm[j, ls])
            ks = np.nonzero(xn[:, i])[0]
            if len(ks):
                np.add.at(a, (rowidx[ks, j], u), -xn[ks, i])
        a %= p
        red = mm(a, sol, p)
        if not red.any():
            continue
        ns = nullspace_mod(red, p)
        sol = mm(sol, ns, p)
        if sol.shape[1] == 0:
            return []
    out = []
    for c in range(sol.shape[1]):
        phi = np.zeros((n.dim, m.dim), dtype=np.int64)
        phi[ua, ub] = sol[:, c]
        out.append(phi)
    return out


def _poly_eval(coeffs, a, p):
    """coeffs lowest degree first."""
    out = np.zeros_like(a)
    ident = np.eye(a.shape[0], dtype=np.int64)
    for c in reversed(coeffs):
        out = (mm(out, a, p) + int(c) * ident) % p
    return out


def _matpow(a, k, p):
    out = np.eye(a.shape[0], dtype=np.int64)
    base = a
    while k:
        if k & 1:
            out = mm(out, base, p)
        base = mm(base, base, p)
        k >>= 1
    return out


def fitting_split(mod: Module, endo):
    """Generalized eigenspace decomposition of mod under a G-endomorphism.

    Returns a list of (iota, pi) with pi_k iota_l = delta_kl and
    sum iota_k pi_k = id, one per irreducible factor of the characteristic
    polynomial.  Bases are weight bases.
    """
    p = mod.p
    charpoly = to_nmod(endo, p).charpoly()
    _, factors = charpoly.factor()
    if len(factors) <= 1:
        return [(np.eye(mod.dim, dtype=np.int64),) * 2]
    blocks = mod.weight_blocks()
    cols = []
    for q, mult in factors:
        qa = _matpow(_poly_eval([int(c) for c in q.coeffs()], endo, p), mult, p)
        pieces = []
        for w, idx in blocks.items():
            ns = nullspace_mod(qa[np.ix_(idx, idx)], p)
            for c in range(ns.shape[1]):
                v = np.zeros(mod.dim, dtype=np.int64)
                v[idx] = ns[:, c]
                pieces.append(v)
        cols.append(np.array(pieces, dtype=np.int64).T.reshape(mod.dim, len(pieces)))
    basis = np.concatenate(cols, axis=1)
    if basis.shape[1] != mod.dim:
        raise ModuleError("generalized eigenspaces do not span")
    inv = inverse_mod(basis, p)
    out, start = [], 0
    for c in cols:
        k = c.shape[1]
        out.append((c, inv[start:start + k]))
        start += k
    return out


def _span(mats, p):
    """Independent rows spanning the flattened matrices."""
    if not mats:
        return np.zeros((0, 0), dtype=np.int64)
    arr = np.array([m.ravel() for m in mats], dtype=np.int64)
    red, k = to_nmod(arr, p).rref()
    return from_nmod(red)[:k]


def is_local(mod: Module, endo_basis) -> bool:
    """End(mod) is local.

    Every basis element must be a scalar plus a nilpotent, and the nilpotent
    parts must span a subspace N of codimension one with N N in N and
    N^k = 0 for some k.
    """
    p = mod.p
    d = mod.dim
    ident = np.eye(d, dtype=np.int64)
    nil = []
    for b in endo_basis:
        _, factors = to_nmod(b, p).charpoly().factor()
        if len(factors) != 1 or factors[0][0].degree() != 1:
            return False
        lam = (-int(factors[0][0].coeffs()[0])) % p
        nil.append((b - lam * ident) % p)
    span_n = _span(nil, p)
    if span_n.shape[0] != len(endo_basis) - 1:
        return False
    cur = span_n
    while cur.shape[0]:
        prods = [mm(x.reshape(d, d), y, p) for x in cur for y in nil]
        new = _span(prods, p)
        if new.shape[0]:
            both = _span([r.reshape(d, d) for r in np.concatenate([span_n, new])], p)
            if both.shape[0] != span_n.shape[0]:
                return False
        if new.shape[0] >= cur.shape[0]:
            return False
        cur = new
    return True


def random_combination(basis, rng: random.Random, p: int):
    out = np.zeros_like(basis[0])
    for b in basis:
        out = (out + rng.randrange(p) * b) % p
    return out


def decompose(mod: Module, rng: random.Random, max_tries: int = 200):
    """Split mod into indecomposable summands.

    Returns a list of (iota, pi, submodule).  A piece is accepted once its
    endomorphism algebra is local; otherwise a random endomorphism with a
    reducible characteristic polynomial splits it further.
    """
    p = mod.p
    done = []
    pending = [(np.eye(mod.dim, dtype=np.int64), np.eye(mod.dim, dtype=np.int64), mod)]
    while pending:
        iota, pi, piece = pending.pop()
        basis = hom_basis(piece, piece)
        if len(basis) == 1 or is_local(piece, basis):
            done.append((iota, pi, piece))
            continue
        for _ in range(max_tries):
            endo = random_combination(basis, rng, p)
            parts = fitting_split(piece, endo)
            if len(parts) > 1:
                break
        else:
            raise ModuleError("no splitting endomorphism found")
        for i2, p2 in parts:
            pending.append((mm(iota, i2, p), mm(p2, pi, p), piece.submodule(i2, p2)))
    done.sort(key=lambda t: (-int(t[2].weights.max()), t[2].dim))
    return done


def find_isomorphism(m: Module, n: Module, rng: random.Random, max_tries: int = 200):
    """An invertible G-map m -> n, or None if none was found."""
    if m.dim != n.dim or m.character() != n.character():
        return None
    basis = hom_basis(m, n)
    if not basis:
        return None
    for b in basis:
        if rank_mod(b, m.p) == m.dim:
            return b
    for _ in range(max_tries):
        c = random_combination(basis, rng, m.p)
        if rank_mod(c, m.p) == m.dim:
            return c
    return None


__all__ = ["Module", "ModuleError", "trivial", "natural", "tensor", "hom_basis",
           "fitting_split", "is_local", "decompose", "find_isomorphism", "mm", "kron",
           "nullspace_mod", "rank_mod", "inverse_mod"]
