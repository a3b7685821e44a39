"""The category of tilting SL_2-modules in characteristic p, realized concretely.

Objects are tuples of labels (a_1, ..., a_n) standing for
T_{a_1} (x) ... (x) T_{a_n}; the empty tuple is the unit.  Morphisms are
matrices between the underlying vector spaces.  Each indecomposable T_i is a
fixed concrete module (the "atom"): T_0 is trivial, T_1 the natural module
with the symplectic form, and T_i the summand of T_{i-1} (x) T_1 containing
the weight i.  Every object carries a decomposition into atoms with explicit
inclusions and projections, so hom spaces are assembled block by block from
the atom hom spaces Hom(T_a, T_b).

Duality: T_a is self-dual via a chosen invariant nondegenerate form beta_a;
the dual of (a_1..a_n) is (a_n..a_1) with nested evaluations.  The braiding
is the flip of tensor factors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from ..category import Category, CategoryError
from ..homspace import HomBasis, HomSpaceError
from ..scalars import PrimeField
from . import modules as md
from .characters import tilting_character


@dataclass(frozen=True, eq=False)
class TMor:
    source: tuple
    target: tuple
    mat: np.ndarray

    def __repr__(self):
        return f"TMor({self.source} -> {self.target})"


@dataclass
class Atom:
    label: int
    module: md.Module
    form: np.ndarray       # beta(v_i, v_j) = form[i, j]
    coform: np.ndarray     # inverse of form

    @property
    def dim(self):
        return self.module.dim


class AtomHom:
    """Basis of Hom_G(T_a, T_b) with a fast coordinate map."""

    def __init__(self, a, b, basis, p):
        self.a, self.b, self.p = a, b, p
        self.basis = basis
        self.dim = len(basis)
        if basis:
            flat = np.array([m.ravel() for m in basis], dtype=np.int64)
            red, k = md.to_nmod(flat, p).rref()
            red = md.from_nmod(red)[:k]
            piv = [int(np.nonzero(r)[0][0]) for r in red]
            self.pivots = np.array(piv)
            self.solver = md.inverse_mod(flat[:, self.pivots], p)   # rows: basis, cols: pivots
        else:
            self.pivots = np.zeros(0, dtype=np.int64)

    def coords(self, m):
        """Coordinates of a G-map m in the basis (no membership check)."""
        if not self.dim:
            return np.zeros(0, dtype=np.int64)
        v = m.ravel()[self.pivots]
        return md.mm(v[None, :], self.solver, self.p)[0]

    def combine(self, c):
        out = np.zeros_like(self.basis[0]) if self.basis else None
        for x, b in zip(c, self.basis):
            if x:
                out = (out + int(x) * b) % self.p
        return out


class TiltData:
    """Atoms, fusion rules with explicit maps, atom hom spaces (all cached)."""

    def __init__(self, p: int, seed: int = 0):
        if p < 2:
            raise ValueError("p must be a prime")
        self.p = p
        self.seed = seed
        self.atoms: dict = {}
        self._fusion: dict = {}
        self._homs: dict = {}
        self._decomp: dict = {}
        nat = md.natural(p)
        self.atoms[0] = Atom(0, md.trivial(p), np.ones((1, 1), np.int64), np.ones((1, 1), np.int64))
        omega = np.array([[0, 1], [p - 1, 0]], dtype=np.int64)
        self.atoms[1] = Atom(1, nat, omega, md.inverse_mod(omega, p))

    def rng(self, *key):
        return random.Random(f"{self.seed}:{self.p}:{key}")

    def atom(self, i: int) -> Atom:
        if i < 0:
            raise ValueError("labels are nonnegative")
        while i not in self.atoms:
            self._build_next()
        return self.atoms[i]

    def _build_next(self):
        p = self.p
        i = max(self.atoms) + 1
        prev = self.atoms[i - 1]
        big = md.tensor(prev.module, self.atoms[1].module)
        pieces = md.decompose(big, self.rng("atom", i))
        mine = [t for t in pieces if int(t[2].weights.max()) == i]
        if len(mine) != 1:
            raise md.ModuleError(f"weight {i} is not in exactly one summand")
        mod = mine[0][2]
        if mod.character() != tilting_character(i, p):
            raise md.ModuleError(f"T_{i}: realized character disagrees with the tilting character")
        forms = md.hom_basis(mod, mod.dual())
        rng = self.rng("form", i)
        phi = next((f for f in forms if md.rank_mod(f, p) == mod.dim), None)
        while phi is None:
            c = md.random_combination(forms, rng, p)
            if md.rank_mod(c, p) == mod.dim:
                phi = c
        form = phi.T.copy()
        self.atoms[i] = Atom(i, mod, form, md.inverse_mod(form, p))

    def atom_hom(self, a: int, b: int) -> AtomHom:
        key = (a, b)
        if key not in self._homs:
            basis = md.hom_basis(self.atom(a).module, self.atom(b).module)
            self._homs[key] = AtomHom(a, b, basis, self.p)
        return self._homs[key]

    def fusion(self, a: int, b: int):
        """T_a (x) T_b = sum of atoms: list of (label, iota, pi)."""
        key = (a, b)
        if key in self._fusion:
            return self._fusion[key]
        p = self.p
        if a == 0 or b == 0:
            d = self.atom(max(a, b)).dim
            eye = np.eye(d, dtype=np.int64)
            out = [(max(a, b), eye, eye)]
        else:
            big = md.tensor(self.atom(a).module, self.atom(b).module)
            rng = self.rng("fusion", a, b)
            out = []
            for iota, pi, piece in md.decompose(big, rng):
                lab = int(piece.weights.max())
                at = self.atom(lab)
                phi = md.find_isomorphism(piece, at.module, rng)
                if phi is None:
                    raise md.ModuleError(f"summand of T_{a} (x) T_{b} is not isomorphic to T_{lab}")
                inv = md.inverse_mod(phi, p)
                out.append((lab, md.mm(iota, inv, p), md.mm(phi, pi, p)))
        out.sort(key=lambda t: -t[0])
        self._fusion[key] = out
        return out

    def decomposition(self, obj: tuple):
        """Atoms of T_obj: list of (label, iota, pi) with sum iota pi = id."""
        obj = tuple(obj)
        if obj in self._decomp:
            return self._decomp[obj]
        p = self.p
        if len(obj) == 0:
            one = np.ones((1, 1), dtype=np.int64)
            out = [(0, one, one)]
        elif len(obj) == 1:
            eye = np.eye(self.atom(obj[0]).dim, dtype=np.int64)
            out = [(obj[0], eye, eye)]
        else:
            head = self.decomposition(obj[:-1])
            b = obj[-1]
            eb = np.eye(self.atom(b).dim, dtype=np.int64)
            out = []
            for j, iota, pi in head:
                ij, pj = md.kron(iota, eb, p), md.kron(pi, eb, p)
                for k, i2, p2 in self.fusion(j, b):
                    out.append((k, md.mm(ij, i2, p), md.mm(p2, pj, p)))
        self._decomp[obj] = out
        return out

    def dim(self, obj) -> int:
        d = 1
        for a in obj:
            d *= self.atom(a).dim
        return d


class TiltCategory(Category):
    """Tilt(SL_2) over F_p, implementing the generic category protocol."""

    def __init__(self, p: int, seed: int = 0, data: TiltData | None = None):
        self.p = p
        self.field = PrimeField(p)
        self.data = data or TiltData(p, seed)
        self._homs: dict = {}
        self._ev: dict = {}

    # objects
    def obj(self, *labels) -> tuple:
        for a in labels:
            if not isinstance(a, (int, np.integer)) or a < 0:
                raise CategoryError(f"bad tilting label {a!r}")
        return tuple(int(a) for a in labels)

    def unit(self):
        return ()

    def tensor_obj(self, x, y):
        return tuple(x) + tuple(y)

    def dual_obj(self, x):
        return tuple(reversed(x))

    def degree(self, x) -> int:
        return sum(x)

    def objects_up_to(self, max_degree):
        return [()] + [(i,) for i in range(1, max_degree + 1)]

    def vdim(self, x) -> int:
        return self.data.dim(x)

    # morphisms
    def _m(self, s, t, mat):
        return TMor(tuple(s), tuple(t), np.asarray(mat, dtype=np.int64) % self.p)

    def mor(self, source, target, mat):
        mat = np.asarray(mat, dtype=np.int64)
        if mat.shape != (self.vdim(target), self.vdim(source)):
            raise CategoryError("matrix shape does not match the objects")
        return self._m(source, target, mat)

    def source(self, f):
        return f.source

    def target(self, f):
        return f.target

    def identity(self, x):
        return self._m(x, x, np.eye(self.vdim(x), dtype=np.int64))

    def zero(self, x, y):
        return self._m(x, y, np.zeros((self.vdim(y), self.vdim(x)), dtype=np.int64))

    def compose(self, g, f):
        if g.source != f.target:
            raise CategoryError(f"cannot compose {g} after {f}")
        return TMor(f.source, g.target, md.mm(g.mat, f.mat, self.p))

    def tensor(self, f, g):
        return TMor(f.source + g.source, f.target + g.target, md.kron(f.mat, g.mat, self.p))

    def add(self, f, g):
        if (f.source, f.target) != (g.source, g.target):
            raise CategoryError("cannot add morphisms between different objects")
        return TMor(f.source, f.target, (f.mat + g.mat) % self.p)

    def scale(self, c, f):
        return TMor(f.source, f.target, (int(c) * f.mat) % self.p)

    def ev(self, x):
        """ev_X : X^v X -> 1, nested pairings beta_a(u, v)."""
        x = tuple(x)
        if x in self._ev:
            return self._ev[x]
        p = self.p
        if not x:
            out = self._m((), (), np.ones((1, 1), dtype=np.int64))
        elif len(x) == 1:
            out = self._m(x + x, (), self.data.atom(x[0]).form.reshape(1, -1))
        else:
            # ev_{X Y} = ev_Y o (Y^v (x) ev_X (x) Y) with X = x[:-1], Y = x[-1:]
            xs, y = x[:-1], x[-1:]
            dy = self.vdim(y)
            mid = md.kron(md.kron(np.eye(dy, dtype=np.int64), self.ev(xs).mat, p),
                          np.eye(dy, dtype=np.int64), p)
            out = self._m(self.dual_obj(x) + x, (), md.mm(self.ev(y).mat, mid, p))
        self._ev[x] = out
        return out

    def co(self, x):
        """co_X : 1 -> X X^v, with coefficient matrix inverse to the form."""
        x = tuple(x)
        p = self.p
        if not x:
            return self._m((), (), np.ones((1, 1), dtype=np.int64))
        if len(x) == 1:
            return self._m((), x + x, self.data.atom(x[0]).coform.reshape(-1, 1))
        xs, y = x[:-1], x[-1:]
        dy = self.vdim(y)
        inner = md.kron(md.kron(np.eye(self.vdim(xs), dtype=np.int64), self.co(y).mat, p),
                        np.eye(self.vdim(xs), dtype=np.int64), p)
        return self._m((), x + self.dual_obj(x), md.mm(inner, self.co(xs).mat, p))

    def braid(self, x, y):
        dx, dy = self.vdim(x), self.vdim(y)
        perm = np.zeros((dx * dy, dx * dy), dtype=np.int64)
        i, j = np.meshgrid(np.arange(dx), np.arange(dy), indexing="ij")
        perm[(j * dx + i).ravel(), (i * dy + j).ravel()] = 1
        return self._m(tuple(x) + tuple(y), tuple(y) + tuple(x), perm)

    # hom spaces
    def hom(self, a, b) -> HomBasis:
        a, b = tuple(a), tuple(b)
        key = (a, b)
        if key in self._homs:
            return self._homs[key]
        p = self.p
        da, db = self.data.decomposition(a), self.data.decomposition(b)
        blocks, vectors = [], []
        for l, (lb, ib, pb) in enumerate(db):
            for k, (la, ia, pa) in enumerate(da):
                h = self.data.atom_hom(la, lb)
                if not h.dim:
                    continue
                blocks.append((k, l, len(vectors), h))
                for phi in h.basis:
                    vectors.append(TMor(a, b, md.mm(ib, md.mm(phi, pa, p), p)))
        fld = self.field
        n = len(vectors)

        def raw(f):
            if (f.source, f.target) != (a, b):
                raise HomSpaceError(f"{f} is not in Hom({a}, {b})")
            out = np.zeros(n, dtype=np.int64)
            for k, l, off, h in blocks:
                g = md.mm(db[l][2], md.mm(f.mat, da[k][1], p), p)
                out[off:off + h.dim] = h.coords(g)
            return out

        def coords(f):
            return [fld(int(c)) for c in raw(f)]

        hb = HomBasis(self, a, b, vectors, coords)
        hb.blocks = blocks
        hb.raw_coords = raw
        self._homs[key] = hb
        return hb

    def check_in_hom(self, f) -> bool:
        """f equals the recombination of its block coordinates (a G-map test)."""
        hb = self.hom(f.source, f.target)
        c = hb.raw_coords(f)
        out = np.zeros_like(f.mat)
        for x, v in zip(c, hb.vectors):
            if x:
                out = (out + int(x) * v.mat) % self.p
        return bool(np.array_equal(out, f.mat))

    def is_zero(self, f) -> bool:
        return not f.mat.any()

    def equal(self, f, g) -> bool:
        return bool(np.array_equal(f.mat, g.mat))

    # json
    def obj_json(self, x):
        return {"tilting": list(x)}

    def mor_json(self, f):
        hb = self.hom(f.source, f.target)
        return {"source": list(f.source), "target": list(f.target),
                "block_coords": [int(c) for c in hb.raw_coords(f)]}

    def describe(self):
        return {"flavor": "tilting-sl2", "field": {"kind": "Fp", "p": self.p},
                "realization": "hyperalgebra modules, atoms T_i as explicit summands"}


__all__ = ["TMor", "Atom", "AtomHom", "TiltData", "TiltCategory"]
