"""Pseudo-tensor categories: the generic protocol and the Karoubi envelope of a
diagram flavor.

Everything downstream (faithfulness checks, splitting, ideals) talks to a
category only through the methods of :class:`Category`.  Two families of
concrete categories implement it: :class:`KaroubiCategory` here (and its
restricted-unit view), and the tilting category in :mod:`tensorcert.sl2`.
All categories are strict monoidal: tensoring with the unit object returns
the same object.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import diagrams as dg
from .diagrams import Caps, DEFAULT_CAPS, Flavor, MorLin
from .homspace import HomBasis, HomSpaceError
from .scalars import ExtensionField, Field, field_make, field_to_json, subfield_coordinates


class CategoryError(ValueError):
    pass


class Category:
    """Interface shared by all concrete categories.

    Subclasses implement the primitive operations; the derived ones (dual
    morphisms, dimensions, traces, tensor powers) are written once here.
    """

    field: Field

    # -- primitives ---------------------------------------------------------------
    def unit(self):
        raise NotImplementedError

    def tensor_obj(self, x, y):
        raise NotImplementedError

    def dual_obj(self, x):
        raise NotImplementedError

    def identity(self, x):
        raise NotImplementedError

    def zero(self, x, y):
        raise NotImplementedError

    def source(self, f):
        raise NotImplementedError

    def target(self, f):
        raise NotImplementedError

    def compose(self, g, f):
        raise NotImplementedError

    def tensor(self, f, g):
        raise NotImplementedError

    def add(self, f, g):
        raise NotImplementedError

    def scale(self, c, f):
        raise NotImplementedError

    def ev(self, x):
        """ev_X : X^v (x) X -> 1."""
        raise NotImplementedError

    def co(self, x):
        """co_X : 1 -> X (x) X^v."""
        raise NotImplementedError

    def braid(self, x, y):
        raise NotImplementedError

    def hom(self, a, b) -> HomBasis:
        raise NotImplementedError

    def degree(self, x) -> int:
        raise NotImplementedError

    def objects_up_to(self, max_degree: int) -> list:
        """Deterministic family of test objects of degree <= max_degree."""
        raise NotImplementedError

    def obj_json(self, x):
        raise NotImplementedError

    def mor_json(self, f):
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError

    # -- derived ---------------------------------------------------------------
    def sub(self, f, g):
        return self.add(f, self.scale(-1, g))

    def neg(self, f):
        return self.scale(-1, f)

    def tensor_objs(self, *xs):
        out = self.unit()
        for x in xs:
            out = self.tensor_obj(out, x)
        return out

    def tensor_mors(self, *fs):
        out = fs[0]
        for f in fs[1:]:
            out = self.tensor(out, f)
        return out

    def composes(self, *fs):
        """composes(h, g, f) = h o g o f."""
        out = fs[-1]
        for g in reversed(fs[:-1]):
            out = self.compose(g, out)
        return out

    def coords(self, f):
        return self.hom(self.source(f), self.target(f)).coords(f)

    def is_zero(self, f) -> bool:
        return all(c == 0 for c in self.coords(f))

    def equal(self, f, g) -> bool:
        return self.is_zero(self.sub(f, g))

    def scalar(self, f):
        """The scalar c with f = c * id_1 for an endomorphism of the unit."""
        hb = self.hom(self.unit(), self.unit())
        c = hb.coords(f)
        if hb.dim == 0:
            return self.field.zero
        if hb.dim != 1:
            raise CategoryError("End(1) is not one-dimensional")
        ref = hb.coords(self.identity(self.unit()))[0]
        return c[0] / ref

    def dual_mor(self, f):
        """f^v : Y^v -> X^v for f : X -> Y."""
        x, y = self.source(f), self.target(f)
        xd, yd = self.dual_obj(x), self.dual_obj(y)
        step1 = self.tensor(self.identity(yd), self.co(x))
        step2 = self.tensor_mors(self.identity(yd), f, self.identity(xd))
        step3 = self.tensor(self.ev(y), self.identity(xd))
        return self.composes(step3, step2, step1)

    def trace(self, u):
        """Categorical trace ev o sigma o (u (x) X^v) o co of u in End(X)."""
        x = self.source(u)
        xd = self.dual_obj(x)
        t = self.composes(self.ev(x), self.braid(x, xd),
                          self.tensor(u, self.identity(xd)), self.co(x))
        return self.scalar(t)

    def dim(self, x):
        return self.trace(self.identity(x))


# ---------------------------------------------------------------------------------
# Karoubi envelope of a diagram flavor

@dataclass(frozen=True)
class KObject:
    """Image of an idempotent on a formal direct sum of words.

    ``idem`` is the idempotent matrix (entries[i][j]: word j -> word i), or
    None for the identity, i.e. a plain direct sum of words.
    """

    words: tuple
    idem: tuple | None = None

    def __len__(self):
        return len(self.words)

    @property
    def summands(self):
        """(word, diagonal idempotent entry) pairs, in order."""
        return tuple((w, None if self.idem is None else self.idem[i][i])
                     for i, w in enumerate(self.words))


@dataclass(frozen=True)
class KMor:
    source: KObject
    target: KObject
    entries: tuple  # entries[i][j] : source word j -> target word i


def _is_identity(e: MorLin) -> bool:
    if len(e.terms) != 1:
        return False
    (d, c), = e.terms.items()
    n = len(e.source)
    return c == 1 and all(len(b) == 2 and b[1] == b[0] + n for b in d.blocks)


class KaroubiCategory(Category):
    """Karoubi envelope of the additive closure of a diagram category.

    ``flavor`` fixes the diagram kind, the coefficient field and the loop
    value.  Structure maps are built on plain direct sums of words and then
    compressed by the idempotents.  Hom spaces between plain sums are free on
    diagrams, so row reduction is only needed once an idempotent appears.
    """

    def __init__(self, flavor: Flavor, caps: Caps = DEFAULT_CAPS):
        self.flavor = flavor
        self.field = flavor.field
        self.caps = caps
        self._hom_cache: dict = {}
        self._diag_cache: dict = {}

    @classmethod
    def make(cls, kind: str, field: Field | dict, loop, caps: Caps = DEFAULT_CAPS):
        if isinstance(field, dict):
            field = field_make(field)
        return cls(Flavor.make(kind, field, loop), caps)

    # -- objects ------------------------------------------------------------------
    def word(self, word) -> KObject:
        word = tuple(word)
        self.flavor.check_word(word)
        return KObject((word,))

    def obj(self, *summands) -> KObject:
        """Direct sum of words and (word, idempotent) pairs; idempotents are checked."""
        words, diag = [], []
        for s in summands:
            if isinstance(s, tuple) and len(s) == 2 and isinstance(s[1], MorLin):
                w, e = tuple(s[0]), s[1]
                self.flavor.check_word(w)
                if e.source != w or e.target != w:
                    raise CategoryError("idempotent has the wrong source/target")
                if dg.compose(e, e) != e:
                    raise CategoryError("summand map is not idempotent")
            else:
                w = tuple(s)
                self.flavor.check_word(w)
                e = dg.identity(self.flavor, w)
            words.append(w)
            diag.append(e)
        if all(_is_identity(e) for e in diag):
            return KObject(tuple(words))
        n = len(words)
        idem = tuple(tuple(diag[i] if i == j else MorLin.zero(self.flavor, words[j], words[i])
                           for j in range(n)) for i in range(n))
        return KObject(tuple(words), idem)

    def unit(self):
        return KObject(((),))

    def zero_object(self):
        return KObject(())

    def plain(self, x: KObject) -> KObject:
        return KObject(x.words)

    def direct_sum(self, *xs):
        words = tuple(w for x in xs for w in x.words)
        if all(x.idem is None for x in xs):
            return KObject(words)
        blocks = [self.identity(x).entries for x in xs]
        rows = []
        for a, (x, blk) in enumerate(zip(xs, blocks)):
            for i in range(len(x)):
                row = []
                for b, y in enumerate(xs):
                    for j in range(len(y)):
                        if a == b:
                            row.append(blk[i][j])
                        else:
                            row.append(MorLin.zero(self.flavor, y.words[j], x.words[i]))
                rows.append(tuple(row))
        return KObject(words, tuple(rows))

    def tensor_obj(self, x, y):
        words = tuple(w + v for w in x.words for v in y.words)
        if x.idem is None and y.idem is None:
            return KObject(words)
        ex = self.identity(x).entries
        ey = self.identity(y).entries
        return KObject(words, self._tensor_entries(ex, ey, len(x), len(x), len(y), len(y)))

    def _dual_word_mor(self, u: MorLin) -> MorLin:
        fl = self.flavor
        w, v = u.source, u.target
        wd, vd = fl.dual_word(w), fl.dual_word(v)
        step1 = dg.tensor(dg.identity(fl, vd), dg.coevaluation(fl, w))
        step2 = dg.tensor(dg.tensor(dg.identity(fl, vd), u), dg.identity(fl, wd))
        step3 = dg.tensor(dg.evaluation(fl, v), dg.identity(fl, wd))
        return dg.compose(step3, dg.compose(step2, step1))

    def _dual_entries(self, entries, nsrc, ntgt):
        """Transpose-and-dualize a matrix of word morphisms (summand order reverses)."""
        return tuple(tuple(self._dual_word_mor(entries[ntgt - 1 - b][nsrc - 1 - a])
                           for b in range(ntgt)) for a in range(nsrc))

    def dual_obj(self, x):
        words = tuple(self.flavor.dual_word(w) for w in reversed(x.words))
        if x.idem is None:
            return KObject(words)
        return KObject(words, self._dual_entries(x.idem, len(x), len(x)))

    def degree(self, x) -> int:
        return max((len(w) for w in x.words), default=0)

    def objects_up_to(self, max_degree):
        return [self.word(w) for w in dg.words(self.flavor, max_degree)]

    # -- morphisms -------------------------------------------------------------------
    def source(self, f):
        return f.source

    def target(self, f):
        return f.target

    def mor(self, source: KObject, target: KObject, entries) -> KMor:
        entries = tuple(tuple(r) for r in entries)
        if len(entries) != len(target) or any(len(r) != len(source) for r in entries):
            raise CategoryError("entry matrix shape does not match the objects")
        for i, wi in enumerate(target.words):
            for j, wj in enumerate(source.words):
                m = entries[i][j]
                if m.source != wj or m.target != wi:
                    raise CategoryError("entry has the wrong source/target word")
        return KMor(source, target, entries)

    def from_morlin(self, m: MorLin) -> KMor:
        return KMor(self.word(m.source), self.word(m.target), ((m,),))

    def _plain_identity(self, words):
        n = len(words)
        return tuple(tuple(dg.identity(self.flavor, words[i]) if i == j
                           else MorLin.zero(self.flavor, words[j], words[i])
                           for j in range(n)) for i in range(n))

    def identity(self, x):
        return KMor(x, x, x.idem if x.idem is not None else self._plain_identity(x.words))

    def zero(self, x, y):
        return KMor(x, y, tuple(tuple(MorLin.zero(self.flavor, wj, wi) for wj in x.words)
                                for wi in y.words))

    def _compose_entries(self, g_entries, f_entries, src_words, mid_len, tgt_words):
        rows = []
        for i, wi in enumerate(tgt_words):
            row = []
            for j, wj in enumerate(src_words):
                acc = MorLin.zero(self.flavor, wj, wi)
                for k in range(mid_len):
                    a, b = g_entries[i][k], f_entries[k][j]
                    if a.terms and b.terms:
                        acc = acc + dg.compose(a, b)
                row.append(acc)
            rows.append(tuple(row))
        return tuple(rows)

    def compose(self, g, f):
        if f.target.words != g.source.words:
            raise CategoryError("cannot compose: object mismatch")
        return KMor(f.source, g.target, self._compose_entries(
            g.entries, f.entries, f.source.words, len(f.target), g.target.words))

    @staticmethod
    def _tensor_entries(fe, ge, fs, ft, gs, gt):
        return tuple(tuple(dg.tensor(fe[i][j], ge[k][l]) for j in range(fs) for l in range(gs))
                     for i in range(ft) for k in range(gt))

    def tensor(self, f, g):
        entries = self._tensor_entries(f.entries, g.entries, len(f.source), len(f.target),
                                       len(g.source), len(g.target))
        return KMor(self.tensor_obj(f.source, g.source), self.tensor_obj(f.target, g.target),
                    entries)

    def add(self, f, g):
        if f.source.words != g.source.words or f.target.words != g.target.words:
            raise CategoryError("cannot add: object mismatch")
        return KMor(f.source, f.target, tuple(tuple(a + b for a, b in zip(r, s))
                                              for r, s in zip(f.entries, g.entries)))

    def scale(self, c, f):
        c = self.field.coerce(c)
        return KMor(f.source, f.target, tuple(tuple(a.scale(c) for a in r) for r in f.entries))

    def _compress(self, m: KMor, source: KObject, target: KObject) -> KMor:
        out = m
        if source.idem is not None:
            out = self.compose(out, KMor(source, self.plain(source), source.idem))
        if target.idem is not None:
            out = self.compose(KMor(self.plain(target), target, target.idem), out)
        return KMor(source, target, out.entries)

    def ev(self, x):
        fl = self.flavor
        xd = self.dual_obj(x)
        n = len(x)
        row = []
        for a, wd in enumerate(xd.words):
            for j, w in enumerate(x.words):
                row.append(dg.evaluation(fl, w) if a == n - 1 - j else MorLin.zero(fl, wd + w, ()))
        plain = KMor(self.plain(self.tensor_obj(xd, x)), self.unit(), (tuple(row),))
        if x.idem is None:
            return plain
        return self._compress(plain, self.tensor_obj(xd, x), self.unit())

    def co(self, x):
        fl = self.flavor
        xd = self.dual_obj(x)
        n = len(x)
        col = []
        for j, w in enumerate(x.words):
            for a, wd in enumerate(xd.words):
                col.append((dg.coevaluation(fl, w) if a == n - 1 - j
                            else MorLin.zero(fl, (), w + wd),))
        plain = KMor(self.unit(), self.plain(self.tensor_obj(x, xd)), tuple(col))
        if x.idem is None:
            return plain
        return self._compress(plain, self.unit(), self.tensor_obj(x, xd))

    def braid(self, x, y):
        fl = self.flavor
        nx, ny = len(x), len(y)
        rows = []
        for k, v in enumerate(y.words):
            for i, w in enumerate(x.words):
                row = []
                for i2, w2 in enumerate(x.words):
                    for k2, v2 in enumerate(y.words):
                        if i2 == i and k2 == k:
                            row.append(dg.braiding(fl, w, v))
                        else:
                            row.append(MorLin.zero(fl, w2 + v2, v + w))
                rows.append(tuple(row))
        plain = KMor(self.plain(self.tensor_obj(x, y)), self.plain(self.tensor_obj(y, x)), tuple(rows))
        if x.idem is None and y.idem is None:
            return plain
        return self._compress(plain, self.tensor_obj(x, y), self.tensor_obj(y, x))

    # -- hom spaces ----------------------------------------------------------------------
    def _diagrams(self, w, v):
        key = (w, v)
        if key not in self._diag_cache:
            ds = dg.hom_basis(w, v, self.flavor, self.caps)
            self._diag_cache[key] = (ds, {d: i for i, d in enumerate(ds)})
        return self._diag_cache[key]

    def _layout(self, a, b):
        offsets = {}
        n = 0
        for i, wi in enumerate(b.words):
            for j, wj in enumerate(a.words):
                ds, index = self._diagrams(wj, wi)
                offsets[(i, j)] = (n, ds, index)
                n += len(ds)
        return offsets, n

    def flattener(self, a, b):
        """(flatten, ambient_dim, layout) in diagram-coefficient coordinates."""
        offsets, n = self._layout(a, b)
        zero = self.field.zero
        awords, bwords = a.words, b.words

        def flatten(f):
            if f.source.words != awords or f.target.words != bwords:
                raise HomSpaceError("morphism has the wrong source or target")
            v = [zero] * n
            for (i, j), (off, _, index) in offsets.items():
                for d, c in f.entries[i][j].terms.items():
                    v[off + index[d]] = c
            return v

        return flatten, n, offsets

    def hom(self, a, b):
        key = (a, b)
        hb = self._hom_cache.get(key)
        if hb is not None:
            return hb
        flatten, n, offsets = self.flattener(a, b)
        plain = a.idem is None and b.idem is None
        spanning = []
        fl = self.flavor
        pa, pb = self.plain(a), self.plain(b)
        for (i, j), (_, ds, _) in sorted(offsets.items(), key=lambda kv: kv[1][0]):
            for d in ds:
                entries = [[MorLin.zero(fl, wj, wi) for wj in a.words] for wi in b.words]
                entries[i][j] = MorLin.from_diagram(fl, d)
                m = KMor(pa, pb, tuple(tuple(r) for r in entries))
                spanning.append(m if plain else self._compress(m, a, b))
        if plain:
            spanning = [KMor(a, b, m.entries) for m in spanning]
        hb = HomBasis.from_spanning(self, a, b, spanning, flatten, n, independent=plain)
        self._hom_cache[key] = hb
        return hb

    # -- Karoubi structure ----------------------------------------------------------------
    def is_idempotent(self, e: KMor) -> bool:
        return self.equal(self.compose(e, e), e)

    def karoubi_split(self, e: KMor):
        """Image of an idempotent e on X: returns (Y, incl, proj).

        proj o incl = id_Y and incl o proj = e.  The zero idempotent gives
        the zero object and the identity gives X back.
        """
        x = e.source
        if e.target.words != x.words:
            raise CategoryError("idempotent must be an endomorphism")
        if not self.is_idempotent(e):
            raise CategoryError("morphism is not idempotent")
        if self.is_zero(e):
            y = self.zero_object()
            return y, self.zero(y, x), self.zero(x, y)
        if self.equal(e, self.identity(x)):
            return x, self.identity(x), self.identity(x)
        y = KObject(x.words, e.entries)
        return y, KMor(y, x, e.entries), KMor(x, y, e.entries)

    # -- serialization ---------------------------------------------------------------------
    def obj_json(self, x):
        out = {"words": ["".join(w) for w in x.words]}
        if x.idem is not None:
            out["idempotent"] = [[m.to_json()["terms"] for m in row] for row in x.idem]
        return out

    def mor_json(self, f):
        return {"source": self.obj_json(f.source), "target": self.obj_json(f.target),
                "entries": [[m.to_json()["terms"] for m in row] for row in f.entries]}

    def describe(self):
        fl = self.flavor
        return {"flavor": fl.kind, "field": field_to_json(self.field),
                "loop": _scalar_json(self.field, fl.loop)}


def _scalar_json(field, c):
    return field.to_json(c)


# ---------------------------------------------------------------------------------
# restricted-unit view

class RestrictedUnitCategory(Category):
    """k-linear view of a K-linear diagram category with End(1) cut down to k.

    The hom space at (1, 1) is k * id; every other hom space is the K-span of
    diagrams regarded as a k-space with basis {a^m d}.  The coefficient field
    of the view is the base field k of the extension pair.  Morphisms that are
    not multiples of id_1 form a tensor ideal because every composite through
    a nonempty word back to the unit closes loops of value zero (the base
    category is taken at loop value 0).
    """

    def __init__(self, base: KaroubiCategory):
        if not isinstance(base.field, ExtensionField):
            raise CategoryError("restricted-unit view needs an extension-pair field")
        self.base = base
        self.big = base.field
        self.field = base.field.base
        self.flavor = base.flavor
        self._hom_cache: dict = {}

    def word(self, w):
        return self.base.word(w)

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
        return f.source

    def target(self, f):
        return f.target

    def compose(self, g, f):
        return self.base.compose(g, f)

    def tensor(self, f, g):
        return self.base.tensor(f, g)

    def add(self, f, g):
        return self.base.add(f, g)

    def scale(self, c, f):
        if not isinstance(c, type(self.big.one)):
            c = self.field.coerce(c)
        return self.base.scale(self.big.coerce(c), f)

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

    def hom(self, a, b):
        key = (a, b)
        if key in self._hom_cache:
            return self._hom_cache[key]
        if a.idem is not None or b.idem is not None:
            raise CategoryError("restricted-unit view supports plain objects only")
        flatten, _, _ = self.base.flattener(a, b)
        kfield = self.field
        unit = self.base.unit()

        if a == unit and b == unit:
            def coords(f):
                (c,) = flatten(f)
                xs = subfield_coordinates(c, self.big)
                if any(x != 0 for x in xs[1:]):
                    raise HomSpaceError("End(1) of the restricted category is k; got a K-multiple")
                return [kfield.coerce(xs[0])]
            hb = HomBasis(self, a, b, [self.identity(unit)], coords)
        else:
            base_hb = self.base.hom(a, b)
            gen = self.big.generator()
            powers = [self.big.one]
            for _ in range(self.big.degree - 1):
                powers.append(powers[-1] * gen)
            vectors = [self.base.scale(pw, v) for v in base_hb.vectors for pw in powers]

            def coords(f):
                out = []
                for c in flatten(f):
                    out.extend(kfield.coerce(x) for x in subfield_coordinates(c, self.big))
                return out
            hb = HomBasis(self, a, b, vectors, coords)
        self._hom_cache[key] = hb
        return hb

    def obj_json(self, x):
        return self.base.obj_json(x)

    def mor_json(self, f):
        return self.base.mor_json(f)

    def describe(self):
        d = self.base.describe()
        d["restricted_unit"] = True
        d["hom_field"] = field_to_json(self.field)
        return d


def restrict_end_unit(category: KaroubiCategory) -> RestrictedUnitCategory:
    """The counterexample construction: End(1) = k inside a K-linear category."""
    return RestrictedUnitCategory(category)
