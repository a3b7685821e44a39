"""String diagrams for the Brauer, walled Brauer, partition and Temperley-Lieb
categories.

A diagram ``a -> b`` is a set partition of the boundary points, numbered
source first (``0 .. len(a)-1``) and then target (``len(a) .. len(a)+len(b)-1``),
left to right.  Matching flavors only allow blocks of size two.  Composing two
diagrams glues the middle boundary, and every component that loses contact
with the outer boundary (a closed loop, or a floating block for partitions)
is removed at the cost of one factor of the loop value.

Words are tuples of letters.  Every flavor except walled Brauer has a single
self-dual letter ``"+"``; walled Brauer uses ``"+"`` for V and ``"-"`` for its
dual.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from math import comb, factorial

from .scalars import Field

KINDS = ("brauer", "walled-brauer", "partition", "temperley-lieb")


class DiagramError(ValueError):
    pass


class ResourceError(RuntimeError):
    """An enumeration would exceed the configured cap."""


@dataclass(frozen=True)
class Caps:
    max_points: int = 16
    max_diagrams: int = 200_000


DEFAULT_CAPS = Caps()


@dataclass(frozen=True)
class Flavor:
    kind: str
    field: Field
    loop: object = dc_field(compare=False)
    loop_key: str = ""

    @classmethod
    def make(cls, kind: str, field: Field, loop) -> Flavor:
        if kind not in KINDS:
            raise DiagramError(f"unknown diagram flavor {kind!r}")
        loop = field.coerce(loop)
        return cls(kind, field, loop, repr(loop))

    @property
    def letters(self):
        return ("+", "-") if self.kind == "walled-brauer" else ("+",)

    def dual_word(self, word):
        if self.kind == "walled-brauer":
            return tuple("-" if x == "+" else "+" for x in reversed(word))
        return tuple(reversed(word))

    def check_word(self, word):
        for x in word:
            if x not in self.letters:
                raise DiagramError(f"letter {x!r} not valid for flavor {self.kind}")


@dataclass(frozen=True, order=True)
class Diagram:
    blocks: tuple
    source: tuple
    target: tuple

    @property
    def npoints(self) -> int:
        return len(self.source) + len(self.target)

    def letter(self, point: int):
        a = len(self.source)
        return self.source[point] if point < a else self.target[point - a]

    def to_json(self):
        return {"source": "".join(self.source), "target": "".join(self.target),
                "blocks": [list(b) for b in self.blocks]}


def make_diagram(source, target, blocks) -> Diagram:
    blocks = tuple(sorted(tuple(sorted(b)) for b in blocks if b))
    pts = sorted(x for b in blocks for x in b)
    if pts != list(range(len(source) + len(target))):
        raise DiagramError("blocks must cover every boundary point exactly once")
    return Diagram(blocks, tuple(source), tuple(target))


def _circle_position(d: Diagram, point: int) -> int:
    a = len(d.source)
    if point < a:
        return point
    return a + len(d.target) - 1 - (point - a)


def is_legal(d: Diagram, kind: str) -> bool:
    if kind != "partition" and any(len(b) != 2 for b in d.blocks):
        return False
    if kind == "temperley-lieb":
        arcs = sorted(tuple(sorted(_circle_position(d, x) for x in b)) for b in d.blocks)
        for (x1, y1), (x2, y2) in ((u, v) for i, u in enumerate(arcs) for v in arcs[i + 1:]):
            if x1 < x2 < y1 < y2:
                return False
    if kind == "walled-brauer":
        a = len(d.source)
        for i, j in d.blocks:
            same_side = (i < a) == (j < a)
            same_letter = d.letter(i) == d.letter(j)
            if same_side == same_letter:
                return False
    return True


class _UF:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def compose_diagrams(g: Diagram, f: Diagram) -> tuple[int, Diagram]:
    """Stack ``f`` below ``g``; returns (number of removed components, diagram)."""
    if f.target != g.source:
        raise DiagramError(f"cannot compose: {f.target} != {g.source}")
    a, b, c = len(f.source), len(f.target), len(g.target)
    uf = _UF(a + b + c)
    for blk in f.blocks:
        for x in blk[1:]:
            uf.union(blk[0], x)
    for blk in g.blocks:
        # g point j < b sits in the middle (a + j); target k goes to a + b + (k - b)
        pts = [a + x for x in blk]
        for x in pts[1:]:
            uf.union(pts[0], x)
    comps: dict[int, list[int]] = {}
    for x in range(a):
        comps.setdefault(uf.find(x), []).append(x)
    for k in range(c):
        comps.setdefault(uf.find(a + b + k), []).append(a + k)
    outer_roots = set(comps)
    floating = len({uf.find(a + j) for j in range(b)} - outer_roots)
    return floating, make_diagram(f.source, g.target, comps.values())


def tensor_diagrams(f: Diagram, g: Diagram) -> Diagram:
    a, b = len(f.source), len(f.target)
    c, d = len(g.source), len(g.target)
    src = a + c

    def fmap(x):
        return x if x < a else src + (x - a)

    def gmap(x):
        return a + x if x < c else src + b + (x - c)

    blocks = [tuple(fmap(x) for x in blk) for blk in f.blocks]
    blocks += [tuple(gmap(x) for x in blk) for blk in g.blocks]
    return make_diagram(f.source + g.source, f.target + g.target, blocks)


# -- enumeration ---------------------------------------------------------------

def double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def expected_count(source, target, kind: str) -> int:
    """Closed-form size of the diagram basis (used for caps and as an oracle)."""
    n = len(source) + len(target)
    if kind == "partition":
        return bell(n)
    if n % 2:
        return 0
    if kind == "brauer":
        return double_factorial(n - 1)
    if kind == "temperley-lieb":
        return catalan(n // 2)
    # walled Brauer: "up" ends are covariant source letters and contravariant target letters
    up = source.count("+") + target.count("-")
    down = source.count("-") + target.count("+")
    return factorial(up) if up == down else 0


def _matchings(points, partner_ok):
    if not points:
        yield []
        return
    x = points[0]
    rest = points[1:]
    for i, y in enumerate(rest):
        if partner_ok(x, y):
            for m in _matchings(rest[:i] + rest[i + 1:], partner_ok):
                yield [(x, y)] + m


def _noncrossing(positions):
    if not positions:
        yield []
        return
    x = positions[0]
    for k in range(1, len(positions), 2):
        inside = positions[1:k]
        outside = positions[k + 1:]
        for m1 in _noncrossing(inside):
            for m2 in _noncrossing(outside):
                yield [(x, positions[k])] + m1 + m2


def _set_partitions(n):
    if n == 0:
        yield []
        return
    for part in _set_partitions(n - 1):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [n - 1]] + part[i + 1:]
        yield part + [[n - 1]]


def enumerate_diagrams(source, target, kind: str, caps: Caps = DEFAULT_CAPS) -> list[Diagram]:
    source, target = tuple(source), tuple(target)
    n = len(source) + len(target)
    if n > caps.max_points:
        raise ResourceError(f"{n} boundary points exceed cap {caps.max_points}")
    count = expected_count(source, target, kind)
    if count > caps.max_diagrams:
        raise ResourceError(f"{count} diagrams exceed cap {caps.max_diagrams}")
    a = len(source)
    out = []
    if kind == "partition":
        for part in _set_partitions(n):
            out.append(make_diagram(source, target, part))
    elif kind == "temperley-lieb":
        if n % 2 == 0:
            pos_to_point = {}
            for x in range(n):
                pos_to_point[x if x < a else a + len(target) - 1 - (x - a)] = x
            for m in _noncrossing(list(range(n))):
                out.append(make_diagram(source, target,
                                        [(pos_to_point[x], pos_to_point[y]) for x, y in m]))
    elif n % 2 == 0:
        letters = source + target
        if kind == "walled-brauer":
            def ok(x, y):
                return ((x < a) == (y < a)) != (letters[x] == letters[y])
        else:
            def ok(x, y):
                return True
        for m in _matchings(list(range(n)), ok):
            out.append(make_diagram(source, target, m))
    out.sort()
    return out


def brute_force_count(source, target, kind: str) -> int:
    """Independent oracle: filter all set partitions by the flavor rules."""
    n = len(source) + len(target)
    total = 0
    for part in _set_partitions(n):
        d = make_diagram(source, target, part)
        if is_legal(d, kind):
            total += 1
    return total


# -- linear combinations -----------------------------------------------------------

class MorLin:
    """A finite linear combination of diagrams with a common source and target."""

    __slots__ = ("flavor", "source", "target", "terms")

    def __init__(self, flavor: Flavor, source, target, terms=None):
        self.flavor = flavor
        self.source = tuple(source)
        self.target = tuple(target)
        zero = flavor.field.zero
        self.terms = {d: c for d, c in (terms or {}).items() if c != zero}

    @classmethod
    def from_diagram(cls, flavor, d: Diagram, coeff=None):
        c = flavor.field.one if coeff is None else flavor.field.coerce(coeff)
        return cls(flavor, d.source, d.target, {d: c})

    @classmethod
    def zero(cls, flavor, source, target):
        return cls(flavor, source, target)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if self.flavor != other.flavor:
            raise DiagramError("flavor mismatch")

    def __add__(self, other):
        self._check(other)
        if (self.source, self.target) != (other.source, other.target):
            raise DiagramError("cannot add morphisms with different source/target")
        terms = dict(self.terms)
        for d, c in other.terms.items():
            terms[d] = terms[d] + c if d in terms else c
        return MorLin(self.flavor, self.source, self.target, terms)

    def __neg__(self):
        return MorLin(self.flavor, self.source, self.target,
                      {d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.flavor.field.coerce(c)
        return MorLin(self.flavor, self.source, self.target,
                      {d: c * x for d, x in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, MorLin):
            return NotImplemented
        return (self.flavor == other.flavor and self.source == other.source
                and self.target == other.target and self.terms == other.terms)

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.terms)))

    def __repr__(self):
        parts = [f"{c}*{list(d.blocks)}" for d, c in sorted(self.terms.items())]
        return f"MorLin({''.join(self.source)}->{''.join(self.target)}: {' + '.join(parts) or '0'})"

    def to_json(self):
        f = self.flavor.field
        return {"source": "".join(self.source), "target": "".join(self.target),
                "terms": [[list(map(list, d.blocks)), f.to_json(c)]
                          for d, c in sorted(self.terms.items())]}


def compose(g, f):
    """Composite ``g o f`` of two diagrams or linear combinations."""
    if isinstance(g, Diagram) or isinstance(f, Diagram):
        raise DiagramError("compose expects MorLin arguments; wrap diagrams with MorLin.from_diagram")
    g._check(f)
    if f.target != g.source:
        raise DiagramError(f"cannot compose: {f.target} != {g.source}")
    flavor = f.flavor
    loop = flavor.loop
    terms: dict = {}
    powers = {}
    for df, cf in f.terms.items():
        for dg, cg in g.terms.items():
            k, d = compose_diagrams(dg, df)
            if k not in powers:
                powers[k] = loop ** k if k else flavor.field.one
            c = cf * cg * powers[k]
            terms[d] = terms[d] + c if d in terms else c
    return MorLin(flavor, f.source, g.target, terms)


def tensor(f, g):
    f._check(g)
    terms: dict = {}
    for df, cf in f.terms.items():
        for dg, cg in g.terms.items():
            d = tensor_diagrams(df, dg)
            c = cf * cg
            terms[d] = terms[d] + c if d in terms else c
    return MorLin(f.flavor, f.source + g.source, f.target + g.target, terms)


def hom_basis(source, target, flavor: Flavor, caps: Caps = DEFAULT_CAPS) -> list[Diagram]:
    flavor.check_word(source)
    flavor.check_word(target)
    return enumerate_diagrams(source, target, flavor.kind, caps)


# -- structure morphisms -----------------------------------------------------------

def identity(flavor: Flavor, word) -> MorLin:
    word = tuple(word)
    n = len(word)
    return MorLin.from_diagram(flavor, make_diagram(word, word, [(i, n + i) for i in range(n)]))


def evaluation(flavor: Flavor, word) -> MorLin:
    """ev_X : X^v (x) X -> 1 as nested caps."""
    word = tuple(word)
    n = len(word)
    src = flavor.dual_word(word) + word
    return MorLin.from_diagram(flavor, make_diagram(src, (), [(i, 2 * n - 1 - i) for i in range(n)]))


def coevaluation(flavor: Flavor, word) -> MorLin:
    """co_X : 1 -> X (x) X^v as nested cups."""
    word = tuple(word)
    n = len(word)
    tgt = word + flavor.dual_word(word)
    return MorLin.from_diagram(flavor, make_diagram((), tgt, [(i, 2 * n - 1 - i) for i in range(n)]))


def permutation_diagram(flavor: Flavor, word, perm) -> MorLin:
    """Diagram sending source letter i to target position perm[i] (not for TL)."""
    word = tuple(word)
    n = len(word)
    target = [None] * n
    for i, j in enumerate(perm):
        target[j] = word[i]
    return MorLin.from_diagram(flavor, make_diagram(word, tuple(target),
                                                    [(i, n + perm[i]) for i in range(n)]))


def _tl_adjacent_swap(flavor: Flavor, n: int, i: int) -> MorLin:
    """id + e_i on V^n: the symmetric braiding of letters i, i+1 at loop value -2."""
    word = ("+",) * n
    ident = identity(flavor, word)
    blocks = [(j, n + j) for j in range(n) if j not in (i, i + 1)]
    blocks += [(i, i + 1), (n + i, n + i + 1)]
    e = MorLin.from_diagram(flavor, make_diagram(word, word, blocks))
    return ident + e


def braiding(flavor: Flavor, x, y) -> MorLin:
    """sigma_{X,Y} : X (x) Y -> Y (x) X."""
    x, y = tuple(x), tuple(y)
    a, b = len(x), len(y)
    perm = [b + i for i in range(a)] + [j for j in range(b)]
    if flavor.kind != "temperley-lieb":
        return permutation_diagram(flavor, x + y, perm)
    n = a + b
    out = identity(flavor, x + y)
    # move each letter of y to the front, left to right, by adjacent swaps
    for j in range(b):
        for pos in range(a + j, j, -1):
            out = compose(_tl_adjacent_swap(flavor, n, pos - 1), out)
    return out


def structure_diagrams(flavor: Flavor, letter="+") -> dict:
    flavor.check_word((letter,))
    w = (letter,)
    return {
        "identity": identity(flavor, w),
        "evaluation": evaluation(flavor, w),
        "coevaluation": coevaluation(flavor, w),
        "braiding": braiding(flavor, w, w),
    }


def words(flavor: Flavor, max_degree: int, min_degree: int = 0):
    """All words of length in [min_degree, max_degree], degree-lexicographic."""
    out = []
    for n in range(min_degree, max_degree + 1):
        out.extend(tuple(w) for w in product(flavor.letters, repeat=n))
    return out
