"""Characters of SL_2 in characteristic p.

A character is a finitely supported map weight -> multiplicity on the weight
lattice Z (weight i stands for i times the fundamental weight).  Weyl
characters chi(n) have weights n, n-2, ..., -n; every Weyl-symmetric
character is a unique integer combination of them, found by peeling off the
highest weight.
"""

from __future__ import annotations

from collections import Counter

from ..certificate import Certificate


class Character:
    __slots__ = ("mult",)

    def __init__(self, mult=None):
        self.mult = {w: m for w, m in dict(mult or {}).items() if m != 0}

    @classmethod
    def from_weights(cls, weights):
        return cls(Counter(int(w) for w in weights))

    def __eq__(self, other):
        return isinstance(other, Character) and self.mult == other.mult

    def __hash__(self):
        return hash(frozenset(self.mult.items()))

    def __add__(self, other):
        out = Counter(self.mult)
        out.update(other.mult)
        return Character(out)

    def __sub__(self, other):
        out = dict(self.mult)
        for w, m in other.mult.items():
            out[w] = out.get(w, 0) - m
        return Character(out)

    def scale(self, k: int):
        return Character({w: k * m for w, m in self.mult.items()})

    def __mul__(self, other):
        out: dict = {}
        for w1, m1 in self.mult.items():
            for w2, m2 in other.mult.items():
                out[w1 + w2] = out.get(w1 + w2, 0) + m1 * m2
        return Character(out)

    def twist(self, q: int):
        """Frobenius twist by q = p^a: weights are multiplied by q."""
        return Character({q * w: m for w, m in self.mult.items()})

    @property
    def dim(self) -> int:
        return sum(self.mult.values())

    def dominant(self) -> dict:
        return {w: m for w, m in sorted(self.mult.items()) if w >= 0}

    def highest(self):
        return max(self.mult) if self.mult else None

    def is_symmetric(self) -> bool:
        return all(self.mult.get(-w, 0) == m for w, m in self.mult.items())

    def to_weyl(self) -> dict:
        """Coefficients in the Weyl basis: {n: a_n} with self = sum a_n chi(n)."""
        if not self.is_symmetric():
            raise ValueError("character is not Weyl-symmetric")
        rest = Character(self.mult)
        out = {}
        while rest.mult:
            top = rest.highest()
            if top < 0:
                raise ValueError("character has no Weyl expansion")
            a = rest.mult[top]
            out[top] = a
            rest = rest - weyl_character(top).scale(a)
        return dict(sorted(out.items()))

    @classmethod
    def from_weyl(cls, coeffs: dict):
        out = Character()
        for n, a in coeffs.items():
            out = out + weyl_character(n).scale(a)
        return out

    def to_json(self):
        return {str(w): m for w, m in sorted(self.mult.items())}

    def __repr__(self):
        return f"Character({self.to_weyl() if self.is_symmetric() else self.mult})"


def weyl_character(n: int) -> Character:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Character({w: 1 for w in range(-n, n + 1, 2)})


def digits(n: int, p: int) -> list:
    """Base-p digits, least significant first."""
    if n == 0:
        return [0]
    out = []
    while n:
        out.append(n % p)
        n //= p
    return out


def simple_character(n: int, p: int) -> Character:
    """ch L_n as the product of Frobenius twists of the digit characters."""
    out = Character({0: 1})
    for a, d in enumerate(digits(n, p)):
        out = out * weyl_character(d).twist(p ** a)
    return out


def tilting_weyl_factors(i: int, p: int) -> list:
    """Weyl factors of T_i: Delta_{w-1} for w = a_m p^m +- a_{m-1} p^{m-1} +- ... +- a_0,
    where i + 1 has base-p digits a_m ... a_0 (a_m != 0)."""
    ds = digits(i + 1, p)
    top = len(ds) - 1
    values = {ds[top] * p ** top}
    for a in range(top - 1, -1, -1):
        step = ds[a] * p ** a
        values = {v + s for v in values for s in ((step, -step) if step else (0,))}
    return sorted((v - 1 for v in values), reverse=True)


def tilting_character(i: int, p: int) -> Character:
    return Character.from_weyl({n: 1 for n in tilting_weyl_factors(i, p)})


def tilting_decomposition_of_character(ch: Character, p: int) -> dict:
    """Greedy subtraction of tilting characters from the top: {label: multiplicity}.

    Multiplicities may come out negative, which certifies that ``ch`` is not
    the character of a tilting module.
    """
    rest = Character(ch.mult)
    out = {}
    while rest.mult:
        top = rest.highest()
        if top < 0:
            raise ValueError("character is not Weyl-symmetric")
        a = rest.mult[top]
        out[top] = out.get(top, 0) + a
        rest = rest - tilting_character(top, p).scale(a)
    return dict(sorted(out.items()))


def steinberg_label(j: int, p: int) -> int:
    return p ** j - 1


def block_of(a: int, p: int):
    """(e, residue class) describing the block of L_a.

    With p^e exactly dividing a + 1, the weights mu in the block of a are those
    with mu + 1 = +-(a + 1) mod 2 p^(e+1).
    """
    e = 0
    n = a + 1
    while n % p == 0:
        n //= p
        e += 1
    return e, 2 * p ** (e + 1)


def linkage_orbit(a: int, p: int, bound: int) -> set:
    """Dominant weights in [0, bound] lying in the same block as a."""
    if a < 0:
        raise ValueError("a must be nonnegative")
    _, modulus = block_of(a, p)
    r = (a + 1) % modulus
    return {mu for mu in range(bound + 1) if (mu + 1) % modulus in (r, (-r) % modulus)}


def dot_orbit(a: int, p: int, bound: int) -> set:
    """Orbit of a under the p-dilated affine Weyl group, x -> 2mp - x - 2 (plain linkage)."""
    if a < 0:
        raise ValueError("a must be nonnegative")
    r = (a + 1) % (2 * p)
    return {mu for mu in range(bound + 1) if (mu + 1) % (2 * p) in (r, (-r) % (2 * p))}


def check_linkage_gap(p: int, j: int, bound: int | None = None) -> dict:
    """Orbit of p^j - 1 is {p^j - 1} plus weights >= 2p^(j+1) - p^j - 1 inside the bound."""
    a = p ** j - 1
    if bound is None:
        bound = 4 * p ** (j + 1)
    orbit = linkage_orbit(a, p, bound)
    threshold = 2 * p ** (j + 1) - p ** j - 1
    bad = sorted(mu for mu in orbit if mu != a and mu < threshold)
    return {"p": p, "j": j, "a": a, "bound": bound, "threshold": threshold,
            "orbit": sorted(orbit), "violations": bad, "ok": not bad and a in orbit}


def check_tilting_char_necessary(i: int, r: int, p: int) -> Certificate:
    """ch L_i * ch St_{r-1} is a nonnegative combination of tilting characters."""
    if i > p ** r - 1:
        raise ValueError("needs i <= p^r - 1")
    st = steinberg_label(r - 1, p)
    ch = simple_character(i, p) * simple_character(st, p)
    dec = tilting_decomposition_of_character(ch, p)
    ok = all(m >= 0 for m in dec.values())
    return Certificate(
        {"check": "tilting-character-necessary", "i": i, "r": r, "p": p,
         "note": "character-level necessary condition only"},
        "certified" if ok else "refuted",
        {"flavor": "tilting-sl2", "field": {"kind": "Fp", "p": p}},
        {"exact": "single character identity"},
        [{"character": ch.to_json(), "tilting_multiplicities": {str(k): v for k, v in dec.items()},
          "ok": ok}])


__all__ = ["Character", "weyl_character", "simple_character", "tilting_character",
           "tilting_weyl_factors", "tilting_decomposition_of_character", "linkage_orbit",
           "dot_orbit", "block_of", "check_linkage_gap", "check_tilting_char_necessary",
           "digits", "steinberg_label"]
