"""Decomposition of V^{(x) n} into indecomposable tilting modules."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..diagrams import DEFAULT_CAPS, Caps, ResourceError, catalan
from ..homspace import InconsistencyError
from . import modules as md
from .characters import Character, tilting_decomposition_of_character, weyl_character
from .tilt import TiltData
from .tl import index_digits


@dataclass
class TiltingDecomposition:
    n: int
    p: int
    labels: list                    # label of each primitive idempotent, in order
    idempotents: list = field(repr=False, default_factory=list)   # matrices on V^n
    character_route: dict = field(default_factory=dict)

    @property
    def multiplicities(self) -> dict:
        out: dict = {}
        for a in self.labels:
            out[a] = out.get(a, 0) + 1
        return dict(sorted(out.items(), reverse=True))

    @property
    def agree(self) -> bool:
        return self.multiplicities == {k: v for k, v in sorted(self.character_route.items(), reverse=True)}

    def to_json(self):
        return {"n": self.n, "p": self.p,
                "multiplicities": {str(k): v for k, v in self.multiplicities.items()},
                "character_route": {str(k): v for k, v in sorted(self.character_route.items(), reverse=True)},
                "agree": self.agree}


def power_character(n: int) -> Character:
    ch = Character({0: 1})
    for _ in range(n):
        ch = ch * weyl_character(1)
    return ch


def tilting_decompose(n: int, p: int, data: TiltData | None = None,
                      caps: Caps = DEFAULT_CAPS) -> TiltingDecomposition:
    """Primitive orthogonal idempotents of End_G(V^n) grouped by highest weight,
    cross-checked against greedy subtraction of tilting characters."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if 2 * n > caps.max_points or catalan(n) > caps.max_diagrams:
        raise ResourceError(f"End(V^{n}) exceeds the cap")
    data = data or TiltData(p)
    if data.p != p:
        raise ValueError("data was built for a different prime")
    obj = (1,) * n
    parts = data.decomposition(obj)
    dim = 2 ** n
    labels = [lab for lab, _, _ in parts]
    idems = [md.mm(i, q, p) for _, i, q in parts]
    total = np.zeros((dim, dim), dtype=np.int64)
    for e in idems:
        total = (total + e) % p
    if not np.array_equal(total, np.eye(dim, dtype=np.int64)):
        raise InconsistencyError("idempotents do not sum to the identity")
    for k, (_, ik, pk) in enumerate(parts):
        for l, (_, il, _) in enumerate(parts):
            want = np.eye(ik.shape[1], dtype=np.int64) if k == l else 0
            if not np.array_equal(md.mm(pk, il, p), np.broadcast_to(want, (pk.shape[0], il.shape[1]))):
                raise InconsistencyError("idempotents are not orthogonal")
    chars = tilting_decomposition_of_character(power_character(n), p)
    dec = TiltingDecomposition(n, p, labels, idems, chars)
    if not dec.agree:
        raise InconsistencyError(f"idempotent route {dec.multiplicities} != character route {chars}")
    return dec


def idempotent_character(data: TiltData, n: int, k: int) -> Character:
    """Character of the image of the k-th idempotent, via traces on weight spaces."""
    p = data.p
    _, iota, pi = data.decomposition((1,) * n)[k]
    # the image has a weight basis, so its character is read off the columns of iota
    w = n - 2 * index_digits(2 ** n, n).sum(axis=1) if n else np.zeros(1, np.int64)
    cols = np.argmax(iota != 0, axis=0)
    ch = Character.from_weights(w[cols].tolist())
    # trace check: the rank of e restricted to each weight space equals the multiplicity
    e = md.mm(iota, pi, p)
    for wt, m in ch.mult.items():
        idx = np.nonzero(w == wt)[0]
        if md.rank_mod(e[np.ix_(idx, idx)], p) != m:
            raise InconsistencyError("weight multiplicities of the idempotent disagree")
    return ch


__all__ = ["TiltingDecomposition", "tilting_decompose", "power_character", "idempotent_character"]
