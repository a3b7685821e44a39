import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tensorcert import diagrams as dg
from tensorcert.diagrams import Caps, DiagramError, MorLin, ResourceError
from tensorcert.scalars import field_make

Q = field_make({"kind": "Q"})
F3 = field_make({"kind": "Fp", "p": 3})
F5 = field_make({"kind": "Fp", "p": 5})


def flavor(kind, loop=3, field=Q):
    return dg.Flavor.make(kind, field, loop)


def test_cap_after_cup_is_loop():
    fl = flavor("brauer", "7/2")
    cap = dg.evaluation(fl, "+")
    cup = dg.coevaluation(fl, "+")
    assert dg.compose(cap, cup) == dg.identity(fl, ()).scale(Q("7/2"))


def test_identity_composite():
    fl = flavor("brauer")
    idu = dg.identity(fl, "++")
    assert dg.compose(idu, idu) == idu


@pytest.mark.parametrize("delta", [-2, 1, 4])
def test_tl_generator_is_quasi_idempotent(delta):
    fl = flavor("temperley-lieb", delta, F5)
    e = dg.compose(dg.coevaluation(fl, "+"), dg.evaluation(fl, "+"))
    assert dg.compose(e, e) == e.scale(F5(delta))


def test_tensor_examples():
    fl = flavor("brauer")
    idu = dg.identity(fl, "+")
    assert dg.tensor(idu, idu) == dg.identity(fl, "++")
    cap, cup = dg.evaluation(fl, "+"), dg.coevaluation(fl, "+")
    d = dg.tensor(cap, cup)
    assert d.source == ("+", "+") and d.target == ("+", "+")
    (diag,) = d.terms
    assert sorted(diag.blocks) == [(0, 1), (2, 3)]
    unit = dg.identity(fl, ())
    assert dg.tensor(cap, unit) == cap and dg.tensor(unit, cap) == cap


@pytest.mark.parametrize("kind,a,b,n", [
    ("brauer", "++", "++", 3),
    ("temperley-lieb", "++++", "++++", 14),
    ("brauer", "+", "++", 0),
    ("walled-brauer", "++--", "++--", 24),
    ("walled-brauer", "+", "-", 0),
    ("partition", "++", "+", 5),
])
def test_hom_basis_counts(kind, a, b, n):
    fl = flavor(kind)
    basis = dg.hom_basis(tuple(a), tuple(b), fl)
    assert len(basis) == n
    assert basis == sorted(basis)
    assert all(dg.is_legal(d, kind) for d in basis)


def test_hom_basis_cap_is_an_error():
    with pytest.raises(ResourceError):
        dg.enumerate_diagrams(("+",) * 6, ("+",) * 6, "brauer", Caps(max_points=10))
    with pytest.raises(ResourceError):
        dg.enumerate_diagrams(("+",) * 5, ("+",) * 5, "partition", Caps(max_diagrams=1000))


def test_compose_errors():
    fl = flavor("brauer")
    with pytest.raises(DiagramError):
        dg.compose(dg.identity(fl, "+"), dg.identity(fl, "++"))
    other = flavor("temperley-lieb", -2, F3)
    with pytest.raises(DiagramError):
        dg.compose(dg.identity(fl, "+"), dg.identity(other, "+"))
    with pytest.raises(DiagramError):
        flavor("walled-brauer").check_word(("x",))


@pytest.mark.parametrize("kind,loop,field", [
    ("brauer", 3, Q), ("walled-brauer", 2, Q), ("partition", 2, Q), ("temperley-lieb", -2, F3)])
def test_structure_diagrams(kind, loop, field):
    fl = flavor(kind, loop, field)
    for letter in fl.letters:
        s = dg.structure_diagrams(fl, letter)
        w = (letter,)
        wd = fl.dual_word(w)
        ev, co, idx = s["evaluation"], s["coevaluation"], s["identity"]
        idd = dg.identity(fl, wd)
        assert dg.compose(dg.tensor(idx, ev), dg.tensor(co, idx)) == idx
        assert dg.compose(dg.tensor(ev, idd), dg.tensor(idd, co)) == idd
        sigma = s["braiding"]
        assert dg.compose(sigma, sigma) == dg.identity(fl, w + w)


def test_walled_dimension_through_braiding():
    fl = flavor("walled-brauer", "5/3")
    w = ("+",)
    ev = dg.evaluation(fl, w)                      # V^v V -> 1
    co = dg.coevaluation(fl, w)                    # 1 -> V V^v
    sigma = dg.braiding(fl, w, fl.dual_word(w))    # V V^v -> V^v V
    assert dg.compose(ev, dg.compose(sigma, co)) == dg.identity(fl, ()).scale(Q("5/3"))


def test_tl_braiding_square_needs_minus_two():
    fl = flavor("temperley-lieb", 1, F5)
    s = dg.braiding(fl, "+", "+")
    assert dg.compose(s, s) != dg.identity(fl, "++")


def test_partition_floating_block():
    fl = flavor("partition", "2/5")
    single_src = MorLin.from_diagram(fl, dg.make_diagram(("+",), (), [(0,)]))
    single_tgt = MorLin.from_diagram(fl, dg.make_diagram((), ("+",), [(0,)]))
    assert dg.compose(single_src, single_tgt) == dg.identity(fl, ()).scale(Q("2/5"))


def test_counting_formulas():
    assert [dg.catalan(n) for n in range(6)] == [1, 1, 2, 5, 14, 42]
    assert [dg.bell(n) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]
    assert dg.double_factorial(5) == 15


# -- randomized calculus properties ---------------------------------------------------

KINDS = {"brauer": (3, Q), "walled-brauer": ("1/2", Q), "partition": (-1, Q),
         "temperley-lieb": (-2, F3)}


def random_morphism(fl, rng, a, b):
    basis = dg.enumerate_diagrams(a, b, fl.kind)
    out = MorLin.zero(fl, a, b)
    for d in rng.sample(basis, min(3, len(basis))):
        out = out + MorLin.from_diagram(fl, d, fl.field.random_element(rng, 3))
    return out


def random_word(fl, rng, n):
    return tuple(rng.choice(fl.letters) for _ in range(n))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(KINDS)), st.integers(0, 10 ** 6))
def test_associativity(kind, seed):
    fl = flavor(kind, *KINDS[kind])
    rng = random.Random(seed)
    n = 2 if kind == "partition" else rng.choice([2, 3])
    words = [random_word(fl, rng, n) for _ in range(4)]
    if kind == "walled-brauer":
        words = [words[0]] * 4
    f, g, h = (random_morphism(fl, rng, words[i], words[i + 1]) for i in range(3))
    assert dg.compose(h, dg.compose(g, f)) == dg.compose(dg.compose(h, g), f)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(KINDS)), st.integers(0, 10 ** 6))
def test_braiding_naturality(kind, seed):
    fl = flavor(kind, *KINDS[kind])
    rng = random.Random(seed)
    x = random_word(fl, rng, rng.randint(1, 2))
    y = random_word(fl, rng, rng.randint(1, 2))
    f = random_morphism(fl, rng, x, x)
    g = random_morphism(fl, rng, y, y)
    lhs = dg.compose(dg.braiding(fl, x, y), dg.tensor(f, g))
    rhs = dg.compose(dg.tensor(g, f), dg.braiding(fl, x, y))
    assert lhs == rhs
